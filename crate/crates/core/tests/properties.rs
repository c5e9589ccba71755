use proptest::prelude::*;
use qmarginal::chamber::{convex_hull, cubicle_arrangement, enumerate_chambers, DEFAULT_MAX_DIM};
use qmarginal::exact::rat;
use qmarginal::fermion::{haar_fermion, one_rdm};
use qmarginal::plethysm::{decompose, gl_dimension, symmetric_power_dimension};
use qmarginal::schubert::{subset_order, sum_order_multi};
use qmarginal::verify::{mc_verify, DEFAULT_TOLERANCE};
use qmarginal::System;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn occupations_obey_pauli(seed in any::<u64>(), (r, n) in prop::sample::select(vec![(4, 2), (5, 2), (6, 3), (7, 3), (8, 4)])) {
        let occ = one_rdm(&haar_fermion(r, n, seed).unwrap()).spectrum().unwrap();
        prop_assert!(occ.values().iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
        prop_assert!((occ.values().iter().sum::<f64>() - n as f64).abs() < 1e-10);
    }

    #[test]
    fn decompositions_have_the_right_dimension(r in 2usize..=7, n in 1usize..=4, m in 1u32..=3) {
        prop_assume!(n <= r);
        let d = decompose(r, n, m).unwrap();
        let total: u128 = d.components.iter().map(|(l, c)| *c as u128 * gl_dimension(l, r)).sum();
        prop_assert_eq!(total, symmetric_power_dimension(r, n, m) as u128);
        prop_assert!(d.components.keys().all(|l| l.size() == n as u32 * m && l.len() <= r));
    }

    #[test]
    fn hull_ignores_point_order(
        pts in prop::collection::vec(prop::collection::vec(-6i128..=6, 3), 4..12),
        shift in 0usize..12,
    ) {
        let rats: Vec<Vec<_>> = pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect();
        let mut rotated = rats.clone();
        rotated.rotate_left(shift % rats.len());
        rotated.reverse();
        let (a, b) = (convex_hull(&rats, 7), convex_hull(&rotated, 7));
        prop_assert_eq!(a.ok(), b.ok());
    }

    #[test]
    fn campaigns_are_deterministic(seed in any::<u64>()) {
        let sys = System::qubits(3);
        let a = mc_verify("POLYGON", &sys, 64, seed, DEFAULT_TOLERANCE).unwrap();
        let b = mc_verify("POLYGON", &sys, 64, seed, DEFAULT_TOLERANCE).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.violations, 0);
    }
}

#[test]
fn chamber_interiors_are_tie_free() {
    for sys in [System::tensor(&[2, 2], false), System::tensor(&[2, 3], false), System::qubits(3), System::fermion(5, 2, false), System::fermion(6, 3, false)] {
        let arr = cubicle_arrangement(&sys).unwrap();
        let chambers = enumerate_chambers(&arr, DEFAULT_MAX_DIM).unwrap();
        assert!(!chambers.is_empty());
        for c in &chambers {
            let tests = arr.tests_at(&c.barycenter()).unwrap();
            match sys {
                System::Fermion { n, .. } => assert!(subset_order(&tests[0], n).is_ok()),
                _ => assert!(sum_order_multi(&tests).is_ok()),
            }
        }
    }
}
