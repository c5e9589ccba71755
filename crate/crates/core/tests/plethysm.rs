use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use qmarginal::catalog::{check_family_on, Spectra};
use qmarginal::exact::Rational;
use qmarginal::plethysm::{
    decompose, gl_dimension, inner_approximation, kostka, occurring_spectra, selfdual_check, symmetric_power_dimension,
    weight_multiplicities,
};
use qmarginal::young::{partitions_in_box, YoungDiagram};
use qmarginal::{Error, System};

fn yd(rows: &[u32]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

fn subsets(r: usize, n: usize) -> Vec<Vec<u32>> {
    (0u32..1 << r)
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| (0..r).map(|i| m >> i & 1).collect())
        .collect()
}

#[test]
fn weights() {
    let w = weight_multiplicities(5, 2, 1).unwrap();
    assert_eq!(w.len(), 10);
    assert!(w.iter().all(|(k, &c)| c == 1 && k.iter().sum::<u32>() == 2 && k.iter().all(|&x| x <= 1)));
    assert_eq!(weight_multiplicities(4, 2, 2).unwrap().values().sum::<u64>(), 21);

    let s = subsets(6, 3);
    let mut brute: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for i in 0..s.len() {
        for j in i..s.len() {
            *brute.entry(s[i].iter().zip(&s[j]).map(|(a, b)| a + b).collect()).or_default() += 1;
        }
    }
    assert_eq!(weight_multiplicities(6, 3, 2).unwrap(), brute);

    assert!(matches!(weight_multiplicities(9, 4, 1), Err(Error::Unsupported(_))));
    assert!(matches!(weight_multiplicities(6, 3, 5), Err(Error::Unsupported(_))));
    assert!(weight_multiplicities(3, 4, 1).is_err());
}

/// Fillings of `shape` with content `mu` whose rows weakly and columns strictly increase.
fn brute_kostka(shape: &[u32], mu: &[u32]) -> u64 {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j))).collect();
    fn rec(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, left: &mut Vec<u32>) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let mut total = 0;
        for v in 0..left.len() {
            if left[v] == 0 || (j > 0 && grid[i][j - 1] > v) || (i > 0 && grid[i - 1][j] >= v) {
                continue;
            }
            left[v] -= 1;
            grid[i][j] = v;
            total += rec(k + 1, cells, grid, left);
            left[v] += 1;
        }
        total
    }
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
    rec(0, &cells, &mut grid, &mut mu.to_vec())
}

#[test]
fn kostka_numbers() {
    assert_eq!(kostka(&yd(&[2, 1]), &[1, 1, 1]).unwrap(), 2);
    assert_eq!(brute_kostka(&[2, 1], &[1, 1, 1]), 2);
    for size in 1..=6 {
        let parts = partitions_in_box(size, 6, size);
        for l in &parts {
            assert_eq!(kostka(l, l.rows()).unwrap(), 1);
            for mu in &parts {
                let k = kostka(l, mu.rows()).unwrap();
                assert_eq!(k, brute_kostka(l.rows(), mu.rows()), "{l} {mu}");
                if !l.dominates(mu) {
                    assert_eq!(k, 0);
                }
            }
        }
    }
    // content need not be sorted
    assert_eq!(kostka(&yd(&[3, 1]), &[0, 1, 2, 1]).unwrap(), brute_kostka(&[3, 1], &[0, 1, 2, 1]));
    assert!(matches!(kostka(&yd(&[2]), &[1]), Err(Error::SizeMismatch(2, 1))));
}

/// Hook-content formula.
fn hook_content(l: &YoungDiagram, r: usize) -> u128 {
    let t = l.transpose();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..l.len() {
        for j in 0..l.row(i) as usize {
            num *= (r + j - i) as u128;
            den *= (l.row(i) as usize - j + t.row(j) as usize - i - 1) as u128;
        }
    }
    num / den
}

#[test]
fn weyl_dimension() {
    for r in 1..=6 {
        for size in 0..=6 {
            for l in partitions_in_box(size, r, size) {
                assert_eq!(gl_dimension(&l, r), hook_content(&l, r), "{l} r={r}");
            }
        }
    }
    assert_eq!(gl_dimension(&yd(&[1, 1, 1]), 2), 0);
}

#[test]
fn small_decompositions() {
    for (r, n) in [(4, 2), (6, 3), (5, 1), (7, 3)] {
        let d = decompose(r, n, 1).unwrap();
        assert_eq!(d.components, BTreeMap::from([(yd(&vec![1; n]), 1)]));
    }
    let d = decompose(4, 2, 2).unwrap();
    assert_eq!(d.components, BTreeMap::from([(yd(&[2, 2]), 1), (yd(&[1, 1, 1, 1]), 1)]));
    assert_eq!(hook_content(&yd(&[2, 2]), 4) + hook_content(&yd(&[1, 1, 1, 1]), 4), 21);
}

#[test]
fn dimension_identity() {
    for (r, n, m) in [(5, 2, 3), (6, 3, 3), (7, 3, 2), (8, 3, 2), (8, 4, 2), (6, 2, 4), (7, 2, 4)] {
        let d = decompose(r, n, m).unwrap();
        let hooks: u128 = d.components.iter().map(|(l, &c)| u128::from(c) * hook_content(l, r)).sum();
        assert_eq!(hooks, u128::from(symmetric_power_dimension(r, n, m)));
        assert!(d.components.keys().all(|l| l.fits(r, m) && l.size() == n as u32 * m));
    }
}

#[test]
fn exterior_square_has_even_rows() {
    for r in 2..=6 {
        for m in 1..=4 {
            let d = decompose(r, 2, m).unwrap();
            let expected: BTreeMap<YoungDiagram, u64> = partitions_in_box(2 * m, r, m)
                .into_iter()
                .filter(|l| {
                    let mut counts = BTreeMap::new();
                    l.rows().iter().for_each(|&x| *counts.entry(x).or_insert(0) += 1);
                    counts.values().all(|c| c % 2 == 0)
                })
                .map(|l| (l, 1))
                .collect();
            assert_eq!(d.components, expected, "r={r} m={m}");
        }
    }
}

#[test]
fn particle_hole_duality() {
    for (r, n, m) in [(5, 2, 3), (6, 2, 3), (7, 3, 2), (6, 1, 4)] {
        let d = decompose(r, n, m).unwrap();
        let dual = decompose(r, r - n, m).unwrap();
        let mapped: BTreeMap<YoungDiagram, u64> =
            d.components.iter().map(|(l, &c)| (l.complement(r, m).unwrap(), c)).collect();
        assert_eq!(mapped, dual.components);
    }
}

fn complement_oracle(l: &YoungDiagram, r: usize, m: u32) -> YoungDiagram {
    let rows = l.padded(r);
    YoungDiagram::new(rows.iter().rev().map(|&x| m - x).collect()).unwrap()
}

#[test]
fn self_duality() {
    assert!(selfdual_check(6, 3, 1).unwrap());
    for (r, n, m) in [(6, 3, 2), (6, 3, 3), (4, 2, 2), (5, 2, 2)] {
        let d = decompose(r, n, m).unwrap();
        let oracle = d.components.keys().all(|l| &complement_oracle(l, r, m) == l);
        assert_eq!(selfdual_check(r, n, m).unwrap(), oracle);
    }
    assert!(selfdual_check(6, 3, 2).unwrap());
    assert!(!selfdual_check(5, 2, 2).unwrap());
}

fn floats(v: &[Rational]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap()).collect()
}

fn all_pass(id: &str, r: usize, n: usize, points: &[Vec<Rational>]) {
    let system = System::fermion(r, n, false);
    for p in points {
        let rep = check_family_on(id, &system, &Spectra::single(floats(p)), 1e-12).unwrap();
        assert!(rep.satisfied, "{id} fails at {p:?}");
    }
}

#[test]
fn occurring_spectra_are_representable() {
    let one = occurring_spectra(6, 3, 1).unwrap();
    assert_eq!(one, vec![[1, 1, 1, 0, 0, 0].iter().map(|&x| Rational::from(x)).collect::<Vec<_>>()]);
    let pts = occurring_spectra(6, 3, 3).unwrap();
    assert!(pts.iter().all(|p| p.iter().sum::<Rational>() == Rational::from(3)));
    all_pass("BD6", 6, 3, &pts);
    all_pass("PAULI", 6, 3, &pts);
    all_pass("F7_LIST", 7, 3, &occurring_spectra(7, 3, 2).unwrap());
    all_pass("F8_31", 8, 3, &occurring_spectra(8, 3, 2).unwrap());
    all_pass("F84_14", 8, 4, &occurring_spectra(8, 4, 2).unwrap());
}

#[test]
fn inner_approximations_grow() {
    let a = inner_approximation(6, 3, 1).unwrap();
    assert_eq!(a.hull.dim, 0);
    assert!(a.hull.facets.is_empty());
    let mut prev = a;
    for m in 2..=4 {
        let next = inner_approximation(6, 3, m).unwrap();
        assert!(prev.points.iter().all(|p| next.points.contains(p)));
        for p in &prev.points {
            assert!(next.hull.facets.iter().all(|f| f.slack(p) >= Rational::from(0)));
            assert!(next.hull.equalities.iter().all(|e| e.slack(p) == Rational::from(0)));
        }
        prev = next;
    }
    all_pass("BD6", 6, 3, &prev.points);
    assert!(prev.hull.dim <= 3);
    for m in &prev.matches {
        assert!(m.facet < prev.hull.facets.len());
    }
    // the only facet that is not an ordering constraint is l1 + l2 - l3 <= 1
    assert_eq!(prev.hull.facets.len(), 4);
    assert!(prev.matches.iter().any(|m| m.family == "BD6" && m.inequality == "l4 - l5 - l6 <= 0"));
}
