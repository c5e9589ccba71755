use qmarginal::catalog::Spectra;
use qmarginal::tensor::haar_pure;
use qmarginal::verify::{
    equivalence_campaign, isospectrality_campaign, mc_verify, mc_verify_with_spectrum, verify_spectra, witness_search,
    DEFAULT_TOLERANCE,
};
use qmarginal::{Error, System};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn genuine_states_pass() {
    let cases = [
        ("BD6", System::fermion(6, 3, false)),
        ("POLYGON", System::qubits(3)),
        ("FRANZ_3QUTRIT", System::tensor(&[3, 3, 3], false)),
        ("BASIC", System::tensor(&[2, 3], true)),
        ("THREE_QUBIT_MIXED", System::tensor(&[2, 2, 2], true)),
        ("W2H4_MIXED", System::fermion(4, 2, true)),
        ("PAULI", System::fermion(5, 2, true)),
        ("CHSH_16", System::Correlations),
    ];
    for (id, system) in cases {
        let r = mc_verify(id, &system, 1000, 5, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.violations, 0, "{id}: {r:?}");
        assert!(r.min_slack >= -DEFAULT_TOLERANCE);
        assert_eq!(r.trials, 1000);
        assert_eq!(r.global.is_some(), system.is_mixed());
    }
    let nu = [0.4, 0.3, 0.2, 0.1];
    let r = mc_verify_with_spectrum("BRAVYI_2Q", &System::tensor(&[2, 2], true), &nu, 1000, 6, DEFAULT_TOLERANCE).unwrap();
    assert_eq!(r.violations, 0);
    assert_eq!(r.global.as_deref(), Some(&nu[..]));
}

#[test]
fn planted_violations_are_flagged() {
    let system = System::fermion(6, 3, false);
    let inputs = vec![
        Spectra::single(vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]),
        Spectra::single(vec![1.0, 1.0, 0.5, 0.5, 0.0, 0.0]),
        Spectra::single(vec![0.9, 0.8, 0.7, 0.3, 0.2, 0.1]),
    ];
    let r = verify_spectra("BD6", &system, &inputs, DEFAULT_TOLERANCE).unwrap();
    assert_eq!(r.violations, 1);
    assert_eq!(r.first_violation, Some(1));
    assert!(r.min_slack < -0.4);
    let polygon = [Spectra::pure(vec![vec![0.6, 0.4], vec![0.9, 0.1], vec![0.9, 0.1]])];
    assert_eq!(verify_spectra("POLYGON", &System::qubits(3), &polygon, DEFAULT_TOLERANCE).unwrap().violations, 1);
}

#[test]
fn inapplicable_family() {
    assert!(matches!(mc_verify("BD6", &System::qubits(3), 10, 1, 1e-10), Err(Error::NotApplicable { .. })));
    assert!(matches!(mc_verify("NOPE", &System::qubits(3), 10, 1, 1e-10), Err(Error::UnknownFamily(_))));
    assert!(mc_verify_with_spectrum("POLYGON", &System::qubits(3), &[1.0], 10, 1, 1e-10).is_err());
}

#[test]
fn campaigns_are_reproducible() {
    let run = |threads| {
        pool(threads).install(|| {
            (
                mc_verify("F7_LIST", &System::fermion(7, 3, false), 400, 11, DEFAULT_TOLERANCE).unwrap(),
                mc_verify("BASIC", &System::tensor(&[2, 2], true), 400, 11, DEFAULT_TOLERANCE).unwrap(),
                isospectrality_campaign(&[(2, 3)], 200, 11).unwrap(),
                equivalence_campaign("F7_BD", "F7_LIST", None, 500, 11).unwrap(),
            )
        })
    };
    let a = run(1);
    assert_eq!(a, run(4));
    assert_eq!(a, run(4));
    let other = mc_verify("F7_LIST", &System::fermion(7, 3, false), 400, 12, DEFAULT_TOLERANCE).unwrap();
    assert_ne!(a.0.min_slack, other.min_slack);
}

#[test]
fn isospectral_bipartite_marginals() {
    let r = isospectrality_campaign(&[(2, 2), (2, 3), (3, 4)], 200, 3).unwrap();
    assert_eq!(r.formats.len(), 3);
    assert!(r.max_discrepancy < 1e-10, "{r:?}");
}

#[test]
fn equivalent_forms_agree() {
    let r = equivalence_campaign("F84_14", "F84_ABS", None, 2000, 4).unwrap();
    assert_eq!(r.disagreements, 0);
    let r = equivalence_campaign("PAULI", "BD6", Some(&System::fermion(6, 3, false)), 200, 4).unwrap();
    assert!(r.disagreements > 0);
}

#[test]
fn witness_recovers_sampled_marginals() {
    let system = System::qubits(3);
    let psi = haar_pure(&[2, 2, 2], 21).unwrap();
    let targets: Vec<Vec<f64>> = psi.site_spectra().unwrap().into_iter().map(|s| s.into_values()).collect();
    let w = witness_search(&targets, &system, 20, 2000, 1).unwrap();
    assert!(w.success, "{w:?}");
    assert!(w.residual < 1e-3);
    let found: Vec<Vec<f64>> = w.state().unwrap().site_spectra().unwrap().into_iter().map(|s| s.into_values()).collect();
    for (f, t) in found.iter().zip(&targets) {
        assert!(f.iter().zip(t).all(|(a, b)| (a - b).abs() < 1e-3));
    }

    let ghz = vec![vec![0.5, 0.5]; 3];
    assert!(witness_search(&ghz, &system, 20, 2000, 2).unwrap().success);

    // minimal eigenvalues (0.4, 0.1, 0.1) break the polygon inequality
    let bad = vec![vec![0.6, 0.4], vec![0.9, 0.1], vec![0.9, 0.1]];
    let w = witness_search(&bad, &system, 5, 2000, 3).unwrap();
    assert!(!w.success);
    assert!(w.residual > 1e-2);
    assert_eq!(w.restarts, 5);

    assert!(witness_search(&ghz, &System::tensor(&[2, 2, 2], true), 1, 1, 1).is_err());
    assert!(witness_search(&ghz[..2], &system, 1, 1, 1).is_err());
}
