use qmarginal::young::{gale_ryser, partitions_in_box, YoungDiagram};

/// Whether some 0/1 matrix with `rows.len()` rows and `cols.len()` columns has these margins.
fn realizable(rows: &[u32], cols: &[u32]) -> bool {
    let (h, w) = (rows.len(), cols.len());
    (0u32..1 << (h * w)).any(|bits| {
        let cell = |i: usize, j: usize| (bits >> (i * w + j)) & 1;
        (0..h).all(|i| (0..w).map(|j| cell(i, j)).sum::<u32>() == rows[i])
            && (0..w).all(|j| (0..h).map(|i| cell(i, j)).sum::<u32>() == cols[j])
    })
}

#[test]
fn gale_ryser_matches_exhaustive_search() {
    let mut checked = 0;
    for size in 1..=16 {
        let diagrams = partitions_in_box(size, 4, 4);
        for lambda in &diagrams {
            for mu in &diagrams {
                let expect = realizable(lambda.rows(), mu.rows());
                assert_eq!(gale_ryser(lambda, mu).unwrap(), expect, "{lambda} {mu}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 389);
}

#[test]
fn gale_ryser_examples() {
    let d = |r: &[u32]| YoungDiagram::new(r.to_vec()).unwrap();
    assert!(gale_ryser(&d(&[2, 2, 1]), &d(&[3, 1, 1])).unwrap());
    assert!(realizable(&[2, 2, 1], &[3, 1, 1]));
    assert!(gale_ryser(&d(&[3]), &d(&[1, 1, 1])).unwrap());
    assert!(!gale_ryser(&d(&[3]), &d(&[3])).unwrap());
    assert!(!realizable(&[3], &[3]));
    assert!(gale_ryser(&d(&[3]), &d(&[2])).is_err());
}
