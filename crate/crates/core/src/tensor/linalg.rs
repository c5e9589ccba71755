use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Components with modulus below this are skipped when fixing eigenvector phases.
const SIGNIFICANT: f64 = 1e-10;

/// Largest entrywise deviation of `h` from its conjugate transpose.
pub fn hermitian_deviation(h: &CMatrix) -> f64 {
    let n = h.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn check_hermitian(h: &CMatrix, tol: f64) -> Result<()> {
    if h.nrows() != h.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, expected square",
            h.nrows(),
            h.ncols()
        )));
    }
    let dev = hermitian_deviation(h);
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Rotates the global phase of `v` so its first significant component is real and positive.
pub fn fix_phase(v: &mut CVector) {
    if let Some(c) = v.iter().find(|c| c.norm() > SIGNIFICANT).copied() {
        let phase = c.conj() / c.norm();
        for x in v.iter_mut() {
            *x *= phase;
        }
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are returned nonincreasing. Each eigenvector has its first
/// significant component real and positive; equal eigenvalues are ordered
/// by the moduli of their eigenvector components, lexicographically largest
/// first.
pub fn eigh(h: &CMatrix) -> (Vec<f64>, Vec<CVector>) {
    let mut sym = h.clone();
    // Symmetrize so the solver sees an exactly Hermitian input.
    let n = sym.nrows();
    for i in 0..n {
        sym[(i, i)] = C64::new(sym[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (sym[(i, j)] + sym[(j, i)].conj()) * 0.5;
            sym[(i, j)] = avg;
            sym[(j, i)] = avg.conj();
        }
    }
    let eig = sym.symmetric_eigen();
    let mut pairs: Vec<(f64, CVector)> = (0..n)
        .map(|k| {
            let mut v: CVector = eig.eigenvectors.column(k).into_owned();
            fix_phase(&mut v);
            (eig.eigenvalues[k], v)
        })
        .collect();
    pairs.sort_by(|(a, va), (b, vb)| {
        b.partial_cmp(a)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                for (x, y) in va.iter().zip(vb.iter()) {
                    let (mx, my) = (x.norm(), y.norm());
                    if (mx - my).abs() > SIGNIFICANT {
                        return my.partial_cmp(&mx).unwrap();
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    pairs.into_iter().unzip()
}

/// Trace of a square complex matrix (real part).
pub fn real_trace(m: &CMatrix) -> f64 {
    (0..m.nrows()).map(|i| m[(i, i)].re).sum()
}
