use rand::Rng as _;
use rand_distr::StandardNormal;

use super::{check_dims, CMatrix, DensityMatrix, PureState, C64};
use crate::error::{Error, Result};
use crate::rng::{self, Rng};
use crate::spectrum::Spectrum;

fn gaussian(g: &mut Rng) -> C64 {
    let re: f64 = g.sample(StandardNormal);
    let im: f64 = g.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-random pure state on `dims`, seeded.
pub fn haar_pure(dims: &[usize], seed: u64) -> Result<PureState> {
    haar_pure_with(dims, &mut rng::seeded(seed))
}

/// Haar-random pure state drawn from a caller-owned generator.
pub fn haar_pure_with(dims: &[usize], g: &mut Rng) -> Result<PureState> {
    let len: usize = dims.iter().product();
    check_dims(dims, len)?;
    let amps = (0..len).map(|_| gaussian(g)).collect();
    PureState::normalized(amps, dims.to_vec())
}

/// Haar-random `d × d` unitary (Gram–Schmidt on a complex Ginibre matrix).
pub fn haar_unitary(d: usize, g: &mut Rng) -> CMatrix {
    let mut m = CMatrix::from_fn(d, d, |_, _| gaussian(g));
    for j in 0..d {
        for k in 0..j {
            let proj: C64 = (0..d).map(|i| m[(i, k)].conj() * m[(i, j)]).sum();
            for i in 0..d {
                let v = m[(i, k)];
                m[(i, j)] -= v * proj;
            }
        }
        let norm = m.column(j).norm();
        m.column_mut(j).unscale_mut(norm);
    }
    m
}

/// `U diag(ν) U†` for a Haar-random unitary `U`, seeded.
pub fn random_mixed_with_spectrum(nu: &Spectrum, dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    random_mixed_with_spectrum_with(nu, dims, &mut rng::seeded(seed))
}

/// As [`random_mixed_with_spectrum`], drawing from a caller-owned generator.
pub fn random_mixed_with_spectrum_with(nu: &Spectrum, dims: &[usize], g: &mut Rng) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    check_dims(dims, d)?;
    if (nu.trace() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidSpectrum(format!("spectrum has trace {}, expected 1", nu.trace())));
    }
    if nu.min() < 0.0 {
        return Err(Error::InvalidSpectrum(format!("negative eigenvalue {}", nu.min())));
    }
    if nu.len() > d {
        return Err(Error::DimensionMismatch(format!("{} eigenvalues for dimension {d}", nu.len())));
    }
    let u = haar_unitary(d, g);
    let mut scaled = u.clone();
    for j in 0..d {
        let w = nu.values().get(j).copied().unwrap_or(0.0);
        scaled.column_mut(j).scale_mut(w);
    }
    let mut mat = scaled * u.adjoint();
    for i in 0..d {
        for j in i + 1..d {
            let avg = (mat[(i, j)] + mat[(j, i)].conj()) * 0.5;
            mat[(i, j)] = avg;
            mat[(j, i)] = avg.conj();
        }
        mat[(i, i)] = C64::new(mat[(i, i)].re, 0.0);
    }
    Ok(DensityMatrix::from_parts(mat, dims.to_vec(), 1.0))
}
