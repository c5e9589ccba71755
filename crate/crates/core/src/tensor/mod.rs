//! Dense complex states of multipartite systems and their marginals.
//!
//! Amplitude and matrix indices are flattened row-major over the factor
//! dimensions: the first factor varies slowest. Every module uses this one
//! convention.

mod linalg;
mod sample;

pub use linalg::{eigh, fix_phase, hermitian_deviation, real_trace, CMatrix, CVector, C64};
pub use sample::{haar_pure, haar_pure_with, haar_unitary, random_mixed_with_spectrum, random_mixed_with_spectrum_with};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;

/// Tolerance on unit norm and on trace of validated states.
pub const STATE_TOL: f64 = 1e-12;
/// Hermiticity tolerance for [`spectrum`].
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `(-PSD_CLAMP, 0)` are clamped to zero.
pub const PSD_CLAMP: f64 = 1e-12;

fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!("invalid factor dimensions {dims:?}")));
    }
    let prod: usize = dims.iter().product();
    if prod != len {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} give {prod} entries, payload has {len}"
        )));
    }
    Ok(())
}

/// Row-major strides for `dims`.
fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Splits the factors into the kept and traced sets and returns, for each,
/// the flat offset of every multi-index over that set.
fn split_offsets(dims: &[usize], keep: &[usize]) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() >= dims.len() || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidSubset(format!(
            "keep {keep:?} must be a nonempty proper subset of 0..{}",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let st = strides(dims);
    let offsets = |factors: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize];
        for &f in factors {
            let (d, s) = (dims[f], st[f]);
            out = out.iter().flat_map(|&base| (0..d).map(move |i| base + i * s)).collect();
        }
        out
    };
    let kept_dims = keep.iter().map(|&k| dims[k]).collect();
    Ok((offsets(&keep), offsets(&traced), kept_dims))
}

/// A normalized pure state of a multipartite system.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Validates factor dimensions and unit norm (within [`STATE_TOL`]).
    pub fn new(amps: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amps.len())?;
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidSpectrum(format!("state has squared norm {norm2}")));
        }
        Ok(Self { amps, dims })
    }

    /// Scales `amps` to unit norm.
    pub fn normalized(mut amps: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidSpectrum("zero vector".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { amps, dims })
    }

    /// Tensor product of single-factor vectors (each normalized).
    pub fn product(factors: &[Vec<C64>]) -> Result<Self> {
        let mut amps = vec![C64::new(1.0, 0.0)];
        let mut dims = Vec::with_capacity(factors.len());
        for f in factors {
            dims.push(f.len());
            amps = amps.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect();
        }
        Self::normalized(amps, dims)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The projector `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        let v = CVector::from_column_slice(&self.amps);
        let mat = &v * v.adjoint();
        DensityMatrix { mat, dims: self.dims.clone(), trace: 1.0 }
    }

    /// Reduced state on the factors in `keep`, computed from amplitudes.
    pub fn marginal(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (kept, traced, kept_dims) = split_offsets(&self.dims, keep)?;
        let d = kept.len();
        let mut mat = CMatrix::zeros(d, d);
        for (i, &ki) in kept.iter().enumerate() {
            for (j, &kj) in kept.iter().enumerate().skip(i) {
                let s: C64 = traced.iter().map(|&t| self.amps[ki + t] * self.amps[kj + t].conj()).sum();
                mat[(i, j)] = s;
                mat[(j, i)] = s.conj();
            }
        }
        Ok(DensityMatrix { mat, dims: kept_dims, trace: 1.0 })
    }

    /// Spectra of every single-factor marginal.
    pub fn site_spectra(&self) -> Result<Vec<Spectrum>> {
        (0..self.dims.len()).map(|k| self.marginal(&[k])?.spectrum()).collect()
    }
}

/// A density matrix with factor dimensions and a declared trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    dims: Vec<usize>,
    trace: f64,
}

impl DensityMatrix {
    /// Validates shape, hermiticity, positivity and trace (all within [`STATE_TOL`]).
    pub fn new(mat: CMatrix, dims: Vec<usize>, trace: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch("density matrix must be square".into()));
        }
        check_dims(&dims, mat.nrows())?;
        linalg::check_hermitian(&mat, STATE_TOL)?;
        let tr = real_trace(&mat);
        if (tr - trace).abs() > STATE_TOL {
            return Err(Error::InvalidSpectrum(format!("trace {tr} differs from declared {trace}")));
        }
        let (vals, _) = eigh(&mat);
        if let Some(&low) = vals.last() {
            if low < -STATE_TOL {
                return Err(Error::NotPositive(low));
            }
        }
        Ok(Self { mat, dims, trace })
    }

    /// A trace-one density matrix.
    pub fn state(mat: CMatrix, dims: Vec<usize>) -> Result<Self> {
        Self::new(mat, dims, 1.0)
    }

    /// Wraps without validation; for matrices built by this crate.
    pub(crate) fn from_parts(mat: CMatrix, dims: Vec<usize>, trace: f64) -> Self {
        Self { mat, dims, trace }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Eigenvalues, nonincreasing, with tiny negative drift clamped to zero.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let (mut vals, _) = eigh(&self.mat);
        for v in vals.iter_mut() {
            if *v < 0.0 && *v > -PSD_CLAMP {
                *v = 0.0;
            }
        }
        if let Some(&low) = vals.last() {
            if low < 0.0 {
                return Err(Error::NotPositive(low));
            }
        }
        let sum: f64 = vals.iter().sum();
        // the declared trace is authoritative; the clamp can shift the sum by < 1e-11
        Spectrum::new(vals, if (sum - self.trace).abs() <= 1e-10 { self.trace } else { sum })
    }

    /// Partial trace keeping the factors in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

/// Reduced state `Tr_{rest}(ρ)` on the factors listed in `keep`.
///
/// The kept factors appear in increasing index order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    check_dims(&rho.dims, rho.mat.nrows())?;
    let (kept, traced, kept_dims) = split_offsets(&rho.dims, keep)?;
    let d = kept.len();
    let mut mat = CMatrix::zeros(d, d);
    for (i, &ki) in kept.iter().enumerate() {
        for (j, &kj) in kept.iter().enumerate() {
            mat[(i, j)] = traced.iter().map(|&t| rho.mat[(ki + t, kj + t)]).sum();
        }
    }
    Ok(DensityMatrix { mat, dims: kept_dims, trace: rho.trace })
}

/// Nonincreasing eigenvalues of a Hermitian matrix.
///
/// `trace_tag` is the declared normalization; it must agree with the trace
/// of `h` within 1e-10.
pub fn spectrum(h: &CMatrix, trace_tag: f64) -> Result<Spectrum> {
    linalg::check_hermitian(h, HERMITIAN_TOL)?;
    let (vals, _) = eigh(h);
    Spectrum::new(vals, trace_tag)
}

/// Schmidt decomposition `ψ = Σᵢ cᵢ |leftᵢ⟩ ⊗ |rightᵢ⟩` of a bipartite state.
#[derive(Debug, Clone)]
pub struct Schmidt {
    /// Nonincreasing positive coefficients; their squares sum to one.
    pub coefficients: Vec<f64>,
    pub left: Vec<CVector>,
    pub right: Vec<CVector>,
}

impl Schmidt {
    /// Rebuilds the amplitude vector.
    pub fn reconstruct(&self) -> Vec<C64> {
        let (da, db) = (self.left.first().map_or(0, |v| v.len()), self.right.first().map_or(0, |v| v.len()));
        let mut out = vec![C64::new(0.0, 0.0); da * db];
        for ((c, l), r) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for a in 0..da {
                for b in 0..db {
                    out[a * db + b] += l[a] * r[b] * *c;
                }
            }
        }
        out
    }
}

/// Singular values below this are treated as zero Schmidt coefficients.
const SCHMIDT_CUTOFF: f64 = 1e-13;

/// Schmidt decomposition of a two-factor pure state.
pub fn schmidt(psi: &PureState) -> Result<Schmidt> {
    if psi.dims.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "Schmidt decomposition needs two factors, state has {}",
            psi.dims.len()
        )));
    }
    let (da, db) = (psi.dims[0], psi.dims[1]);
    let m = CMatrix::from_row_slice(da, db, &psi.amps);
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > SCHMIDT_CUTOFF)
        .collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let mut out = Schmidt { coefficients: Vec::new(), left: Vec::new(), right: Vec::new() };
    for k in idx {
        let mut l: CVector = u.column(k).into_owned();
        let mut r: CVector = v_t.row(k).transpose();
        // move the phase fix of the left vector onto the right one
        let before = l.clone();
        fix_phase(&mut l);
        if let Some(p) = before.iter().zip(l.iter()).find(|(b, _)| b.norm() > 1e-10) {
            let phase = p.1 / p.0;
            r.iter_mut().for_each(|x| *x /= phase);
        }
        out.coefficients.push(svd.singular_values[k]);
        out.left.push(l);
        out.right.push(r);
    }
    Ok(out)
}

/// Eigenvalues below this are dropped when purifying.
const PURIFY_CUTOFF: f64 = 1e-15;

/// A pure state on `ρ.dims ⊗ C^rank` whose marginal on the original factors is `ρ`.
///
/// The appended factor has dimension `rank(ρ)`.
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    if (rho.trace - 1.0).abs() > STATE_TOL || (real_trace(&rho.mat) - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidSpectrum("purification needs a trace-one state".into()));
    }
    let (vals, vecs) = eigh(&rho.mat);
    if let Some(&low) = vals.last() {
        if low < -PSD_CLAMP {
            return Err(Error::NotPositive(low));
        }
    }
    let kept: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > PURIFY_CUTOFF).collect();
    let rank = kept.len();
    let d = rho.dim();
    let mut amps = vec![C64::new(0.0, 0.0); d * rank];
    for (slot, &k) in kept.iter().enumerate() {
        let w = vals[k].sqrt();
        for i in 0..d {
            amps[i * rank + slot] = vecs[k][i] * w;
        }
    }
    let mut dims = rho.dims.clone();
    dims.push(rank);
    PureState::normalized(amps, dims)
}

/// Gram matrix of the parallel slices of a three-index array along `axis` (0, 1 or 2).
///
/// Entry `(s, t)` is `Σ A_s · conj(A_t)` over the remaining two indices, which
/// is the marginal of the flattened array on that factor.
pub fn gram_of_slices(data: &[C64], shape: [usize; 3], axis: usize) -> Result<CMatrix> {
    check_dims(&shape, data.len())?;
    if axis > 2 {
        return Err(Error::InvalidSubset(format!("axis {axis} out of range 0..3")));
    }
    let (kept, traced, _) = split_offsets(&shape, &[axis])?;
    let d = kept.len();
    let mut g = CMatrix::zeros(d, d);
    for (i, &ki) in kept.iter().enumerate() {
        for (j, &kj) in kept.iter().enumerate() {
            g[(i, j)] = traced.iter().map(|&t| data[ki + t] * data[kj + t].conj()).sum();
        }
    }
    Ok(g)
}
