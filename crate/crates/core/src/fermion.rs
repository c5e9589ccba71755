//! Fermionic states in the occupation-number basis of `∧ⁿ C^r`.
//!
//! Orbitals are labelled `1..=r`. Basis vectors are the `n`-subsets of
//! orbitals in lexicographic order; the subset `{i₁ < … < iₙ}` stands for
//! `a†_{i₁} ⋯ a†_{iₙ} |0⟩`.

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::rng::{self, Rng};
use crate::tensor::{haar_pure_with, CMatrix, DensityMatrix, C64};

/// Lexicographically ordered `n`-subsets of `{1..=r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermionBasis {
    r: usize,
    n: usize,
    subsets: Vec<Vec<usize>>,
}

fn subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(r, n));
    let mut cur: Vec<usize> = (1..=n).collect();
    if n > r {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(k) = (0..n).rev().find(|&k| cur[k] < r - (n - 1 - k)) else {
            return out;
        };
        cur[k] += 1;
        for j in k + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl FermionBasis {
    /// Basis of `∧ⁿ C^r`; requires `r ≥ 1` and `n ≤ r`.
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || n > r {
            return Err(Error::InvalidFermionSystem(format!("no {n}-particle states on {r} orbitals")));
        }
        if binomial(r, n) > 1 << 16 {
            return Err(Error::Unsupported(format!("∧^{n} C^{r} has dimension {}", binomial(r, n))));
        }
        Ok(Self { r, n, subsets: subsets(r, n) })
    }

    pub fn orbitals(&self) -> usize {
        self.r
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// The subset at basis index `idx`.
    pub fn subset(&self, idx: usize) -> &[usize] {
        &self.subsets[idx]
    }

    /// Basis index of a sorted subset.
    pub fn index_of(&self, subset: &[usize]) -> Option<usize> {
        if subset.len() != self.n {
            return None;
        }
        // lexicographic rank
        let mut idx = 0;
        let mut prev = 0;
        for (k, &s) in subset.iter().enumerate() {
            if s <= prev || s > self.r {
                return None;
            }
            for skipped in prev + 1..s {
                idx += binomial(self.r - skipped, self.n - k - 1);
            }
            prev = s;
        }
        Some(idx)
    }

    /// `a_i` applied to basis vector `idx`: the sign and the index of the
    /// resulting `(n−1)`-subset in `lower`, or `None` if orbital `i` is empty.
    fn annihilate(&self, idx: usize, i: usize, lower: &FermionBasis) -> Option<(f64, usize)> {
        let s = &self.subsets[idx];
        let pos = s.iter().position(|&o| o == i)?;
        let rest: Vec<usize> = s.iter().copied().filter(|&o| o != i).collect();
        let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
        Some((sign, lower.index_of(&rest).expect("subset of basis element")))
    }

    /// Matrix of `a_i` from this space to `∧ⁿ⁻¹`, as (row, col, sign) triples.
    fn annihilator(&self, i: usize, lower: &FermionBasis) -> Vec<(usize, usize, f64)> {
        (0..self.dim())
            .filter_map(|col| self.annihilate(col, i, lower).map(|(s, row)| (row, col, s)))
            .collect()
    }

    fn lowered(&self) -> FermionBasis {
        FermionBasis { r: self.r, n: self.n - 1, subsets: subsets(self.r, self.n - 1) }
    }
}

/// A normalized pure state of `n` fermions in `r` orbitals.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionState {
    basis: FermionBasis,
    amps: Vec<C64>,
}

impl FermionState {
    /// Validates length and unit norm (within 1e-12).
    pub fn new(r: usize, n: usize, amps: Vec<C64>) -> Result<Self> {
        let basis = FermionBasis::new(r, n)?;
        if amps.len() != basis.dim() {
            return Err(Error::DimensionMismatch(format!(
                "∧^{n} C^{r} has dimension {}, got {} amplitudes",
                basis.dim(),
                amps.len()
            )));
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpectrum(format!("state has squared norm {norm2}")));
        }
        Ok(Self { basis, amps })
    }

    /// Superposition of Slater determinants `Σ cₖ |Sₖ⟩`, normalized.
    pub fn from_terms(r: usize, n: usize, terms: &[(C64, Vec<usize>)]) -> Result<Self> {
        let basis = FermionBasis::new(r, n)?;
        let mut amps = vec![C64::new(0.0, 0.0); basis.dim()];
        for (c, s) in terms {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            let idx = basis.index_of(&sorted).ok_or_else(|| {
                Error::InvalidOrbitals(format!("{s:?} is not a {n}-subset of 1..={r}"))
            })?;
            amps[idx] += c;
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidSpectrum("zero vector".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { basis, amps })
    }

    pub fn basis(&self) -> &FermionBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// `a_i |ψ⟩` as amplitudes over the `(n−1)`-particle basis.
    fn annihilated(&self, i: usize, lower: &FermionBasis) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); lower.dim()];
        for (idx, a) in self.amps.iter().enumerate() {
            if let Some((s, j)) = self.basis.annihilate(idx, i, lower) {
                out[j] += a * s;
            }
        }
        out
    }
}

/// The Slater determinant on the given orbitals.
pub fn slater(r: usize, subset: &[usize]) -> Result<FermionState> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    let basis = FermionBasis::new(r, n)?;
    let idx = basis
        .index_of(&sorted)
        .ok_or_else(|| Error::InvalidOrbitals(format!("{subset:?} is not a set of orbitals in 1..={r}")))?;
    let mut amps = vec![C64::new(0.0, 0.0); basis.dim()];
    amps[idx] = C64::new(1.0, 0.0);
    Ok(FermionState { basis, amps })
}

/// Random state of `∧ⁿ C^r` from normalized complex Gaussians, seeded.
pub fn haar_fermion(r: usize, n: usize, seed: u64) -> Result<FermionState> {
    haar_fermion_with(r, n, &mut rng::seeded(seed))
}

/// As [`haar_fermion`], drawing from a caller-owned generator.
pub fn haar_fermion_with(r: usize, n: usize, g: &mut Rng) -> Result<FermionState> {
    if n == 0 || n >= r {
        return Err(Error::InvalidFermionSystem(format!("need 0 < n < r, got n={n}, r={r}")));
    }
    let basis = FermionBasis::new(r, n)?;
    let amps = haar_pure_with(&[basis.dim()], g)?.amplitudes().to_vec();
    Ok(FermionState { basis, amps })
}

/// One-particle density matrix `ρ_{ij} = ⟨a†_j a_i⟩`, trace `n`.
pub fn one_rdm(psi: &FermionState) -> DensityMatrix {
    let r = psi.basis.r;
    let n = psi.basis.n;
    if n == 0 {
        return DensityMatrix::from_parts(CMatrix::zeros(r, r), vec![r], 0.0);
    }
    let lower = psi.basis.lowered();
    let phi: Vec<Vec<C64>> = (1..=r).map(|i| psi.annihilated(i, &lower)).collect();
    let mat = CMatrix::from_fn(r, r, |i, j| phi[i].iter().zip(&phi[j]).map(|(x, y)| x * y.conj()).sum());
    DensityMatrix::from_parts(mat, vec![r], n as f64)
}

/// One-particle density matrix of a mixed state on `∧ⁿ C^r`, trace `n · Tr R`.
pub fn one_rdm_mixed(basis: &FermionBasis, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, basis has {}",
            rho.dim(),
            basis.dim()
        )));
    }
    let r = basis.r;
    let lower = basis.lowered();
    let ops: Vec<_> = (1..=r).map(|i| basis.annihilator(i, &lower)).collect();
    let m = rho.matrix();
    let mat = CMatrix::from_fn(r, r, |i, j| {
        // Tr(a_i R a_j†)
        let mut acc = C64::new(0.0, 0.0);
        for &(row_i, col_i, si) in &ops[i] {
            for &(row_j, col_j, sj) in &ops[j] {
                if row_i == row_j {
                    acc += m[(col_i, col_j)] * (si * sj);
                }
            }
        }
        acc
    });
    Ok(DensityMatrix::from_parts(mat, vec![r], basis.n as f64 * rho.trace()))
}

/// Two-particle density matrix on the antisymmetric pair space.
#[derive(Debug, Clone)]
pub struct TwoRdm {
    /// Entry `((p,q),(r,s))` is `2⟨a†_r a†_s a_q a_p⟩` for `p<q`, `r<s`.
    pub matrix: CMatrix,
    /// Pair labels of the rows, lexicographic.
    pub pairs: Vec<(usize, usize)>,
    /// The trace of `matrix`, `n(n−1)` for a normalized state.
    pub trace_convention: f64,
}

impl TwoRdm {
    /// `Σ_j Γ_{(ij),(kj)}` with antisymmetric extension; equals `(n−1) ρ⁽¹⁾`.
    pub fn contract(&self, r: usize) -> CMatrix {
        let mut out = CMatrix::zeros(r, r);
        let pos = |a: usize, b: usize| -> Option<(usize, f64)> {
            if a == b {
                return None;
            }
            let (lo, hi, s) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
            self.pairs.iter().position(|&p| p == (lo, hi)).map(|k| (k, s))
        };
        for i in 1..=r {
            for k in 1..=r {
                let mut acc = C64::new(0.0, 0.0);
                for j in 1..=r {
                    if let (Some((x, sx)), Some((y, sy))) = (pos(i, j), pos(k, j)) {
                        acc += self.matrix[(x, y)] * (sx * sy);
                    }
                }
                // each unordered pair appears once in the matrix; the ordered sum counts it twice
                out[(i - 1, k - 1)] = acc * 0.5;
            }
        }
        out
    }
}

/// The two-particle density matrix of `ψ`; requires `n ≥ 2`.
pub fn two_rdm(psi: &FermionState) -> Result<TwoRdm> {
    let (r, n) = (psi.basis.r, psi.basis.n);
    if n < 2 {
        return Err(Error::InvalidFermionSystem(format!("two-particle matrix needs n ≥ 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = subsets(r, 2).into_iter().map(|s| (s[0], s[1])).collect();
    let lower1 = psi.basis.lowered();
    let lower2 = lower1.lowered();
    // φ_{pq} = a_q a_p ψ
    let phi: Vec<Vec<C64>> = pairs
        .iter()
        .map(|&(p, q)| {
            let ap = psi.annihilated(p, &lower1);
            let tmp = FermionState { basis: lower1.clone(), amps: ap };
            tmp.annihilated(q, &lower2)
        })
        .collect();
    let d = pairs.len();
    let matrix = CMatrix::from_fn(d, d, |a, b| {
        phi[a].iter().zip(&phi[b]).map(|(x, y)| x * y.conj()).sum::<C64>() * 2.0
    });
    Ok(TwoRdm { matrix, pairs, trace_convention: (n * (n - 1)) as f64 })
}

/// `⟨ψ| Σ_k h₁^{(k)} + Σ_{k<l} h₁₂^{(kl)} |ψ⟩` evaluated through the two-particle density matrix.
///
/// `h1` is an `r × r` Hermitian matrix; `h12` acts on the antisymmetric pair
/// space with rows labelled as in [`TwoRdm::pairs`].
pub fn energy_from_two_rdm(h1: &CMatrix, h12: &CMatrix, psi: &FermionState) -> Result<f64> {
    let (r, n) = (psi.basis.r, psi.basis.n);
    let d = binomial(r, 2);
    if h1.shape() != (r, r) || h12.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "expected h1 {r}x{r} and h12 {d}x{d}, got {:?} and {:?}",
            h1.shape(),
            h12.shape()
        )));
    }
    let gamma = two_rdm(psi)?;
    let pairs = &gamma.pairs;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let one_body = CMatrix::from_fn(d, d, |x, y| {
        let (p, q) = pairs[x];
        let (r_, s) = pairs[y];
        let h = |a: usize, b: usize| h1[(a - 1, b - 1)];
        h(p, r_) * delta(q, s) - h(p, s) * delta(q, r_) - h(q, r_) * delta(p, s) + h(q, s) * delta(p, r_)
    });
    let h2 = one_body / C64::new((n - 1) as f64, 0.0) + h12;
    Ok(0.5 * (h2 * &gamma.matrix).trace().re)
}

/// Whether sorted `values` split into equal adjacent pairs within `tol`, an
/// unpaired leftover (odd length) being equal to `leftover`.
pub fn evenly_degenerate(values: &[f64], tol: f64, leftover: f64) -> bool {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    let mut k = 0;
    let mut spare = None;
    while k < v.len() {
        if k + 1 < v.len() && (v[k] - v[k + 1]).abs() <= tol {
            k += 2;
        } else if spare.is_none() {
            spare = Some(v[k]);
            k += 1;
        } else {
            return false;
        }
    }
    spare.is_none_or(|s| (s - leftover).abs() <= tol)
}
