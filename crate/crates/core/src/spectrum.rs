//! Spectra: sorted eigenvalue vectors with a declared normalization, and the
//! order-theoretic operations on them (majorization, particle–hole duality,
//! rescaling).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the sum of a spectrum against its declared trace.
pub const TRACE_TOL: f64 = 1e-10;

/// Slack allowed when comparing partial sums in [`majorizes`].
pub const MAJORIZATION_TOL: f64 = 1e-12;

/// A nonincreasing real vector together with the trace it is normalized to.
///
/// Density matrices use trace 1; fermionic one-particle matrices follow the
/// chemists' convention of trace `n` (the particle number).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    trace: f64,
}

impl Spectrum {
    /// Validates that `values` is nonincreasing and sums to `trace`.
    pub fn new(values: Vec<f64>, trace: f64) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite entry".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum("entries are not nonincreasing".into()));
        }
        let sum: f64 = values.iter().sum();
        if (sum - trace).abs() > TRACE_TOL {
            return Err(Error::InvalidSpectrum(format!(
                "entries sum to {sum}, declared trace is {trace}"
            )));
        }
        Ok(Self { values, trace })
    }

    /// Sorts `values` nonincreasing, then validates as in [`Spectrum::new`].
    pub fn from_unsorted(mut values: Vec<f64>, trace: f64) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        Self::new(values, trace)
    }

    /// Sorted spectrum whose declared trace is its own sum.
    pub fn with_own_trace(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        let trace = values.iter().sum();
        Self::new(values, trace)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn trace(&self) -> f64 {
        self.trace
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest entry.
    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Entries strictly greater than `tol`.
    pub fn nonzero(&self, tol: f64) -> &[f64] {
        let k = self.values.iter().take_while(|v| **v > tol).count();
        &self.values[..k]
    }

    /// Entries in nondecreasing order.
    pub fn increasing(&self) -> Vec<f64> {
        self.values.iter().rev().copied().collect()
    }
}

/// True iff `lambda ≺ nu`: every partial sum of `lambda` is at most the
/// corresponding partial sum of `nu`. The shorter vector is padded with zeros.
pub fn majorizes(nu: &Spectrum, lambda: &Spectrum) -> Result<bool> {
    let (sn, sl) = (nu.values.iter().sum::<f64>(), lambda.values.iter().sum::<f64>());
    if (sn - sl).abs() > TRACE_TOL {
        return Err(Error::InvalidSpectrum(format!(
            "majorization needs equal sums, got {sn} and {sl}"
        )));
    }
    let len = nu.len().max(lambda.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    let (mut pn, mut pl) = (0.0, 0.0);
    for i in 0..len {
        pn += at(&nu.values, i);
        pl += at(&lambda.values, i);
        if pl > pn + MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Particle–hole conjugate `λᵢ ↦ 1 − λ_{r+1−i}` of a Pauli spectrum with `r` entries.
///
/// The result is again nonincreasing, with trace `r − n`.
pub fn particle_hole(lambda: &Spectrum) -> Result<Spectrum> {
    const EDGE: f64 = 1e-10;
    if let Some(v) = lambda.values.iter().find(|v| **v < -EDGE || **v > 1.0 + EDGE) {
        return Err(Error::OutOfRange(format!(
            "particle–hole needs entries in [0, 1], found {v}"
        )));
    }
    let r = lambda.len() as f64;
    let values: Vec<f64> = lambda.values.iter().rev().map(|v| 1.0 - v).collect();
    Spectrum::new(values, r - lambda.trace)
}

/// Rescales `lambda` so its entries sum to `target`.
pub fn renormalize(lambda: &Spectrum, target: f64) -> Result<Spectrum> {
    let sum: f64 = lambda.values.iter().sum();
    if sum == 0.0 {
        return Err(Error::InvalidSpectrum("cannot rescale a zero-sum spectrum".into()));
    }
    let scale = target / sum;
    let values = lambda.values.iter().map(|v| v * scale).collect();
    Spectrum::new(values, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(v: &[f64]) -> Spectrum {
        Spectrum::with_own_trace(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_unsorted_and_bad_trace() {
        assert!(Spectrum::new(vec![0.2, 0.8], 1.0).is_err());
        assert!(Spectrum::new(vec![0.8, 0.1], 1.0).is_err());
        let s = Spectrum::from_unsorted(vec![0.1, 0.7, 0.2], 1.0).unwrap();
        assert_eq!(s.values(), &[0.7, 0.2, 0.1]);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&sp(&[1.0, 0.0]), &sp(&[0.5, 0.5])).unwrap());
        assert!(!majorizes(&sp(&[0.5, 0.5]), &sp(&[1.0, 0.0])).unwrap());
        let l = sp(&[0.6, 0.3, 0.1]);
        assert!(majorizes(&l, &l).unwrap());
        // padding with zeros
        assert!(majorizes(&sp(&[0.5, 0.5]), &sp(&[0.4, 0.3, 0.3])).unwrap());
        assert!(majorizes(&sp(&[1.0]), &sp(&[0.5, 0.5])).is_ok());
        assert!(majorizes(&sp(&[1.0]), &sp(&[0.5, 0.2])).is_err());
    }

    #[test]
    fn particle_hole_examples() {
        let s = Spectrum::new(vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0], 3.0).unwrap();
        assert_eq!(particle_hole(&s).unwrap(), s);
        let s = Spectrum::new(vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0], 7.0).unwrap();
        let d = particle_hole(&s).unwrap();
        assert_eq!(d.values(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(d.trace(), 1.0);
        let bad = Spectrum::new(vec![1.5, 0.5], 2.0).unwrap();
        assert!(particle_hole(&bad).is_err());
    }

    #[test]
    fn renormalize_examples() {
        let s = renormalize(&sp(&[3.0, 0.0, 0.0]), 1.0).unwrap();
        assert_eq!(s.values(), &[1.0, 0.0, 0.0]);
        let s = renormalize(&sp(&[0.5, 0.5]), 2.0).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0]);
        assert!(renormalize(&sp(&[0.0, 0.0]), 1.0).is_err());
    }

    /// Partial-sum scan written independently of `majorizes`.
    fn majorizes_oracle(nu: &[f64], lambda: &[f64]) -> bool {
        let n = nu.len().max(lambda.len());
        (1..=n).all(|k| {
            let a: f64 = lambda.iter().take(k).sum();
            let b: f64 = nu.iter().take(k).sum();
            a <= b + MAJORIZATION_TOL
        })
    }

    fn pauli_vec() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..=1.0, 1..9)
    }

    proptest! {
        #[test]
        fn majorization_matches_scan(a in prop::collection::vec(0.0f64..1.0, 1..7),
                                     b in prop::collection::vec(0.0f64..1.0, 1..7)) {
            let (sa, sb): (f64, f64) = (a.iter().sum(), b.iter().sum());
            prop_assume!(sa > 1e-6 && sb > 1e-6);
            let na = Spectrum::from_unsorted(a.iter().map(|x| x / sa).collect(), 1.0).unwrap();
            let nb = Spectrum::from_unsorted(b.iter().map(|x| x / sb).collect(), 1.0).unwrap();
            prop_assert_eq!(majorizes(&na, &nb).unwrap(), majorizes_oracle(na.values(), nb.values()));
        }

        #[test]
        fn majorization_is_transitive(v in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 4), 3)) {
            let s: Vec<Spectrum> = v.iter().map(|x| {
                let t: f64 = x.iter().sum::<f64>().max(1e-9);
                Spectrum::from_unsorted(x.iter().map(|y| y / t).collect(), 1.0).unwrap()
            }).collect();
            if majorizes(&s[0], &s[1]).unwrap() && majorizes(&s[1], &s[2]).unwrap() {
                prop_assert!(majorizes(&s[0], &s[2]).unwrap());
            }
        }

        #[test]
        fn majorization_is_antisymmetric(a in prop::collection::vec(0.0f64..1.0, 4),
                                         b in prop::collection::vec(0.0f64..1.0, 4)) {
            let norm = |x: &Vec<f64>| {
                let t: f64 = x.iter().sum::<f64>().max(1e-9);
                Spectrum::from_unsorted(x.iter().map(|y| y / t).collect(), 1.0).unwrap()
            };
            let (sa, sb) = (norm(&a), norm(&b));
            if majorizes(&sa, &sb).unwrap() && majorizes(&sb, &sa).unwrap() {
                for (x, y) in sa.values().iter().zip(sb.values()) {
                    prop_assert!((x - y).abs() < 1e-11);
                }
            }
        }

        #[test]
        fn particle_hole_is_an_involution(v in pauli_vec()) {
            let s = Spectrum::with_own_trace(v).unwrap();
            let d = particle_hole(&s).unwrap();
            prop_assert!(d.values().iter().all(|x| (0.0..=1.0).contains(x)));
            let back = particle_hole(&d).unwrap();
            for (x, y) in back.values().iter().zip(s.values()) {
                prop_assert!((x - y).abs() < 1e-14);
            }
        }

        #[test]
        fn renormalize_round_trip(v in prop::collection::vec(0.01f64..1.0, 1..8), t in 0.5f64..8.0) {
            let s = Spectrum::with_own_trace(v).unwrap();
            let back = renormalize(&renormalize(&s, t).unwrap(), s.trace()).unwrap();
            for (x, y) in back.values().iter().zip(s.values()) {
                prop_assert!((x - y).abs() < 1e-14);
            }
        }
    }
}
