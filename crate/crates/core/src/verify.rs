//! Seeded sampling campaigns: soundness of catalog families on genuine
//! states, isospectrality of bipartite marginals, and witness search.

use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{check_equivalence, check_equivalence_on, check_family_on, family, simplex_point, EquivalenceReport, Spectra};
use crate::error::{Error, Result};
use crate::fermion::{haar_fermion_with, one_rdm, one_rdm_mixed, FermionBasis};
use crate::rng::{stream, Rng};
use crate::spectrum::Spectrum;
use crate::tensor::{eigh, haar_pure_with, random_mixed_with_spectrum_with, CMatrix, PureState, C64};
use crate::System;

/// Default violation tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest sorted-spectrum deviation accepted by [`witness_search`].
pub const WITNESS_TOLERANCE: f64 = 1e-3;

/// Outcome of a soundness campaign. Equality ignores `wall_time_ms`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignReport {
    pub family: String,
    pub system: System,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Fixed global spectrum of mixed-state campaigns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<Vec<f64>>,
    pub min_slack: f64,
    pub violations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<usize>,
    pub wall_time_ms: f64,
}

impl PartialEq for CampaignReport {
    fn eq(&self, o: &Self) -> bool {
        self.family == o.family
            && self.system == o.system
            && self.trials == o.trials
            && self.seed == o.seed
            && self.tolerance == o.tolerance
            && self.global == o.global
            && self.min_slack.to_bits() == o.min_slack.to_bits()
            && self.violations == o.violations
            && self.first_violation == o.first_violation
    }
}

/// Stream reserved for campaign-wide draws such as the fixed global spectrum.
const CAMPAIGN_STREAM: u64 = u64::MAX;

/// Correlators `E(x, y)` of one of the 16 deterministic local strategies.
fn deterministic_correlators(k: usize) -> [f64; 4] {
    let s = |b: usize| if k >> b & 1 == 1 { -1.0 } else { 1.0 };
    let (a0, a1, b0, b1) = (s(0), s(1), s(2), s(3));
    [a0 * b0, a0 * b1, a1 * b0, a1 * b1]
}

/// Marginal spectra of one random state of `system`.
fn sample_state(system: &System, global: Option<&[f64]>, g: &mut Rng) -> Result<Spectra> {
    let mixed_spectrum = |len: usize, g: &mut Rng| -> Result<Spectrum> {
        Spectrum::from_unsorted(global.map_or_else(|| simplex_point(len, g), <[f64]>::to_vec), 1.0)
    };
    match system {
        System::Fermion { r, n, mixed: false } => {
            let psi = haar_fermion_with(*r, *n, g)?;
            Ok(Spectra::single(one_rdm(&psi).spectrum()?.into_values()))
        }
        System::Fermion { r, n, mixed: true } => {
            let basis = FermionBasis::new(*r, *n)?;
            let nu = mixed_spectrum(basis.dim(), g)?;
            let rho = random_mixed_with_spectrum_with(&nu, &[basis.dim()], g)?;
            let site = one_rdm_mixed(&basis, &rho)?.spectrum()?.into_values();
            Ok(Spectra::mixed(vec![site], nu.into_values()))
        }
        System::Tensor { dims, mixed: false } => {
            let psi = haar_pure_with(dims, g)?;
            Ok(Spectra::pure(psi.site_spectra()?.into_iter().map(Spectrum::into_values).collect()))
        }
        System::Tensor { dims, mixed: true } => {
            let nu = mixed_spectrum(dims.iter().product(), g)?;
            let rho = random_mixed_with_spectrum_with(&nu, dims, g)?;
            let sites = (0..dims.len())
                .map(|k| Ok(rho.partial_trace(&[k])?.spectrum()?.into_values()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Spectra::mixed(sites, nu.into_values()))
        }
        System::Correlations => {
            // mixtures of local deterministic strategies
            let w: Vec<f64> = (0..16).map(|_| g.random::<f64>().powi(4)).collect();
            let total: f64 = w.iter().sum();
            let mut e = [0.0; 4];
            for (k, wk) in w.iter().enumerate() {
                e.iter_mut().zip(deterministic_correlators(k)).for_each(|(x, y)| *x += wk / total * y);
            }
            Ok(Spectra::single(e.to_vec()))
        }
    }
}

fn report(id: &str, system: &System, slacks: Vec<f64>, seed: u64, tol: f64, global: Option<Vec<f64>>, start: Instant) -> CampaignReport {
    let first_violation = slacks.iter().position(|&s| s < -tol);
    CampaignReport {
        family: id.to_string(),
        system: system.clone(),
        trials: slacks.len(),
        seed,
        tolerance: tol,
        global,
        min_slack: slacks.iter().copied().fold(f64::INFINITY, f64::min),
        violations: slacks.iter().filter(|&&s| s < -tol).count(),
        first_violation,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn applicable(id: &str, system: &System) -> Result<()> {
    if !family(id)?.applies_to(system) {
        return Err(Error::NotApplicable { family: id.into(), reason: format!("incompatible system {system}") });
    }
    Ok(())
}

/// Checks family `id` on the marginal spectra of `trials` random states of
/// `system`. Mixed-state campaigns draw one global spectrum for all trials.
pub fn mc_verify(id: &str, system: &System, trials: usize, seed: u64, tol: f64) -> Result<CampaignReport> {
    applicable(id, system)?;
    let global = match system {
        System::Tensor { dims, mixed: true } => Some(simplex_point(dims.iter().product(), &mut stream(seed, CAMPAIGN_STREAM))),
        System::Fermion { r, n, mixed: true } => {
            Some(simplex_point(num_integer::binomial(*r, *n), &mut stream(seed, CAMPAIGN_STREAM)))
        }
        _ => None,
    };
    run(id, system, global, trials, seed, tol)
}

/// As [`mc_verify`] with the global spectrum of every mixed state fixed to `nu`.
pub fn mc_verify_with_spectrum(id: &str, system: &System, nu: &[f64], trials: usize, seed: u64, tol: f64) -> Result<CampaignReport> {
    applicable(id, system)?;
    if !system.is_mixed() {
        return Err(Error::NotApplicable { family: id.into(), reason: format!("{system} has no global spectrum") });
    }
    let nu = Spectrum::from_unsorted(nu.to_vec(), 1.0)?.into_values();
    run(id, system, Some(nu), trials, seed, tol)
}

fn run(id: &str, system: &System, global: Option<Vec<f64>>, trials: usize, seed: u64, tol: f64) -> Result<CampaignReport> {
    let start = Instant::now();
    let slacks = (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = sample_state(system, global.as_deref(), &mut stream(seed, k as u64))?;
            Ok(check_family_on(id, system, &s, tol)?.worst_slack)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(report(id, system, slacks, seed, tol, global, start))
}

/// Checks family `id` on caller-supplied spectra, e.g. planted counterexamples.
pub fn verify_spectra(id: &str, system: &System, inputs: &[Spectra], tol: f64) -> Result<CampaignReport> {
    applicable(id, system)?;
    let start = Instant::now();
    let slacks = inputs
        .par_iter()
        .map(|s| Ok(check_family_on(id, system, s, tol)?.worst_slack))
        .collect::<Result<Vec<f64>>>()?;
    Ok(report(id, system, slacks, 0, tol, None, start))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormatDiscrepancy {
    pub dims: (usize, usize),
    pub max_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralityReport {
    pub trials: usize,
    pub seed: u64,
    pub formats: Vec<FormatDiscrepancy>,
    pub max_discrepancy: f64,
}

/// Largest gap between the sorted site spectra of random bipartite pure
/// states, the shorter spectrum padded with zeros.
pub fn isospectrality_campaign(formats: &[(usize, usize)], trials: usize, seed: u64) -> Result<IsospectralityReport> {
    let mut out = Vec::with_capacity(formats.len());
    for (f, &(a, b)) in formats.iter().enumerate() {
        let worst = (0..trials)
            .into_par_iter()
            .map(|k| {
                let mut g = stream(seed, ((f as u64) << 32) + k as u64);
                let s = haar_pure_with(&[a, b], &mut g)?.site_spectra()?;
                let (x, y) = (s[0].values(), s[1].values());
                Ok((0..a.max(b))
                    .map(|i| (x.get(i).unwrap_or(&0.0) - y.get(i).unwrap_or(&0.0)).abs())
                    .fold(0.0, f64::max))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        out.push(FormatDiscrepancy { dims: (a, b), max_discrepancy: worst });
    }
    let max_discrepancy = out.iter().map(|d| d.max_discrepancy).fold(0.0, f64::max);
    Ok(IsospectralityReport { trials, seed, formats: out, max_discrepancy })
}

/// Compares two families on shared sample points, on `system` or else on
/// the fixed system of either family.
pub fn equivalence_campaign(a: &str, b: &str, system: Option<&System>, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    match system {
        Some(s) => check_equivalence_on(a, b, s, samples, seed),
        None => check_equivalence(a, b, samples, seed),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub success: bool,
    /// Largest deviation between achieved and target sorted spectra.
    pub residual: f64,
    pub restarts: usize,
    pub dims: Vec<usize>,
    /// Best state found, as `(re, im)` pairs.
    pub amplitudes: Vec<(f64, f64)>,
    /// Achieved site spectra.
    pub spectra: Vec<Vec<f64>>,
}

impl WitnessReport {
    pub fn state(&self) -> Result<PureState> {
        PureState::normalized(self.amplitudes.iter().map(|&(re, im)| C64::new(re, im)).collect(), self.dims.clone())
    }
}

struct Objective<'a> {
    dims: &'a [usize],
    strides: Vec<usize>,
    targets: &'a [Vec<f64>],
}

impl Objective<'_> {
    /// Squared spectral distance, its gradient in `ψ`, and the site spectra.
    fn eval(&self, psi: &[C64], gradient: bool) -> Result<(f64, Vec<C64>, Vec<Vec<f64>>)> {
        let state = PureState::normalized(psi.to_vec(), self.dims.to_vec())?;
        let mut f = 0.0;
        let mut grad = vec![C64::new(0.0, 0.0); if gradient { psi.len() } else { 0 }];
        let mut spectra = Vec::with_capacity(self.dims.len());
        for (k, &d) in self.dims.iter().enumerate() {
            let (vals, vecs) = eigh(state.marginal(&[k])?.matrix());
            let diffs: Vec<f64> = vals.iter().zip(&self.targets[k]).map(|(a, b)| a - b).collect();
            f += diffs.iter().map(|x| x * x).sum::<f64>();
            spectra.push(vals);
            if !gradient {
                continue;
            }
            let mut m = CMatrix::zeros(d, d);
            for (v, &c) in vecs.iter().zip(&diffs) {
                m += v * v.adjoint() * C64::new(2.0 * c, 0.0);
            }
            let st = self.strides[k];
            for (idx, out) in grad.iter_mut().enumerate() {
                let digit = idx / st % d;
                let base = idx - digit * st;
                *out += (0..d).map(|j| m[(digit, j)] * state.amplitudes()[base + j * st]).sum::<C64>() * 2.0;
            }
        }
        Ok((f, grad, spectra))
    }
}

fn normalize(mut v: Vec<C64>) -> Vec<C64> {
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    v
}

fn max_deviation(spectra: &[Vec<f64>], targets: &[Vec<f64>]) -> f64 {
    spectra.iter().zip(targets).flat_map(|(s, t)| s.iter().zip(t).map(|(a, b)| (a - b).abs())).fold(0.0, f64::max)
}

/// Searches for a pure state of `system` whose site spectra equal `targets`
/// by projected gradient descent on the unit sphere with random restarts.
/// A failed search reports the best residual; it proves nothing.
pub fn witness_search(targets: &[Vec<f64>], system: &System, restarts: usize, iters: usize, seed: u64) -> Result<WitnessReport> {
    let System::Tensor { dims, mixed: false } = system else {
        return Err(Error::Unsupported(format!("witness search needs a pure tensor system, got {system}")));
    };
    if targets.len() != dims.len() || targets.iter().zip(dims).any(|(t, &d)| t.len() != d) {
        return Err(Error::DimensionMismatch(format!("targets do not match {system}")));
    }
    let targets: Vec<Vec<f64>> = targets
        .iter()
        .map(|t| Ok(Spectrum::from_unsorted(t.clone(), 1.0)?.into_values()))
        .collect::<Result<_>>()?;
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len() - 1).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let obj = Objective { dims, strides, targets: &targets };
    let mut best: Option<(f64, Vec<C64>, Vec<Vec<f64>>)> = None;
    let mut used = 0;
    for restart in 0..restarts.max(1) {
        used += 1;
        let mut psi = haar_pure_with(dims, &mut stream(seed, restart as u64))?.amplitudes().to_vec();
        let (mut f, mut grad, mut spectra) = obj.eval(&psi, true)?;
        let mut step = 0.1;
        for _ in 0..iters {
            if f < 1e-16 {
                break;
            }
            // tangent part of the gradient
            let overlap: C64 = psi.iter().zip(&grad).map(|(p, g)| p.conj() * g).sum();
            let dir: Vec<C64> = grad.iter().zip(&psi).map(|(g, p)| g - p * overlap).collect();
            let mut moved = false;
            while step > 1e-14 {
                let trial = normalize(psi.iter().zip(&dir).map(|(p, d)| p - d * step).collect());
                let (ft, _, _) = obj.eval(&trial, false)?;
                if ft < f {
                    psi = trial;
                    (f, grad, spectra) = obj.eval(&psi, true)?;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        let residual = max_deviation(&spectra, &targets);
        if best.as_ref().is_none_or(|b| residual < b.0) {
            best = Some((residual, psi, spectra));
        }
        if residual < WITNESS_TOLERANCE {
            break;
        }
    }
    let (residual, psi, spectra) = best.expect("at least one restart");
    Ok(WitnessReport {
        success: residual < WITNESS_TOLERANCE,
        residual,
        restarts: used,
        dims: dims.clone(),
        amplitudes: psi.iter().map(|a| (a.re, a.im)).collect(),
        spectra,
    })
}
