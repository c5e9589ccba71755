//! Registry of inequality families with uniform checking.
//!
//! Every family fixes an ordering and a normalization of the spectra it
//! reads. [`check_family`] brings input into that form and lists each
//! change it made in the report.

mod families;
mod record;

pub use families::{F84_ABS_PLUS, F8_GROUPS};
pub use record::{InequalityRecord, Origin, Relation};

use rand::Rng as _;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{haar_fermion_with, one_rdm};
use crate::rng::{stream, Rng};
use crate::system::System;
use crate::tensor::{haar_pure_with, random_mixed_with_spectrum_with};
use crate::Spectrum;

/// Order in which a family reads each local spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumOrder {
    Decreasing,
    Increasing,
    /// Decreasing within each qubit, sites arranged so that `λ₁ − λ₂` increases.
    SitesByGap,
    /// Values taken as given.
    AsGiven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Every spectrum sums to 1.
    UnitTrace,
    /// Local spectrum sums to the particle number, global to 1.
    ParticleNumber,
    /// Values in `[−1, 1]`, not rescaled.
    Correlators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// The full set of constraints for the system.
    Complete,
    /// Exactly the published list, whether or not it is the full set.
    AsPrinted,
    /// Only the count is recorded.
    MetadataOnly,
}

/// Registry entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub id: &'static str,
    pub description: &'static str,
    pub order: SpectrumOrder,
    pub normalization: Normalization,
    pub completeness: Completeness,
    /// Inequality count for families with a fixed system.
    pub count: Option<usize>,
}

const fn fam(
    id: &'static str,
    description: &'static str,
    order: SpectrumOrder,
    normalization: Normalization,
    completeness: Completeness,
    count: Option<usize>,
) -> Family {
    Family { id, description, order, normalization, completeness, count }
}

use Completeness::*;
use Normalization::*;
use SpectrumOrder::*;

static REGISTRY: [Family; 16] = [
    fam("POLYGON", "pure N-qubit: polygon inequalities on the smaller local eigenvalues", Decreasing, UnitTrace, Complete, None),
    fam("BRAVYI_2Q", "mixed two-qubit marginals against the global spectrum", Decreasing, UnitTrace, Complete, Some(7)),
    fam("FRANZ_3QUTRIT", "pure three-qutrit marginals, spectra increasing", Increasing, UnitTrace, Complete, Some(36)),
    fam("BASIC", "partial sums of each marginal against the global spectrum", Decreasing, UnitTrace, AsPrinted, None),
    fam("THREE_QUBIT_MIXED", "mixed three-qubit marginals grouped by extremal edges", SitesByGap, UnitTrace, AsPrinted, Some(10)),
    fam("TWO_PARTICLE_PURE", "two particles or two holes: even degeneracy", Decreasing, ParticleNumber, Complete, None),
    fam("BD6", "three fermions in six orbitals", Decreasing, ParticleNumber, Complete, Some(4)),
    fam("F7_BD", "three fermions in seven orbitals, sum form", Decreasing, ParticleNumber, Complete, Some(4)),
    fam("F7_LIST", "three fermions in seven orbitals, list form", Decreasing, ParticleNumber, Complete, Some(4)),
    fam("F8_31", "three fermions in eight orbitals", Decreasing, ParticleNumber, Complete, Some(31)),
    fam("F84_14", "four fermions in eight orbitals", Decreasing, ParticleNumber, Complete, Some(14)),
    fam("F84_ABS", "four fermions in eight orbitals, absolute-value form", Decreasing, ParticleNumber, Complete, Some(128)),
    fam("W2H4_MIXED", "mixed two fermions in four orbitals against the global spectrum", Decreasing, UnitTrace, Complete, Some(22)),
    fam("W2H5", "mixed two fermions in five orbitals; list not included", Decreasing, UnitTrace, MetadataOnly, Some(460)),
    fam("PAULI", "Pauli principle 0 <= l_i <= 1", Decreasing, ParticleNumber, Complete, None),
    fam("CHSH_16", "two settings per site: CHSH images and correlator bounds", AsGiven, Correlators, Complete, Some(16)),
];

/// All families in registry order.
pub fn registry() -> &'static [Family] {
    &REGISTRY
}

pub fn family(id: &str) -> Result<&'static Family> {
    REGISTRY.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownFamily(id.to_string()))
}

/// Ids of every family with a list that applies to `system`.
pub fn applicable_families(system: &System) -> Vec<&'static str> {
    REGISTRY.iter().filter(|f| f.applies_to(system)).map(|f| f.id).collect()
}

fn round_count(sum: f64, r: usize, id: &str) -> Result<usize> {
    let n = sum.round();
    if (sum - n).abs() > 1e-6 || n < 1.0 || n >= r as f64 {
        return Err(Error::InvalidSpectrum(format!("{id} needs an integer particle number, spectrum sums to {sum}")));
    }
    Ok(n as usize)
}

impl Family {
    /// The single system of a fixed family.
    pub fn system(&self) -> Option<System> {
        Some(match self.id {
            "BRAVYI_2Q" => System::tensor(&[2, 2], true),
            "FRANZ_3QUTRIT" => System::tensor(&[3, 3, 3], false),
            "THREE_QUBIT_MIXED" => System::tensor(&[2, 2, 2], true),
            "BD6" => System::fermion(6, 3, false),
            "F7_BD" | "F7_LIST" => System::fermion(7, 3, false),
            "F8_31" => System::fermion(8, 3, false),
            "F84_14" | "F84_ABS" => System::fermion(8, 4, false),
            "W2H4_MIXED" => System::fermion(4, 2, true),
            "W2H5" => System::fermion(5, 2, true),
            "CHSH_16" => System::Correlations,
            _ => return None,
        })
    }

    pub fn applies_to(&self, system: &System) -> bool {
        if self.completeness == MetadataOnly {
            return false;
        }
        if let Some(s) = self.system() {
            return &s == system;
        }
        match (self.id, system) {
            ("POLYGON", System::Tensor { dims, mixed: false }) => dims.len() >= 2 && system.is_qubit_array(),
            ("BASIC", System::Tensor { mixed: true, .. }) => true,
            ("PAULI", System::Fermion { .. }) => true,
            ("TWO_PARTICLE_PURE", System::Fermion { r, n, mixed: false }) => *n == 2 || *n + 2 == *r,
            _ => false,
        }
    }

    /// The system a spectra bundle belongs to, read off its shape.
    pub fn infer_system(&self, spectra: &Spectra) -> Result<System> {
        if let Some(s) = self.system() {
            return Ok(s);
        }
        let sites = &spectra.sites;
        let single = || {
            if sites.len() == 1 {
                Ok(&sites[0])
            } else {
                Err(Error::DimensionMismatch(format!("{} expects one spectrum, got {}", self.id, sites.len())))
            }
        };
        match self.id {
            "POLYGON" => Ok(System::qubits(sites.len())),
            "BASIC" => Ok(System::tensor(&sites.iter().map(Vec::len).collect::<Vec<_>>(), true)),
            "PAULI" | "TWO_PARTICLE_PURE" => {
                let l = single()?;
                let n = round_count(l.iter().sum(), l.len(), self.id)?;
                Ok(System::fermion(l.len(), n, spectra.global.is_some()))
            }
            _ => Err(Error::Internal(format!("no system rule for {}", self.id))),
        }
    }

    /// Records of this family on `system`, in the family's own order.
    pub fn records(&self, system: &System) -> Result<Vec<InequalityRecord>> {
        if self.completeness == MetadataOnly {
            return Err(Error::Unsupported(format!("{} is recorded by count only", self.id)));
        }
        if !self.applies_to(system) {
            return Err(Error::NotApplicable { family: self.id.into(), reason: format!("system {system}") });
        }
        Ok(match (self.id, system) {
            ("POLYGON", System::Tensor { dims, .. }) => families::polygon(dims.len()),
            ("BASIC", System::Tensor { dims, .. }) => families::basic(dims),
            ("PAULI", System::Fermion { r, .. }) => families::pauli(*r),
            ("TWO_PARTICLE_PURE", System::Fermion { r, n, .. }) => families::two_particle(*r, *n),
            ("BRAVYI_2Q", _) => families::bravyi(),
            ("FRANZ_3QUTRIT", _) => families::franz(),
            ("THREE_QUBIT_MIXED", _) => families::three_qubit_mixed(),
            ("BD6", _) => families::bd6(),
            ("F7_BD", _) => families::f7_bd(),
            ("F7_LIST", _) => families::f7_list(),
            ("F8_31", _) => families::f8_31(),
            ("F84_14", _) => families::f84_14(),
            ("F84_ABS", _) => families::f84_abs(),
            ("W2H4_MIXED", _) => families::w2h4_mixed(),
            ("CHSH_16", _) => families::chsh(),
            _ => return Err(Error::Internal(format!("no records for {}", self.id))),
        })
    }
}

/// Local spectra, one per site, and the global spectrum for mixed systems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectra {
    pub sites: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global: Option<Vec<f64>>,
}

impl Spectra {
    pub fn pure(sites: Vec<Vec<f64>>) -> Self {
        Self { sites, global: None }
    }

    pub fn mixed(sites: Vec<Vec<f64>>, global: Vec<f64>) -> Self {
        Self { sites, global: Some(global) }
    }

    /// A single local spectrum, as for fermions.
    pub fn single(values: Vec<f64>) -> Self {
        Self::pure(vec![values])
    }
}

/// Outcome of evaluating one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub family: String,
    pub satisfied: bool,
    pub worst_slack: f64,
    /// Indices of violated records, in the family's record order.
    pub violated: Vec<usize>,
    pub records: usize,
    /// Changes made to the input before evaluation.
    pub transformations: Vec<String>,
}

fn evaluate(id: &str, records: &[InequalityRecord], s: &Spectra, tol: f64, transformations: Vec<String>) -> CheckReport {
    let mut worst = f64::INFINITY;
    let mut violated = Vec::new();
    for (k, r) in records.iter().enumerate() {
        let slack = r.slack(&s.sites, s.global.as_deref());
        let slack = match r.relation {
            Relation::Le => slack,
            Relation::Eq => -slack.abs(),
        };
        worst = worst.min(slack);
        if slack < -tol {
            violated.push(k);
        }
    }
    CheckReport {
        family: id.to_string(),
        satisfied: violated.is_empty(),
        worst_slack: worst,
        violated,
        records: records.len(),
        transformations,
    }
}

fn validate_shape(id: &str, system: &System, s: &Spectra) -> Result<()> {
    let ranks = system.site_ranks();
    let shape: Vec<usize> = s.sites.iter().map(Vec::len).collect();
    if shape != ranks {
        return Err(Error::DimensionMismatch(format!("{id} expects local ranks {ranks:?}, got {shape:?}")));
    }
    let global = s.global.as_ref().map(Vec::len);
    if global != system.global_rank() {
        return Err(Error::DimensionMismatch(format!(
            "{id} expects global rank {:?}, got {global:?}",
            system.global_rank()
        )));
    }
    if s.sites.iter().flatten().chain(s.global.iter().flatten()).any(|x| !x.is_finite()) {
        return Err(Error::InvalidSpectrum("non-finite entry".into()));
    }
    Ok(())
}

fn rescale(v: &mut [f64], target: f64, what: &str, log: &mut Vec<String>) -> Result<()> {
    let sum: f64 = v.iter().sum();
    if sum <= 0.0 {
        return Err(Error::InvalidSpectrum(format!("{what} has nonpositive trace {sum}")));
    }
    if (sum - target).abs() > 1e-12 {
        v.iter_mut().for_each(|x| *x *= target / sum);
        log.push(format!("{what} rescaled from trace {sum} to {target}"));
    }
    Ok(())
}

fn sort_into(v: &mut [f64], decreasing: bool, what: &str, log: &mut Vec<String>) {
    let sorted = v.windows(2).all(|w| if decreasing { w[0] >= w[1] } else { w[0] <= w[1] });
    if !sorted {
        if decreasing {
            v.sort_by(|a, b| b.total_cmp(a));
        } else {
            v.sort_by(f64::total_cmp);
        }
        log.push(format!("{what} sorted {}", if decreasing { "nonincreasing" } else { "nondecreasing" }));
    }
}

/// Brings spectra into the family's convention.
pub fn canonicalize(f: &Family, system: &System, s: &Spectra) -> Result<(Spectra, Vec<String>)> {
    validate_shape(f.id, system, s)?;
    let mut out = s.clone();
    let mut log = Vec::new();
    if f.normalization == Correlators {
        if let Some(x) = out.sites[0].iter().find(|x| x.abs() > 1.0) {
            return Err(Error::OutOfRange(format!("correlation {x} outside [-1, 1]")));
        }
        return Ok((out, log));
    }
    let local_trace = match (f.normalization, system) {
        (ParticleNumber, System::Fermion { n, .. }) => *n as f64,
        _ => 1.0,
    };
    let many = out.sites.len() > 1;
    for (k, v) in out.sites.iter_mut().enumerate() {
        let what = if many { format!("site {}", k + 1) } else { "spectrum".to_string() };
        sort_into(v, f.order != Increasing, &what, &mut log);
        rescale(v, local_trace, &what, &mut log)?;
    }
    if let Some(g) = out.global.as_mut() {
        sort_into(g, f.order != Increasing, "global spectrum", &mut log);
        rescale(g, 1.0, "global spectrum", &mut log)?;
    }
    if f.order == SitesByGap {
        let mut idx: Vec<usize> = (0..out.sites.len()).collect();
        let gap = |v: &Vec<f64>| v[0] - v[1];
        idx.sort_by(|&a, &b| gap(&out.sites[a]).total_cmp(&gap(&out.sites[b])));
        if idx.iter().enumerate().any(|(k, &i)| k != i) {
            out.sites = idx.iter().map(|&i| out.sites[i].clone()).collect();
            let shown: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            log.push(format!("sites reordered by increasing gap: {shown:?}"));
        }
    }
    Ok((out, log))
}

/// Evaluates family `id` on spectra of the system it infers from their shape.
pub fn check_family(id: &str, spectra: &Spectra, tol: f64) -> Result<CheckReport> {
    let f = family(id)?;
    if f.completeness == MetadataOnly {
        return Err(Error::Unsupported(format!("{id} is recorded by count only")));
    }
    check_family_on(id, &f.infer_system(spectra)?, spectra, tol)
}

/// Evaluates family `id` on spectra of `system`.
pub fn check_family_on(id: &str, system: &System, spectra: &Spectra, tol: f64) -> Result<CheckReport> {
    let f = family(id)?;
    let records = f.records(system)?;
    let (s, log) = canonicalize(f, system, spectra)?;
    Ok(evaluate(id, &records, &s, tol, log))
}

/// Rewrites records on `λ` as records on `μ` with `λ_i = 1 − μ_{r+1−i}`.
pub fn dual_records(records: &[InequalityRecord]) -> Vec<InequalityRecord> {
    records
        .iter()
        .map(|r| {
            let c = &r.lhs[0];
            let mut d = r.clone();
            d.lhs = vec![c.iter().rev().map(|x| -x).collect()];
            d.bound = r.bound - c.iter().sum::<i64>();
            d
        })
        .collect()
}

/// Evaluates a pure fermionic family of `∧ⁿC^r` on the hole spectrum `μ` of `∧^{r−n}C^r`.
pub fn check_family_dual(id: &str, system: &System, mu: &[f64], tol: f64) -> Result<CheckReport> {
    let f = family(id)?;
    let (r, n) = match system {
        System::Fermion { r, n, mixed: false } => (*r, *n),
        _ => {
            return Err(Error::NotApplicable {
                family: id.into(),
                reason: "particle-hole duality needs a pure fermionic system".into(),
            })
        }
    };
    let records = dual_records(&f.records(system)?);
    let dual_system = System::fermion(r, r - n, false);
    let (s, log) = canonicalize(f, &dual_system, &Spectra::single(mu.to_vec()))?;
    Ok(evaluate(id, &records, &s, tol, log))
}

/// All sixteen CHSH-type constraints on `(⟨a₁b₁⟩, ⟨a₁b₂⟩, ⟨a₂b₁⟩, ⟨a₂b₂⟩)`.
pub fn check_chsh(correlations: [f64; 4], tol: f64) -> Result<CheckReport> {
    check_family("CHSH_16", &Spectra::single(correlations.to_vec()), tol)
}

/// Result of comparing two families on common samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub family_a: String,
    pub family_b: String,
    pub system: System,
    pub samples: usize,
    pub disagreements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Spectra>,
}

/// Shifts `u` by a common constant and clamps into `[0, 1]` so the sum is `n`.
fn box_project(u: &[f64], n: f64) -> Vec<f64> {
    let total = |t: f64| u.iter().map(|x| (x + t).clamp(0.0, 1.0)).sum::<f64>();
    let (mut lo, mut hi) = (-2.0, 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) < n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let mut v: Vec<f64> = u.iter().map(|x| (x + t).clamp(0.0, 1.0)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub(crate) fn simplex_point(len: usize, g: &mut Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len).map(|_| Exp1.sample(g)).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn jitter(v: &[f64], scale: f64, g: &mut Rng) -> Vec<f64> {
    v.iter().map(|x| x + scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, g)).collect()
}

fn clamp_simplex(v: Vec<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = v.into_iter().map(|x| x.max(0.0)).collect();
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// A sorted, normalized spectra bundle for `system`.
///
/// With `near_states` the point is the spectrum of a sampled state, slightly
/// perturbed; otherwise it is spread over the normalized sorted region
/// (for fermions, the Pauli region).
pub fn sample_spectra(system: &System, near_states: bool, g: &mut Rng) -> Result<Spectra> {
    const JITTER: f64 = 1e-3;
    Ok(match system {
        System::Fermion { r, n, mixed } => {
            let (r, n) = (*r, *n);
            let site = if near_states {
                let psi = haar_fermion_with(r, n, g)?;
                let lam = one_rdm(&psi).spectrum()?.into_values();
                box_project(&jitter(&lam, JITTER, g), n as f64)
            } else {
                let u: Vec<f64> = (0..r).map(|_| g.random::<f64>()).collect();
                box_project(&u, n as f64)
            };
            let global = mixed.then(|| simplex_point(num_integer::binomial(r, n), g));
            Spectra { sites: vec![site], global }
        }
        System::Tensor { dims, mixed } => {
            if near_states {
                let total: usize = dims.iter().product();
                let (rho_sites, global) = if *mixed {
                    let nu = simplex_point(total, g);
                    let rho = random_mixed_with_spectrum_with(&Spectrum::new(nu.clone(), 1.0)?, dims, g)?;
                    let sites = (0..dims.len())
                        .map(|k| Ok(rho.partial_trace(&[k])?.spectrum()?.into_values()))
                        .collect::<Result<Vec<_>>>()?;
                    (sites, Some(clamp_simplex(jitter(&nu, JITTER, g))))
                } else {
                    let psi = haar_pure_with(dims, g)?;
                    let sites = psi.site_spectra()?.into_iter().map(Spectrum::into_values).collect();
                    (sites, None)
                };
                let sites = rho_sites.iter().map(|v| clamp_simplex(jitter(v, JITTER, g))).collect();
                Spectra { sites, global }
            } else {
                let sites = dims.iter().map(|&d| simplex_point(d, g)).collect();
                let global = mixed.then(|| simplex_point(dims.iter().product(), g));
                Spectra { sites, global }
            }
        }
        System::Correlations => Spectra::single((0..4).map(|_| g.random_range(-1.0..=1.0)).collect()),
    })
}

/// Compares two families on `samples` shared points of their common system.
pub fn check_equivalence(a: &str, b: &str, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let (fa, fb) = (family(a)?, family(b)?);
    let system = fa.system().or_else(|| fb.system()).ok_or_else(|| {
        Error::NotApplicable { family: format!("{a}, {b}"), reason: "no fixed system; use check_equivalence_on".into() }
    })?;
    check_equivalence_on(a, b, &system, samples, seed)
}

/// As [`check_equivalence`] on an explicit system. Sample `k` uses stream `k` of `seed`.
pub fn check_equivalence_on(a: &str, b: &str, system: &System, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let (fa, fb) = (family(a)?, family(b)?);
    for f in [fa, fb] {
        if !f.applies_to(system) {
            return Err(Error::NotApplicable { family: f.id.into(), reason: format!("incompatible system {system}") });
        }
    }
    let (ra, rb) = (fa.records(system)?, fb.records(system)?);
    let results: Vec<Option<Spectra>> = (0..samples)
        .into_par_iter()
        .map(|k| -> Result<Option<Spectra>> {
            let mut g = stream(seed, k as u64);
            let s = sample_spectra(system, k % 2 == 1, &mut g)?;
            let (sa, la) = canonicalize(fa, system, &s)?;
            let (sb, lb) = canonicalize(fb, system, &s)?;
            let ea = evaluate(a, &ra, &sa, 1e-10, la).satisfied;
            let eb = evaluate(b, &rb, &sb, 1e-10, lb).satisfied;
            Ok((ea != eb).then_some(s))
        })
        .collect::<Result<_>>()?;
    let disagreements = results.iter().filter(|r| r.is_some()).count();
    Ok(EquivalenceReport {
        family_a: a.into(),
        family_b: b.into(),
        system: system.clone(),
        samples,
        disagreements,
        first_disagreement: results.into_iter().flatten().next(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declared_counts() {
        for f in registry() {
            if let (Some(n), Some(s)) = (f.count, f.system()) {
                if f.completeness != MetadataOnly {
                    assert_eq!(f.records(&s).unwrap().len(), n, "{}", f.id);
                }
            }
        }
    }

    #[test]
    fn box_projection_hits_trace() {
        let v = box_project(&[0.9, 0.1, 0.5, 0.7], 2.0);
        assert!((v.iter().sum::<f64>() - 2.0).abs() < 1e-12);
        assert!(v.windows(2).all(|w| w[0] >= w[1]));
    }
}
