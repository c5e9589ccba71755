//! Irreducible components of `Sᵐ(∧ⁿCʳ)` and the normalized diagrams they
//! contribute as one-particle spectra.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{applicable_families, family, InequalityRecord, Relation};
use crate::chamber::{convex_hull, Hull, DEFAULT_HULL_DIM};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::schubert::n_subsets;
use crate::young::{partitions_in_box, YoungDiagram};
use crate::System;

/// Largest number of basis vectors `C(r, n)` of `∧ⁿCʳ`.
pub const MAX_BASIS: u64 = 70;
/// Largest symmetric power.
pub const MAX_POWER: u32 = 4;

pub type Weight = Vec<u32>;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k.min(n.saturating_sub(k))).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_caps(r: usize, n: usize, m: u32) -> Result<()> {
    if n == 0 || n > r {
        return Err(Error::InvalidFermionSystem(format!("cannot place {n} particles in {r} orbitals")));
    }
    if m == 0 {
        return Err(Error::OutOfRange("symmetric power must be at least 1".into()));
    }
    let basis = binomial(r as u64, n as u64);
    if basis > MAX_BASIS || m > MAX_POWER {
        return Err(Error::Unsupported(format!(
            "S^{m}(∧^{n}C^{r}) exceeds the caps C(r,n) ≤ {MAX_BASIS}, m ≤ {MAX_POWER}"
        )));
    }
    Ok(())
}

/// `dim Sᵐ(∧ⁿCʳ) = C(C(r,n)+m−1, m)`.
pub fn symmetric_power_dimension(r: usize, n: usize, m: u32) -> u64 {
    let b = binomial(r as u64, n as u64);
    binomial(b + u64::from(m) - 1, u64::from(m))
}

/// Weyl dimension of the `GL(r)` irreducible with highest weight `lambda`.
pub fn gl_dimension(lambda: &YoungDiagram, r: usize) -> u128 {
    if lambda.len() > r {
        return 0;
    }
    let l = lambda.padded(r);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..r {
        for j in i + 1..r {
            num *= (l[i] - l[j]) as usize + j - i;
            den *= j - i;
        }
    }
    (num / den).to_u128().unwrap_or(u128::MAX)
}

type States = HashMap<(u32, Weight), u64>;

fn extend(mut states: States, subsets: &[Weight]) -> States {
    for s in subsets {
        let mut next: States = HashMap::with_capacity(states.len());
        for ((budget, w), c) in states.drain() {
            for k in 0..=budget {
                let w2: Weight = w.iter().zip(s).map(|(a, b)| a + k * b).collect();
                *next.entry((budget - k, w2)).or_default() += c;
            }
        }
        states = next;
    }
    states
}

/// Weights of `Sᵐ(∧ⁿCʳ)`: the number of size-`m` multisets of `n`-subsets
/// of `{1..r}` with each total content.
pub fn weight_multiplicities(r: usize, n: usize, m: u32) -> Result<BTreeMap<Weight, u64>> {
    check_caps(r, n, m)?;
    let subsets: Vec<Weight> = n_subsets(r, n)
        .iter()
        .map(|s| (1..=r).map(|i| u32::from(s.contains(&i))).collect())
        .collect();
    let (first, rest) = subsets.split_first().expect("n ≤ r gives at least one subset");
    let parts: Vec<States> = (0..=m)
        .into_par_iter()
        .map(|k| {
            let start = HashMap::from([((m - k, first.iter().map(|x| k * x).collect()), 1)]);
            extend(start, rest)
        })
        .collect();
    let mut out = BTreeMap::new();
    for part in parts {
        for ((budget, w), c) in part {
            if budget == 0 {
                *out.entry(w).or_default() += c;
            }
        }
    }
    Ok(out)
}

#[derive(Default)]
struct KostkaTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), u64>,
}

impl KostkaTable {
    /// Semistandard tableaux of shape `lambda` filled with the first `k` letters of `mu`.
    fn count(&mut self, lambda: &[u32], mu: &[u32], k: usize) -> u64 {
        if k == 0 {
            return u64::from(lambda.iter().all(|&x| x == 0));
        }
        let key = (lambda.to_vec(), mu[..k].to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // remove a horizontal strip of size mu[k-1]
        let mut total = 0;
        let mut nu = lambda.to_vec();
        self.strips(lambda, mu, k, 0, mu[k - 1], &mut nu, &mut total);
        self.memo.insert(key, total);
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn strips(&mut self, lambda: &[u32], mu: &[u32], k: usize, i: usize, left: u32, nu: &mut Vec<u32>, total: &mut u64) {
        if i == lambda.len() {
            if left == 0 {
                let nu2 = nu.clone();
                *total += self.count(&nu2, mu, k - 1);
            }
            return;
        }
        let floor = lambda.get(i + 1).copied().unwrap_or(0);
        for take in 0..=(lambda[i] - floor).min(left) {
            nu[i] = lambda[i] - take;
            self.strips(lambda, mu, k, i + 1, left - take, nu, total);
        }
        nu[i] = lambda[i];
    }
}

/// Kostka number `K_{λμ}`: semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &YoungDiagram, mu: &[u32]) -> Result<u64> {
    let size: u32 = mu.iter().sum();
    if size != lambda.size() {
        return Err(Error::SizeMismatch(u64::from(lambda.size()), u64::from(size)));
    }
    Ok(KostkaTable::default().count(lambda.rows(), mu, mu.len()))
}

/// `Sᵐ(∧ⁿCʳ) = ⊕ m_λ H_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlethysmDecomposition {
    pub r: usize,
    pub n: usize,
    pub m: u32,
    pub components: BTreeMap<YoungDiagram, u64>,
}

impl PlethysmDecomposition {
    /// `Σ m_λ dim H_λ`.
    pub fn dimension(&self) -> u128 {
        self.components.iter().map(|(l, &c)| u128::from(c) * gl_dimension(l, self.r)).sum()
    }

    /// True iff every component equals its complement in the `r × m` rectangle.
    pub fn is_self_dual(&self) -> bool {
        self.components.keys().all(|l| l.complement(self.r, self.m).as_ref() == Ok(l))
    }
}

/// Irreducible decomposition by triangular elimination of the dominant
/// weight counts against Kostka numbers.
pub fn decompose(r: usize, n: usize, m: u32) -> Result<PlethysmDecomposition> {
    let weights = weight_multiplicities(r, n, m)?;
    let mut table = KostkaTable::default();
    let mut components = BTreeMap::new();
    // lexicographically decreasing extends dominance
    for lambda in partitions_in_box(n as u32 * m, r, m) {
        let padded = lambda.padded(r);
        let mut mult = weights.get(&padded).copied().unwrap_or(0) as i128;
        for (kappa, &c) in &components {
            let kappa: &YoungDiagram = kappa;
            if kappa.dominates(&lambda) {
                mult -= i128::from(c) * i128::from(table.count(&kappa.padded(r), &padded, r));
            }
        }
        if mult < 0 {
            return Err(Error::Internal(format!("negative multiplicity {mult} for {lambda}")));
        }
        if mult > 0 {
            components.insert(lambda, mult as u64);
        }
    }
    let d = PlethysmDecomposition { r, n, m, components };
    let expected = u128::from(symmetric_power_dimension(r, n, m));
    if d.dimension() != expected {
        return Err(Error::Internal(format!("dimension {} differs from {expected}", d.dimension())));
    }
    Ok(d)
}

/// True iff every component of `Sᵐ(∧ⁿCʳ)` is self-dual.
pub fn selfdual_check(r: usize, n: usize, m: u32) -> Result<bool> {
    Ok(decompose(r, n, m)?.is_self_dual())
}

/// Distinct normalized diagrams `λ/m` over `m = 1..=max_m`, each of trace `n`.
pub fn occurring_spectra(r: usize, n: usize, max_m: u32) -> Result<Vec<Vec<Rational>>> {
    let mut out = BTreeSet::new();
    for m in 1..=max_m {
        for lambda in decompose(r, n, m)?.components.keys() {
            let m = i128::from(m);
            out.insert(lambda.padded(r).iter().map(|&x| Rational::new(i128::from(x), m)).collect::<Vec<_>>());
        }
    }
    Ok(out.into_iter().collect())
}

/// A hull facet that coincides with a catalogued inequality on the hull's affine span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetMatch {
    pub facet: usize,
    pub family: String,
    pub record: usize,
    pub inequality: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerApproximation {
    pub r: usize,
    pub n: usize,
    pub max_m: u32,
    pub points: Vec<Vec<Rational>>,
    pub hull: Hull,
    pub matches: Vec<FacetMatch>,
}

fn record_slack(rec: &InequalityRecord, x: &[Rational]) -> Rational {
    let lhs: Rational = rec.lhs[0].iter().zip(x).map(|(&c, v)| v * i128::from(c)).sum();
    Rational::from(i128::from(rec.bound)) - lhs
}

fn tight_set(points: &[Vec<Rational>], slack: impl Fn(&[Rational]) -> Rational) -> Option<Vec<usize>> {
    let mut tight = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let s = slack(p);
        if s < Rational::from(0) {
            return None;
        }
        if s == Rational::from(0) {
            tight.push(i);
        }
    }
    Some(tight)
}

/// Convex hull of the occurring spectra up to `max_m`, with each facet
/// matched against the catalogued inequalities for pure `∧ⁿCʳ`.
pub fn inner_approximation(r: usize, n: usize, max_m: u32) -> Result<InnerApproximation> {
    let points = occurring_spectra(r, n, max_m)?;
    let hull = convex_hull(&points, DEFAULT_HULL_DIM)?;
    let system = System::fermion(r, n, false);
    let mut catalogue = Vec::new();
    for id in applicable_families(&system) {
        for (i, rec) in family(id)?.records(&system)?.into_iter().enumerate() {
            if rec.relation == Relation::Le && rec.lhs.len() == 1 && rec.rhs.is_empty() {
                if let Some(tight) = tight_set(&points, |x| record_slack(&rec, x)) {
                    if tight.len() < points.len() {
                        catalogue.push((id, i, rec, tight));
                    }
                }
            }
        }
    }
    let mut matches = Vec::new();
    for (k, facet) in hull.facets.iter().enumerate() {
        let want = tight_set(&points, |x| facet.slack(x));
        for (id, i, rec, tight) in &catalogue {
            if want.as_ref() == Some(tight) {
                matches.push(FacetMatch { facet: k, family: id.to_string(), record: *i, inequality: rec.to_string() });
            }
        }
    }
    Ok(InnerApproximation { r, n, max_m, points, hull, matches })
}
