//! Inequalities from nonzero coefficients, and the qubit-array rule.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    coeff_multi, n_subsets, schubert_poly, subset_order, sum_order_multi, IntPolynomial, Permutation, Substitution,
    TestSpectrum,
};
use crate::catalog::{InequalityRecord, Origin};
use crate::error::{Error, Result};
use crate::exact::{clear_denominators, Rational};

/// Which nonzero coefficients produce an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientFilter {
    #[default]
    One,
    Odd,
    Nonzero,
}

impl CoefficientFilter {
    pub fn accepts(self, c: i64) -> bool {
        match self {
            CoefficientFilter::One => c == 1,
            CoefficientFilter::Odd => c % 2 != 0,
            CoefficientFilter::Nonzero => c != 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationOptions {
    /// Largest `ℓ(w)` enumerated.
    pub max_length: usize,
    pub filter: CoefficientFilter,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        Self { max_length: 6, filter: CoefficientFilter::One }
    }
}

/// Variants produced by [`generate_qubit_array`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QubitModification {
    /// The basic inequality only.
    None,
    /// Basic plus every single modification.
    All,
    /// As `All`, then drops records implied by another with the same right side
    /// on the domain `0 ≤ Δ₁ ≤ ⋯ ≤ Δ_n`.
    #[default]
    Pruned,
}

fn to_i64(v: &[i128]) -> Result<Vec<i64>> {
    v.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect()
}

/// Scales `blocks` jointly to primitive integers.
fn integer_blocks(blocks: &[Vec<Rational>]) -> Result<Vec<Vec<i64>>> {
    let flat: Vec<Rational> = blocks.iter().flatten().copied().collect();
    let ints = to_i64(&clear_denominators(&flat)?)?;
    let mut out = Vec::with_capacity(blocks.len());
    let mut at = 0;
    for b in blocks {
        out.push(ints[at..at + b.len()].to_vec());
        at += b.len();
    }
    Ok(out)
}

fn check_order(sums: &[Rational], what: &str) -> Result<()> {
    if sums.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpectrum(format!("{what} order does not list sums in nonincreasing order")));
    }
    Ok(())
}

/// Validates a tuple order against the tests and returns the sums along it.
fn tuple_sums(tests: &[TestSpectrum], order: &[Vec<usize>]) -> Result<Vec<Rational>> {
    let total: usize = tests.iter().map(TestSpectrum::len).product();
    let mut seen = std::collections::HashSet::new();
    let mut sums = Vec::with_capacity(order.len());
    for t in order {
        if t.len() != tests.len() || t.iter().zip(tests).any(|(&i, a)| i == 0 || i > a.len()) || !seen.insert(t) {
            return Err(Error::DimensionMismatch(format!("{t:?} is not a fresh index tuple")));
        }
        sums.push(t.iter().zip(tests).map(|(&i, a)| a.values()[i - 1]).sum());
    }
    if order.len() != total {
        return Err(Error::DimensionMismatch(format!("order has {} tuples, expected {total}", order.len())));
    }
    check_order(&sums, "tuple")?;
    Ok(sums)
}

fn subset_sums(a: &TestSpectrum, n: usize, order: &[Vec<usize>]) -> Result<Vec<Rational>> {
    let mut expected = n_subsets(a.len(), n);
    let mut given: Vec<Vec<usize>> = order.to_vec();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(Error::DimensionMismatch(format!("order is not a listing of the {n}-subsets")));
    }
    let sums: Vec<Rational> = order.iter().map(|s| s.iter().map(|&i| a.values()[i - 1]).sum()).collect();
    check_order(&sums, "subset")?;
    Ok(sums)
}

fn placed(values: &[Rational], perm: &Permutation) -> Vec<Rational> {
    let mut out = vec![Rational::default(); values.len()];
    for (i, &x) in values.iter().enumerate() {
        out[perm.at(i + 1) - 1] = x;
    }
    out
}

fn record(
    family: &str,
    tests: &[TestSpectrum],
    perms: &[Permutation],
    w: &Permutation,
    sums: &[Rational],
    c: i64,
) -> Result<InequalityRecord> {
    let mut blocks: Vec<Vec<Rational>> = tests.iter().zip(perms).map(|(a, u)| placed(a.values(), u)).collect();
    blocks.push(placed(sums, w));
    let mut ints = integer_blocks(&blocks)?;
    let rhs = ints.pop().expect("rhs block");
    let origin = Origin {
        tests: tests.iter().map(|a| to_i64(&clear_denominators(a.values())?)).collect::<Result<_>>()?,
        perms: perms.to_vec(),
        w: w.clone(),
        coefficient: c,
    };
    let mut rec = InequalityRecord::le(family, ints, rhs, 0);
    rec.origin = Some(origin);
    Ok(rec)
}

/// `Σ_s Σ_i a⁽ˢ⁾_i λ⁽ˢ⁾_{u_s(i)} ≤ Σ_k (a⁽¹⁾+⋯)_k ν_{w(k)}`.
///
/// `order` lists index tuples by decreasing sum; when absent it is computed
/// from the tests, which must then avoid cubicle walls.
pub fn generate_inequality(
    tests: &[TestSpectrum],
    perms: &[Permutation],
    w: &Permutation,
    order: Option<&[Vec<usize>]>,
) -> Result<InequalityRecord> {
    let computed;
    let order = match order {
        Some(o) => o,
        None => {
            computed = sum_order_multi(tests)?;
            &computed
        }
    };
    let sums = tuple_sums(tests, order)?;
    let dims: Vec<usize> = tests.iter().map(TestSpectrum::len).collect();
    let c = coeff_multi(perms, w, &Substitution::from_tuples(&dims, order))?;
    if c == 0 {
        return Err(Error::ZeroCoefficient);
    }
    record("GENERATED", tests, perms, w, &sums, c)
}

/// `Σ_i a_i λ_{v(i)} ≤ Σ_j (∧ⁿa)_j ν_{w(j)}` for `n` fermions.
pub fn generate_fermi_inequality(
    a: &TestSpectrum,
    n: usize,
    v: &Permutation,
    w: &Permutation,
    order: Option<&[Vec<usize>]>,
) -> Result<InequalityRecord> {
    let computed;
    let order = match order {
        Some(o) => o,
        None => {
            computed = subset_order(a, n)?;
            &computed
        }
    };
    let sums = subset_sums(a, n, order)?;
    let c = coeff_multi(std::slice::from_ref(v), w, &Substitution::from_subsets(a.len(), order))?;
    if c == 0 {
        return Err(Error::ZeroCoefficient);
    }
    record("GENERATED_FERMI", std::slice::from_ref(a), std::slice::from_ref(v), w, &sums, c)
}

fn perm_tuples(dims: &[usize]) -> Vec<Vec<Permutation>> {
    let mut out = vec![vec![]];
    for &d in dims {
        let all = Permutation::all(d);
        out = out
            .into_iter()
            .flat_map(|t: Vec<Permutation>| {
                all.iter().map(move |u| {
                    let mut t = t.clone();
                    t.push(u.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every inequality from one test point: all `(u_s, w)` with
/// `ℓ(w) = Σ ℓ(u_s) ≤ max_length` whose coefficient passes the filter.
///
/// `order` is the tuple order of a cubicle adjacent to the point; the point
/// itself may lie on walls.
fn enumerate(
    family: &str,
    tests: &[TestSpectrum],
    subst: &Substitution,
    sums: &[Rational],
    opts: GenerationOptions,
) -> Result<Vec<InequalityRecord>> {
    let mut by_length: BTreeMap<usize, Vec<Vec<Permutation>>> = BTreeMap::new();
    for t in perm_tuples(&subst.dims) {
        let l = t.iter().map(Permutation::length).sum();
        if l <= opts.max_length {
            by_length.entry(l).or_default().push(t);
        }
    }
    let ws: Vec<Permutation> = Permutation::all(subst.terms.len())
        .into_iter()
        .filter(|w| by_length.contains_key(&w.length()))
        .collect();
    let total: usize = subst.dims.iter().sum();
    let offsets: Vec<usize> = subst.dims.iter().scan(0, |acc, &d| Some(std::mem::replace(acc, *acc + d))).collect();
    let images: Vec<IntPolynomial> = subst
        .terms
        .iter()
        .map(|t| t.iter().fold(IntPolynomial::zero(total), |acc, &(s, i)| &acc + &IntPolynomial::x(total, offsets[s] + i)))
        .collect();
    let found: Vec<Result<Vec<InequalityRecord>>> = ws
        .par_iter()
        .map(|w| {
            let p = schubert_poly(w).substitute(&images)?;
            let mut out = Vec::new();
            for us in &by_length[&w.length()] {
                let q = us.iter().zip(&offsets).fold(p.clone(), |q, (u, &o)| q.divided_differences(&u.minimal_word(), o));
                let c = q.as_constant().ok_or_else(|| Error::Internal(format!("non-constant residue {q}")))?;
                let c = i64::try_from(c).map_err(|_| Error::Overflow)?;
                if opts.filter.accepts(c) {
                    out.push(record(family, tests, us, w, sums, c)?);
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for f in found {
        for r in f? {
            if !out.iter().any(|o: &InequalityRecord| o.same_constraint(&r)) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// All inequalities of a tensor system generated at one test point.
pub fn edge_generation(
    tests: &[TestSpectrum],
    order: &[Vec<usize>],
    opts: GenerationOptions,
) -> Result<Vec<InequalityRecord>> {
    let sums = tuple_sums(tests, order)?;
    let dims: Vec<usize> = tests.iter().map(TestSpectrum::len).collect();
    enumerate("GENERATED", tests, &Substitution::from_tuples(&dims, order), &sums, opts)
}

/// All inequalities of `∧ⁿ C^r` generated at one test point.
pub fn fermi_edge_generation(
    a: &TestSpectrum,
    n: usize,
    order: &[Vec<usize>],
    opts: GenerationOptions,
) -> Result<Vec<InequalityRecord>> {
    let sums = subset_sums(a, n, order)?;
    enumerate("GENERATED_FERMI", std::slice::from_ref(a), &Substitution::from_subsets(a.len(), order), &sums, opts)
}

/// `Σ aᵢ(λ⁽ⁱ⁾₁ − λ⁽ⁱ⁾₂) ≤ Σ_k (±a₁ ± ⋯ ± a_n)_k ν_k`, with `aᵢ ≥ 0`.
pub fn basic_qubit_inequality(a: &[Rational]) -> Result<InequalityRecord> {
    if a.iter().any(|x| *x < Rational::default()) {
        return Err(Error::InvalidSpectrum("qubit test values must be nonnegative".into()));
    }
    let tests: Vec<TestSpectrum> = a.iter().map(|&x| TestSpectrum::qubit(x)).collect::<Result<_>>()?;
    let sums = super::combined_sums(&tests);
    let id = Permutation::identity(2);
    let perms = vec![id; a.len()];
    let mut rec = record("QUBIT_ARRAY", &tests, &perms, &Permutation::identity(sums.len()), &sums, 1)?;
    rec.note = "basic".into();
    Ok(rec)
}

/// The basic qubit inequality and its modifications: for odd `k` with
/// distinct right-side coefficients at `k, k+1`, swap `ν_k ↔ ν_{k+1}` and flip
/// the sign of one nonzero `aᵢ` on the left.
pub fn generate_qubit_array(a: &[Rational], mode: QubitModification) -> Result<Vec<InequalityRecord>> {
    let basic = basic_qubit_inequality(a)?;
    let mut out = vec![basic.clone()];
    if mode == QubitModification::None {
        return Ok(out);
    }
    let len = basic.rhs.len();
    for k in (0..len - 1).step_by(2) {
        if basic.rhs[k] == basic.rhs[k + 1] {
            continue;
        }
        for site in 0..a.len() {
            if basic.lhs[site][0] == 0 {
                continue;
            }
            let mut rec = basic.clone();
            rec.lhs[site].iter_mut().for_each(|c| *c = -*c);
            rec.rhs.swap(k, k + 1);
            rec.note = format!("swap n{} <-> n{}, flip site {}", k + 1, k + 2, site + 1);
            if !out.iter().any(|o| o.same_constraint(&rec)) {
                out.push(rec);
            }
        }
    }
    if mode == QubitModification::Pruned {
        let gap = |r: &InequalityRecord| -> Vec<i64> { r.lhs.iter().map(|c| c[0]).collect() };
        // Δ-coefficient difference is nonnegative on every generator (0,…,0,1,…,1)
        let dominates = |b: &InequalityRecord, c: &InequalityRecord| {
            let (gb, gc) = (gap(b), gap(c));
            (0..gb.len()).all(|j| (j..gb.len()).map(|i| gb[i] - gc[i]).sum::<i64>() >= 0)
        };
        let keep: Vec<bool> = out
            .iter()
            .map(|r| !out.iter().any(|o| !o.same_constraint(r) && o.rhs == r.rhs && dominates(o, r)))
            .collect();
        out = out.into_iter().zip(keep).filter_map(|(r, k)| k.then_some(r)).collect();
    }
    Ok(out)
}
