//! Schubert calculus over the integers.
//!
//! Permutations act on `{1..n}`, divided differences `∂_i` act on variables
//! `x_i, x_{i+1}`, and the coefficient of an inequality is obtained by
//! substituting sums of site variables into a Schubert polynomial and
//! applying the divided-difference chains of the site permutations.

mod generate;
mod perm;
mod poly;

pub use generate::{
    basic_qubit_inequality, edge_generation, fermi_edge_generation, generate_fermi_inequality, generate_inequality, generate_qubit_array,
    CoefficientFilter, GenerationOptions, QubitModification,
};
pub use perm::Permutation;
pub use poly::{IntPolynomial, Monomial};

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// `x₁^{n−1} x₂^{n−2} ⋯ x_{n−1}`.
pub fn staircase(n: usize) -> IntPolynomial {
    let exps: Monomial = (0..n).map(|k| (n - 1 - k) as u16).collect();
    IntPolynomial::monomial(exps, 1)
}

/// The Schubert polynomial `S_w` in variables `x₁ … x_n`.
pub fn schubert_poly(w: &Permutation) -> IntPolynomial {
    let mut memo = HashMap::new();
    transition(w, &mut memo)
}

/// Lascoux–Schützenberger transition recursion.
fn transition(w: &Permutation, memo: &mut HashMap<Permutation, IntPolynomial>) -> IntPolynomial {
    let n = w.n();
    if w.is_identity() {
        return IntPolynomial::one(n);
    }
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let r = (1..n).rev().find(|&i| w.has_descent(i)).expect("non-identity has a descent");
    let s = (r + 1..=n).rev().find(|&j| w.at(j) < w.at(r)).expect("descent gives a smaller later value");
    let v = w.times_t(r, s);
    let mut out = &IntPolynomial::x(n, r) * &transition(&v, memo);
    for q in 1..r {
        let (vq, vr) = (v.at(q), v.at(r));
        // v t_{qr} covers v exactly when no value between them sits strictly between positions q and r
        if vq < vr && (q + 1..r).all(|j| v.at(j) < vq || v.at(j) > vr) {
            out = &out + &transition(&v.times_t(q, r), memo);
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

/// `S_w` computed literally as `∂_{i₁} ⋯ ∂_{iₗ}` applied to the staircase,
/// where `word` is a reduced word for `w⁻¹ w₀`.
pub fn schubert_poly_via(w: &Permutation, word: &[usize]) -> Result<IntPolynomial> {
    let n = w.n();
    let target = w.inverse().compose(&Permutation::longest(n))?;
    if word.len() != target.length() || Permutation::from_word(n, word)? != target {
        return Err(Error::InvalidPermutation(format!("{word:?} is not a reduced word for w⁻¹w₀ of {w}")));
    }
    Ok(staircase(n).divided_differences(word, 0))
}

/// A nonincreasing exact rational vector with zero sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TestSpectrum(Vec<Rational>);

impl TestSpectrum {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum("test spectrum must be nonincreasing".into()));
        }
        if !values.iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
            return Err(Error::InvalidSpectrum("test spectrum must sum to zero".into()));
        }
        Ok(Self(values))
    }

    pub fn from_ints(values: &[i128]) -> Result<Self> {
        Self::new(values.iter().map(|&x| rat(x)).collect())
    }

    /// The qubit test spectrum `(a, −a)`.
    pub fn qubit(a: Rational) -> Result<Self> {
        Self::new(vec![a, -a])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies by a positive rational.
    pub fn scaled(&self, c: Rational) -> Self {
        assert!(c > Rational::zero(), "scaling must be positive");
        Self(self.0.iter().map(|x| x * c).collect())
    }
}

fn index_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=d).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

fn sort_checked<T: Clone>(mut items: Vec<(Rational, T)>) -> Result<Vec<(Rational, T)>> {
    items.sort_by_key(|a| std::cmp::Reverse(a.0));
    if let Some(k) = items.windows(2).position(|w| w[0].0 == w[1].0) {
        return Err(Error::CubicleWall(k + 1, k + 2));
    }
    Ok(items)
}

/// Index tuples `(i₁, …, i_s)` ordered by decreasing `Σ tests[t][i_t]`.
///
/// Ties mean the point lies on a cubicle wall and are an error.
pub fn sum_order_multi(tests: &[TestSpectrum]) -> Result<Vec<Vec<usize>>> {
    let dims: Vec<usize> = tests.iter().map(|t| t.len()).collect();
    let items = index_tuples(&dims)
        .into_iter()
        .map(|t| (t.iter().zip(tests).map(|(&i, a)| a.0[i - 1]).sum(), t))
        .collect();
    Ok(sort_checked(items)?.into_iter().map(|(_, t)| t).collect())
}

/// Index pairs `(i, j)` ordered by decreasing `aᵢ + bⱼ`.
pub fn sum_order(a: &TestSpectrum, b: &TestSpectrum) -> Result<Vec<(usize, usize)>> {
    Ok(sum_order_multi(&[a.clone(), b.clone()])?.into_iter().map(|t| (t[0], t[1])).collect())
}

/// All sums `Σ tests[t][i_t]`, nonincreasing, ties kept.
pub fn combined_sums(tests: &[TestSpectrum]) -> Vec<Rational> {
    let dims: Vec<usize> = tests.iter().map(|t| t.len()).collect();
    let mut sums: Vec<Rational> = index_tuples(&dims)
        .iter()
        .map(|t| t.iter().zip(tests).map(|(&i, a)| a.0[i - 1]).sum())
        .collect();
    sums.sort_by(|a, b| b.cmp(a));
    sums
}

/// Sorted `n`-subsets of `{1..r}` in lexicographic order.
pub(crate) fn n_subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let start = s.last().map_or(1, |&l| l + 1);
                (start..=r).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `n`-subsets of `{1..r}` ordered by decreasing `Σ_{i∈S} aᵢ`.
pub fn subset_order(a: &TestSpectrum, n: usize) -> Result<Vec<Vec<usize>>> {
    let items = n_subsets(a.len(), n)
        .into_iter()
        .map(|s| (s.iter().map(|&i| a.0[i - 1]).sum(), s))
        .collect();
    Ok(sort_checked(items)?.into_iter().map(|(_, s)| s).collect())
}

/// The spectrum `∧ⁿa`: all `n`-subset sums, nonincreasing, ties kept.
pub fn wedge_sums(a: &TestSpectrum, n: usize) -> Vec<Rational> {
    let mut sums: Vec<Rational> = n_subsets(a.len(), n).iter().map(|s| s.iter().map(|&i| a.0[i - 1]).sum()).collect();
    sums.sort_by(|x, y| y.cmp(x));
    sums
}

/// How the variables of a composite system are substituted into `S_w`.
///
/// Site `s` owns variables `x^s_1 … x^s_{dims[s]}`; `terms[k]` lists the
/// `(site, index)` pairs summed to replace `x_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub dims: Vec<usize>,
    pub terms: Vec<Vec<(usize, usize)>>,
}

impl Substitution {
    /// One site per tensor factor; each term takes one index from every site.
    pub fn from_tuples(dims: &[usize], order: &[Vec<usize>]) -> Self {
        Self {
            dims: dims.to_vec(),
            terms: order.iter().map(|t| t.iter().enumerate().map(|(s, &i)| (s, i)).collect()).collect(),
        }
    }

    /// A single site of `r` orbitals; each term sums the variables of an `n`-subset.
    pub fn from_subsets(r: usize, order: &[Vec<usize>]) -> Self {
        Self { dims: vec![r], terms: order.iter().map(|s| s.iter().map(|&i| (0, i)).collect()).collect() }
    }

    fn offsets(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect()
    }
}

/// The coefficient `∂_{u₁} ⋯ ∂_{u_s} S_w` after substitution, for site permutations `us`.
///
/// Returns 0 when `ℓ(w) ≠ Σ ℓ(u_s)`.
pub fn coeff_multi(us: &[Permutation], w: &Permutation, subst: &Substitution) -> Result<i64> {
    if us.len() != subst.dims.len() || us.iter().zip(&subst.dims).any(|(u, &d)| u.n() != d) {
        return Err(Error::DimensionMismatch("site permutations do not match the site dimensions".into()));
    }
    if w.n() != subst.terms.len() {
        return Err(Error::DimensionMismatch(format!(
            "w is in S_{} but the order has {} entries",
            w.n(),
            subst.terms.len()
        )));
    }
    if w.length() != us.iter().map(Permutation::length).sum::<usize>() {
        return Ok(0);
    }
    let total: usize = subst.dims.iter().sum();
    let offsets = subst.offsets();
    let images: Vec<IntPolynomial> = subst
        .terms
        .iter()
        .map(|t| {
            t.iter()
                .fold(IntPolynomial::zero(total), |acc, &(s, i)| &acc + &IntPolynomial::x(total, offsets[s] + i))
        })
        .collect();
    let mut p = schubert_poly(w).substitute(&images)?;
    for (u, &o) in us.iter().zip(&offsets) {
        p = p.divided_differences(&u.minimal_word(), o);
    }
    let c = p.as_constant().ok_or_else(|| Error::Internal(format!("non-constant residue {p}")))?;
    i64::try_from(c).map_err(|_| Error::Overflow)
}

/// `c_{uv}^w` for a two-component system, given the order of pairs `(i, j)`.
pub fn coeff_two(u: &Permutation, v: &Permutation, w: &Permutation, order: &[(usize, usize)]) -> Result<i64> {
    let tuples: Vec<Vec<usize>> = order.iter().map(|&(i, j)| vec![i, j]).collect();
    coeff_multi(&[u.clone(), v.clone()], w, &Substitution::from_tuples(&[u.n(), v.n()], &tuples))
}

/// `c_w^v` for `∧ⁿ C^r`, given the order of `n`-subsets.
pub fn coeff_fermi(v: &Permutation, w: &Permutation, order: &[Vec<usize>]) -> Result<i64> {
    coeff_multi(std::slice::from_ref(v), w, &Substitution::from_subsets(v.n(), order))
}
