//! Exact linear programming by the two-phase simplex method with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::Relation;
use crate::error::{Error, Result};
use crate::exact::Rational;

type Q = BigRational;

fn big(x: &Rational) -> Q {
    Q::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// `⟨coeffs, x⟩ ≤ bound` or `= bound` over free variables `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub bound: Rational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self { coeffs, relation: Relation::Le, bound }
    }

    pub fn eq(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self { coeffs, relation: Relation::Eq, bound }
    }

    /// From integer coefficients.
    pub fn le_int(coeffs: &[i64], bound: i64) -> Self {
        Self::le(coeffs.iter().map(|&c| Rational::from(c as i128)).collect(), Rational::from(bound as i128))
    }

    pub fn eq_int(coeffs: &[i64], bound: i64) -> Self {
        Self { relation: Relation::Eq, ..Self::le_int(coeffs, bound) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    a: Vec<Vec<Q>>,
    b: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        self.a[row].iter_mut().for_each(|x| *x *= &inv);
        self.b[row] *= &inv;
        let (pr, pb) = (self.a[row].clone(), self.b[row].clone());
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for (x, y) in self.a[i].iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.b[i] -= &f * &pb;
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost · z` over columns marked `allowed`; false when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let reduced = |j: usize| {
                let mut r = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !self.a[i][j].is_zero() && !cost[bi].is_zero() {
                        r -= &cost[bi] * &self.a[i][j];
                    }
                }
                r
            };
            let Some(col) = (0..cost.len()).find(|&j| allowed[j] && !self.basis.contains(&j) && reduced(j).is_positive())
            else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &best {
                        None => true,
                        Some((k, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = best else { return false };
            self.pivot(row, col);
        }
    }
}

/// Maximizes `⟨objective, x⟩` subject to `constraints`, exactly.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> Result<LpOutcome> {
    let n = objective.len();
    if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != n) {
        return Err(Error::DimensionMismatch(format!("constraint of length {} for {n} variables", c.coeffs.len())));
    }
    let m = constraints.len();
    let slacks: Vec<usize> = (0..m).filter(|&i| constraints[i].relation == Relation::Le).collect();
    let ncols = 2 * n + slacks.len() + m;
    let art0 = 2 * n + slacks.len();
    let mut t = Tableau { a: vec![vec![Q::zero(); ncols]; m], b: vec![Q::zero(); m], basis: (art0..ncols).collect() };
    for (i, c) in constraints.iter().enumerate() {
        let flip = c.bound < Rational::zero();
        let s = |q: Q| if flip { -q } else { q };
        for (j, x) in c.coeffs.iter().enumerate() {
            t.a[i][j] = s(big(x));
            t.a[i][n + j] = s(-big(x));
        }
        if let Some(k) = slacks.iter().position(|&r| r == i) {
            t.a[i][2 * n + k] = s(Q::one());
        }
        t.a[i][art0 + i] = Q::one();
        t.b[i] = s(big(&c.bound));
    }
    let all = vec![true; ncols];
    let phase1: Vec<Q> = (0..ncols).map(|j| if j >= art0 { -Q::one() } else { Q::zero() }).collect();
    t.optimize(&phase1, &all);
    if t.basis.iter().zip(&t.b).any(|(&j, b)| j >= art0 && !b.is_zero()) {
        return Ok(LpOutcome::Infeasible);
    }
    let mut i = 0;
    while i < t.a.len() {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| !t.a[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.a.remove(i);
                    t.b.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < art0).collect();
    let cost: Vec<Q> = (0..ncols)
        .map(|j| if j < n { big(&objective[j]) } else if j < 2 * n { -big(&objective[j - n]) } else { Q::zero() })
        .collect();
    if !t.optimize(&cost, &allowed) {
        return Ok(LpOutcome::Unbounded);
    }
    let mut z = vec![Q::zero(); ncols];
    for (i, &j) in t.basis.iter().enumerate() {
        z[j] = t.b[i].clone();
    }
    let point: Vec<Q> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    let value = point.iter().zip(objective).map(|(x, c)| x * big(c)).fold(Q::zero(), |a, b| a + b);
    Ok(LpOutcome::Optimal { value, point })
}

/// Indices of an irredundant subset of `inequalities`: each dropped one is
/// implied by those kept together with `ambient`. Equalities are always kept.
pub fn redundancy_filter(inequalities: &[Constraint], ambient: &[Constraint]) -> Result<Vec<usize>> {
    let n = inequalities.first().or(ambient.first()).map_or(0, |c| c.coeffs.len());
    let zero = vec![Rational::zero(); n];
    let mut all: Vec<Constraint> = ambient.to_vec();
    all.extend(inequalities.iter().cloned());
    if maximize(&zero, &all)? == LpOutcome::Infeasible {
        return Err(Error::Infeasible("the combined system has no solution".into()));
    }
    let mut kept: Vec<bool> = vec![true; inequalities.len()];
    for i in 0..inequalities.len() {
        if inequalities[i].relation == Relation::Eq {
            continue;
        }
        let mut others = ambient.to_vec();
        others.extend((0..inequalities.len()).filter(|&k| k != i && kept[k]).map(|k| inequalities[k].clone()));
        match maximize(&inequalities[i].coeffs, &others)? {
            LpOutcome::Optimal { value, .. } if value <= big(&inequalities[i].bound) => kept[i] = false,
            LpOutcome::Infeasible => return Err(Error::Infeasible("the reduced system has no solution".into())),
            _ => {}
        }
    }
    Ok((0..inequalities.len()).filter(|&i| kept[i]).collect())
}
