use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u16>;

/// Polynomial with exact integer coefficients in variables `x₁ … x_N`.
///
/// Terms are kept in lexicographic monomial order; zero coefficients are
/// never stored. Variables are numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, i128>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `x_k`.
    pub fn x(nvars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= nvars, "variable x{k} outside 1..={nvars}");
        let mut m = vec![0; nvars];
        m[k - 1] = 1;
        Self::monomial(m, 1)
    }

    pub fn monomial(exponents: Monomial, c: i128) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, i128)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u16]) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().map(|&e| e as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant value, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, &c) = self.terms.iter().next().expect("one term");
                m.iter().all(|&e| e == 0).then_some(c)
            }
            _ => None,
        }
    }

    /// The same polynomial in `nvars ≥ self.nvars` variables.
    pub fn widened(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, &c)| {
                let mut e = m.clone();
                e.resize(nvars, 0);
                (e, c)
            }),
        )
    }

    /// Exchanges `x_i` and `x_j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, &c)| {
                let mut e = m.clone();
                e.swap(i - 1, j - 1);
                (e, c)
            }),
        )
    }

    /// `∂_i f = (f − s_i f) / (x_i − x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nvars, "∂_{i} needs variables x{i}, x{}", i + 1);
        let (a, b) = (i - 1, i);
        let mut out = Self::zero(self.nvars);
        for (m, &c) in &self.terms {
            let (p, q) = (m[a], m[b]);
            if p == q {
                continue;
            }
            let (hi, lo, sign) = if p > q { (p, q, 1) } else { (q, p, -1) };
            // x_a^lo x_b^lo (x_a^{d} − x_b^{d}) / (x_a − x_b), d = hi − lo
            for j in 0..hi - lo {
                let mut e = m.clone();
                e[a] = lo + (hi - lo - 1 - j);
                e[b] = lo + j;
                out.add_term(e, sign * c);
            }
        }
        out
    }

    /// Applies `∂_{i₁} ∂_{i₂} ⋯ ∂_{iₗ}` (rightmost first), with each index shifted by `offset`.
    pub fn divided_differences(&self, word: &[usize], offset: usize) -> Self {
        word.iter().rev().fold(self.clone(), |p, &i| p.divided_difference(i + offset))
    }

    /// Substitutes `x_k ↦ images[k−1]`; all images share one arity.
    pub fn substitute(&self, images: &[IntPolynomial]) -> Result<Self> {
        if images.len() < self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<IntPolynomial>> = images.iter().map(|p| vec![IntPolynomial::one(p.nvars)]).collect();
        let mut out = Self::zero(target);
        for (m, &c) in &self.terms {
            let mut term = Self::constant(target, c);
            for (k, &e) in m.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().expect("nonempty") * &images[k];
                    powers[k].push(next);
                }
                if e > 0 {
                    term = &term * &powers[k][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Value at an integer point.
    pub fn evaluate(&self, point: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|(m, &c)| c * m.iter().zip(point).map(|(&e, &x)| x.pow(e as u32)).product::<i128>())
            .sum()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let nvars = self.nvars.max(rhs.nvars);
        let mut out = if self.nvars == nvars { self.clone() } else { self.widened(nvars) };
        let rhs = if rhs.nvars == nvars { rhs.clone() } else { rhs.widened(nvars) };
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

fn product_monomial(a: &[u16], b: &[u16], nvars: usize) -> Monomial {
    (0..nvars).map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0)).collect()
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let nvars = self.nvars.max(rhs.nvars);
        let mut out = IntPolynomial::zero(nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &rhs.terms {
                out.add_term(product_monomial(m1, m2, nvars), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest lexicographic term first
        for (n, (m, &c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
                .collect();
            if c.unsigned_abs() != 1 || factors.is_empty() {
                factors.insert(0, c.unsigned_abs().to_string());
            }
            let body = factors.join("*");
            match (n, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> IntPolynomial {
        IntPolynomial::x(3, k)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(x(1).divided_difference(1), IntPolynomial::one(3));
        assert!((&x(1) * &x(2)).divided_difference(1).is_zero());
        assert_eq!((&x(1) * &x(1)).divided_difference(1), &x(1) + &x(2));
        assert_eq!(x(2).divided_difference(1), -&IntPolynomial::one(3));
        assert!(x(3).divided_difference(1).is_zero());
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&x(1) * &x(1)) - &(&x(2) + &x(2));
        assert_eq!(p.to_string(), "x1^2 - 2*x2");
        assert_eq!(p.degree(), Some(2));
        assert!(!p.is_homogeneous());
        assert_eq!(p.evaluate(&[3, 1, 0]), 7);
        assert!((&p - &p).is_zero());
        assert_eq!(IntPolynomial::constant(3, 5).as_constant(), Some(5));
        assert_eq!(x(1).as_constant(), None);
        let s = p.substitute(&[x(2), x(3), x(1)]).unwrap();
        assert_eq!(s.to_string(), "x2^2 - 2*x3");
    }
}
