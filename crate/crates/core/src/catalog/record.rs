use std::fmt;

use serde::{Deserialize, Serialize};

use crate::schubert::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// How a generated inequality was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    /// Integer test spectra, one per site.
    pub tests: Vec<Vec<i64>>,
    /// Site permutations `u`, `v`, ….
    pub perms: Vec<Permutation>,
    pub w: Permutation,
    pub coefficient: i64,
}

/// One linear constraint on spectra:
/// `Σ_s ⟨lhs[s], λ⁽ˢ⁾⟩  ≤ (or =)  ⟨rhs, ν⟩ + bound`.
///
/// `λ⁽ˢ⁾` are the local spectra in the family's declared order and `ν` is
/// the global spectrum (absent for pure-state families, where `rhs` is empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub family: String,
    pub lhs: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub bound: i64,
    pub relation: Relation,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Origin>,
}

impl InequalityRecord {
    pub fn le(family: &str, lhs: Vec<Vec<i64>>, rhs: Vec<i64>, bound: i64) -> Self {
        Self { family: family.into(), lhs, rhs, bound, relation: Relation::Le, note: String::new(), origin: None }
    }

    pub fn eq(family: &str, lhs: Vec<Vec<i64>>, rhs: Vec<i64>, bound: i64) -> Self {
        Self { relation: Relation::Eq, ..Self::le(family, lhs, rhs, bound) }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// `⟨rhs, ν⟩ + bound − Σ ⟨lhs[s], λ⁽ˢ⁾⟩`; nonnegative when satisfied.
    pub fn slack(&self, sites: &[Vec<f64>], global: Option<&[f64]>) -> f64 {
        let dot = |c: &[i64], x: &[f64]| c.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum::<f64>();
        let left: f64 = self.lhs.iter().zip(sites).map(|(c, x)| dot(c, x)).sum();
        let right = global.map_or(0.0, |g| dot(&self.rhs, g));
        right + self.bound as f64 - left
    }

    /// Whether the record holds with tolerance `tol`.
    pub fn holds(&self, sites: &[Vec<f64>], global: Option<&[f64]>, tol: f64) -> bool {
        let s = self.slack(sites, global);
        match self.relation {
            Relation::Le => s >= -tol,
            Relation::Eq => s.abs() <= tol,
        }
    }

    /// Coefficients compared exactly, ignoring family and notes.
    pub fn same_constraint(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs && self.bound == other.bound && self.relation == other.relation
    }
}

fn term(c: i64, name: &str, first: bool) -> String {
    let sign = if c < 0 { "-" } else if first { "" } else { "+" };
    let mag = c.unsigned_abs();
    let body = if mag == 1 { name.to_string() } else { format!("{mag}{name}") };
    if first {
        format!("{sign}{body}")
    } else {
        format!(" {sign} {body}")
    }
}

fn side(blocks: &[(String, &[i64])], constant: i64) -> String {
    let mut out = String::new();
    for (prefix, coeffs) in blocks {
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out += &term(c, &format!("{prefix}{}", k + 1), out.is_empty());
            }
        }
    }
    if constant != 0 || out.is_empty() {
        if out.is_empty() {
            out = constant.to_string();
        } else {
            out += &format!(" {} {}", if constant < 0 { "-" } else { "+" }, constant.unsigned_abs());
        }
    }
    out
}

impl fmt::Display for InequalityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<(String, &[i64])> = if self.lhs.len() == 1 {
            vec![("l".into(), &self.lhs[0][..])]
        } else {
            self.lhs.iter().enumerate().map(|(s, c)| (format!("l{}_", s + 1), &c[..])).collect()
        };
        let rel = match self.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{} {rel} {}", side(&names, 0), side(&[("n".into(), &self.rhs[..])], self.bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_and_display() {
        let r = InequalityRecord::le("BD6", vec![vec![0, 0, 0, 1, -1, -1]], vec![], 0);
        assert_eq!(r.to_string(), "l4 - l5 - l6 <= 0");
        let lam = vec![vec![1.0, 1.0, 0.5, 0.5, 0.0, 0.0]];
        assert_eq!(r.slack(&lam, None), -0.5);
        assert!(!r.holds(&lam, None, 1e-10));
        let e = InequalityRecord::eq("BD6", vec![vec![1, 0, 0, 0, 0, 1]], vec![], 1);
        assert_eq!(e.to_string(), "l1 + l6 = 1");
        assert!(e.holds(&lam, None, 1e-10));
        let m = InequalityRecord::le("X", vec![vec![0, -1], vec![0, 2]], vec![0, 0, -1, -1], 0);
        assert_eq!(m.to_string(), "-l1_2 + 2l2_2 <= -n3 - n4");
    }
}
