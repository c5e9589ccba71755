use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation.
///
/// Products compose as functions, `(uv)(i) = u(v(i))`, so right
/// multiplication by `s_i` swaps positions `i` and `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &x in &word {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("{word:?} is not a bijection of 1..={n}")));
            }
        }
        Ok(Self(word))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// The order-reversing permutation `w₀ = (n, …, 1)`.
    pub fn longest(n: usize) -> Self {
        Self((1..=n).rev().collect())
    }

    /// The product `s_{i₁} ⋯ s_{iₖ}` in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::InvalidPermutation(format!("s_{i} is not in S_{n}")));
            }
            p.0.swap(i - 1, i);
        }
        Ok(p)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Self(cur.clone())];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Self(cur.clone()));
        }
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// Whether `w(i) > w(i+1)`.
    pub fn has_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// `w s_i`.
    pub fn times_s(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Self(v)
    }

    /// `w t_{ij}`: swaps positions `i` and `j`.
    pub fn times_t(&self, i: usize, j: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, j - 1);
        Self(v)
    }

    /// A reduced word `[i₁, …, iₗ]` with `w = s_{i₁} ⋯ s_{iₗ}`.
    pub fn minimal_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).find(|&i| w.has_descent(i)) {
            rev.push(i);
            w = w.times_s(i);
        }
        rev.reverse();
        rev
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::InvalidPermutation(format!("S_{} and S_{} do not compose", self.n(), other.n())));
        }
        Ok(Self(other.0.iter().map(|&i| self.0[i - 1]).collect()))
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.n()];
        for (k, &x) in self.0.iter().enumerate() {
            v[x - 1] = k + 1;
        }
        Self(v)
    }

    /// Smallest `k` with `w` fixing every point above `k` (at least 1).
    pub fn support(&self) -> usize {
        (1..=self.n()).rev().find(|&k| self.0[k - 1] != k).unwrap_or(1)
    }

    /// The same permutation viewed in `S_m`, `m ≥ support`.
    pub fn resized(&self, m: usize) -> Result<Self> {
        if m < self.support() {
            return Err(Error::InvalidPermutation(format!("{self} does not fit in S_{m}")));
        }
        Ok(Self((1..=m).map(|k| self.0.get(k - 1).copied().unwrap_or(k)).collect()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,1,3`, `[2,1,3]` or, for `n ≤ 9`, `213`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let word: std::result::Result<Vec<usize>, _> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse()).collect()
        } else {
            t.chars().map(|c| c.to_string().parse()).collect()
        };
        Self::new(word.map_err(|_| Error::InvalidPermutation(format!("cannot parse {s:?}")))?)
    }
}
