//! Young diagrams, transposition, dominance and the Gale–Ryser criterion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its strictly positive rows, nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    /// Builds a diagram from its rows; trailing zeros are dropped.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram(format!("rows {rows:?} are not nonincreasing")));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Row `i` (0-based), zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Rows padded with zeros to length `r`.
    pub fn padded(&self, r: usize) -> Vec<u32> {
        (0..r).map(|i| self.row(i)).collect()
    }

    /// The diagram of column lengths.
    pub fn transpose(&self) -> Self {
        let width = self.row(0);
        let rows = (1..=width)
            .map(|c| self.rows.iter().filter(|&&r| r >= c).count() as u32)
            .collect();
        Self { rows }
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    /// Both diagrams must have the same size.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.row(i);
            b += other.row(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// True iff the diagram fits in a box with `height` rows and `width` columns.
    pub fn fits(&self, height: usize, width: u32) -> bool {
        self.len() <= height && self.row(0) <= width
    }

    /// Complement in the `height × width` rectangle, rotated by 180°:
    /// `(width − λ_height, …, width − λ_1)`.
    pub fn complement(&self, height: usize, width: u32) -> Result<Self> {
        if !self.fits(height, width) {
            return Err(Error::InvalidDiagram(format!(
                "{self} does not fit in a {height}x{width} rectangle"
            )));
        }
        Self::new((0..height).rev().map(|i| width - self.row(i)).collect())
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Gale–Ryser: `lambda` and `mu` are the row and column sums of some 0/1
/// matrix iff `lambda ≺ muᵗ`.
pub fn gale_ryser(lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size() as u64, mu.size() as u64));
    }
    Ok(mu.transpose().dominates(lambda))
}

/// All partitions of `size` with at most `height` rows and parts at most `width`,
/// in decreasing lexicographic order.
pub fn partitions_in_box(size: u32, height: usize, width: u32) -> Vec<YoungDiagram> {
    fn rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if left == 0 {
            out.push(YoungDiagram { rows: cur.clone() });
            return;
        }
        if slots == 0 || (max as u64) * (slots as u64) < left as u64 {
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, width, height, &mut Vec::new(), &mut out);
    out
}
