//! System descriptors shared by the catalog, the geometry and the CLI.
//!
//! Text forms: `qubits:N`, `tensor:2x3x4`, `fermion:R:N`, each optionally
//! followed by `:mixed`, and `chsh` for two-party correlation vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A composite quantum system whose spectra are constrained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum System {
    /// Tensor product of factors with the given dimensions.
    Tensor { dims: Vec<usize>, mixed: bool },
    /// `n` fermions in `r` orbitals.
    Fermion { r: usize, n: usize, mixed: bool },
    /// Correlators `⟨a_i b_j⟩` of two sites with two settings each.
    Correlations,
}

impl System {
    pub fn qubits(n: usize) -> Self {
        System::Tensor { dims: vec![2; n], mixed: false }
    }

    pub fn tensor(dims: &[usize], mixed: bool) -> Self {
        System::Tensor { dims: dims.to_vec(), mixed }
    }

    pub fn fermion(r: usize, n: usize, mixed: bool) -> Self {
        System::Fermion { r, n, mixed }
    }

    pub fn is_mixed(&self) -> bool {
        match self {
            System::Tensor { mixed, .. } | System::Fermion { mixed, .. } => *mixed,
            System::Correlations => false,
        }
    }

    /// Lengths of the local spectra: one per factor, or the orbital count.
    pub fn site_ranks(&self) -> Vec<usize> {
        match self {
            System::Tensor { dims, .. } => dims.clone(),
            System::Fermion { r, .. } => vec![*r],
            System::Correlations => vec![4],
        }
    }

    /// Length of the global spectrum, present for mixed systems only.
    pub fn global_rank(&self) -> Option<usize> {
        match self {
            System::Tensor { dims, mixed: true } => Some(dims.iter().product()),
            System::Fermion { r, n, mixed: true } => Some(num_integer::binomial(*r, *n)),
            _ => None,
        }
    }

    /// Whether every factor is a qubit.
    pub fn is_qubit_array(&self) -> bool {
        matches!(self, System::Tensor { dims, .. } if !dims.is_empty() && dims.iter().all(|&d| d == 2))
    }

    fn validate(self) -> Result<Self> {
        match &self {
            System::Tensor { dims, .. } if dims.is_empty() || dims.iter().any(|&d| d < 2) => {
                Err(Error::UnknownSystem(format!("factor dimensions {dims:?} must be at least 2")))
            }
            System::Fermion { r, n, .. } if *n == 0 || n >= r => {
                Err(Error::UnknownSystem(format!("fermion system needs 0 < n < r, got r={r}, n={n}")))
            }
            _ => Ok(self),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = if self.is_mixed() { ":mixed" } else { "" };
        match self {
            System::Tensor { dims, .. } if dims.iter().all(|&d| d == 2) => write!(f, "qubits:{}{suffix}", dims.len()),
            System::Tensor { dims, .. } => {
                let d: Vec<String> = dims.iter().map(|x| x.to_string()).collect();
                write!(f, "tensor:{}{suffix}", d.join("x"))
            }
            System::Fermion { r, n, .. } => write!(f, "fermion:{r}:{n}{suffix}"),
            System::Correlations => write!(f, "chsh"),
        }
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownSystem(s.to_string());
        let mut parts: Vec<&str> = s.trim().split(':').collect();
        let mixed = parts.last() == Some(&"mixed");
        if mixed {
            parts.pop();
        }
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let sys = match parts.as_slice() {
            ["qubits", n] => System::Tensor { dims: vec![2; num(n)?], mixed },
            ["tensor", dims] => System::Tensor {
                dims: dims.split(['x', 'X', '*']).map(num).collect::<Result<_>>()?,
                mixed,
            },
            ["fermion", r, n] => System::Fermion { r: num(r)?, n: num(n)?, mixed },
            ["chsh"] if !mixed => System::Correlations,
            _ => return Err(bad()),
        };
        sys.validate()
    }
}

impl From<System> for String {
    fn from(s: System) -> Self {
        s.to_string()
    }
}

impl TryFrom<String> for System {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["qubits:3", "qubits:2:mixed", "tensor:2x3", "tensor:3x3x3", "fermion:6:3", "fermion:4:2:mixed", "chsh"] {
            assert_eq!(s.parse::<System>().unwrap().to_string(), s);
        }
        assert_eq!("tensor:2x2x2".parse::<System>().unwrap(), System::qubits(3));
        for s in ["qubits", "tensor:1x2", "fermion:3:3", "fermion:6:0", "spin:2", "chsh:mixed"] {
            assert!(s.parse::<System>().is_err(), "{s}");
        }
        assert_eq!(System::fermion(4, 2, true).global_rank(), Some(6));
        assert_eq!(System::tensor(&[2, 3], true).global_rank(), Some(6));
        assert_eq!(System::qubits(3).global_rank(), None);
    }
}
