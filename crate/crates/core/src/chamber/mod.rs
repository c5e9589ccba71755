//! Cubicle arrangements, their chambers and extremal edges, convex hulls
//! and redundancy removal. Everything here is exact.
//!
//! Test spectra live in an ambient simplicial cone (nonincreasing, zero sum
//! per site; `aᵢ ≥ 0` per qubit). Ties between entries of the combined sum
//! sequence cut it into chambers, inside which the order of the sums is
//! constant.

mod cone;
mod hull;
mod lp;

pub use hull::{convex_hull, Hull, LinearForm, DEFAULT_HULL_DIM};
pub use lp::{maximize, redundancy_filter, Constraint, LpOutcome};

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use cone::Cone;

use crate::catalog::InequalityRecord;
use crate::error::{Error, Result};
use crate::exact::{dot, primitive, rat, Rational};
use crate::schubert::{
    edge_generation, fermi_edge_generation, n_subsets, subset_order, sum_order_multi, GenerationOptions, TestSpectrum,
};
use crate::system::System;

/// Default cap on the ambient dimension for chamber enumeration.
pub const DEFAULT_MAX_DIM: usize = 7;

/// `⟨normal, x⟩ = 0`, normal primitive with first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vec<i128>,
}

impl Hyperplane {
    /// `None` for the zero vector.
    pub fn new(normal: &[i128]) -> Option<Self> {
        let first = *normal.iter().find(|&&x| x != 0)?;
        let mut v = primitive(normal);
        if first < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        Some(Self { normal: v })
    }
}

/// A direction, stored as its primitive integer multiple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalRay(pub Vec<i128>);

impl RationalRay {
    /// Canonical form of a nonzero rational direction.
    pub fn new(v: &[Rational]) -> Result<Self> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSpectrum("zero ray".into()));
        }
        Ok(Self(crate::exact::clear_denominators(v)?))
    }

    fn from_ints(v: &[i128]) -> Self {
        Self(primitive(v))
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&x| rat(x)).collect()
    }
}

/// A full-dimensional cell of an arrangement inside the ambient cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    /// Side of each hyperplane, `+1` or `−1`.
    pub signs: Vec<i8>,
    pub rays: Vec<RationalRay>,
}

impl Chamber {
    /// Sum of the rays, an interior point.
    pub fn barycenter(&self) -> Vec<Rational> {
        let len = self.rays[0].0.len();
        (0..len).map(|k| rat(self.rays.iter().map(|r| r.0[k]).sum())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum Layout {
    /// `x = (a₁, …, a_n)`, site `i` tested with `(aᵢ, −aᵢ)`.
    Qubits,
    /// `x` concatenates one test spectrum per site.
    Sites,
    /// `x` is one test spectrum on the orbitals.
    Orbitals { n: usize },
}

/// Ambient cone and tie hyperplanes of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    pub system: System,
    /// Generators of the ambient cone, linearly independent.
    pub cone_rays: Vec<Vec<i128>>,
    pub hyperplanes: Vec<Hyperplane>,
    /// Whether rays are compared up to permuting sites (qubit arrays).
    pub symmetric: bool,
    layout: Layout,
}

/// `(m−k, …, m−k, −k, …, −k)` with `k` leading entries.
fn fundamental(m: usize, k: usize) -> Vec<i128> {
    (0..m).map(|i| if i < k { (m - k) as i128 } else { -(k as i128) }).collect()
}

fn index_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    dims.iter().fold(vec![vec![]], |acc, &d| {
        acc.into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect()
    })
}

fn cuts(h: &[i128], rays: &[Vec<i128>]) -> Result<bool> {
    let vals: Vec<i128> = rays.iter().map(|r| dot(h, r)).collect::<Result<_>>()?;
    Ok(vals.iter().any(|&v| v > 0) && vals.iter().any(|&v| v < 0))
}

fn collect_hyperplanes(normals: impl Iterator<Item = Vec<i128>>, rays: &[Vec<i128>]) -> Result<Vec<Hyperplane>> {
    let mut set = BTreeSet::new();
    for n in normals {
        if let Some(h) = Hyperplane::new(&n) {
            if !set.contains(&h) && cuts(&h.normal, rays)? {
                set.insert(h);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// The ambient cone of test spectra of `system` and every tie hyperplane
/// meeting its interior.
pub fn cubicle_arrangement(system: &System) -> Result<Arrangement> {
    match system {
        System::Tensor { dims, .. } if system.is_qubit_array() => {
            let n = dims.len();
            let rays: Vec<Vec<i128>> = (0..n).map(|k| (0..n).map(|i| i128::from(i == k)).collect()).collect();
            // (ε − ε')/2 for sign vectors ε ≠ ε'
            let normals = (1..3usize.pow(n as u32)).map(|mut code| {
                (0..n)
                    .map(|_| {
                        let c = (code % 3) as i128 - 1;
                        code /= 3;
                        c
                    })
                    .collect::<Vec<i128>>()
            });
            let hyperplanes = collect_hyperplanes(normals, &rays)?;
            Ok(Arrangement { system: system.clone(), cone_rays: rays, hyperplanes, symmetric: true, layout: Layout::Qubits })
        }
        System::Tensor { dims, .. } => {
            let total: usize = dims.iter().sum();
            let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| Some(std::mem::replace(acc, *acc + d))).collect();
            let mut rays = Vec::new();
            for (s, &d) in dims.iter().enumerate() {
                for k in 1..d {
                    let mut v = vec![0; total];
                    v[offsets[s]..offsets[s] + d].copy_from_slice(&fundamental(d, k));
                    rays.push(v);
                }
            }
            let tuples = index_tuples(dims);
            let normals = tuples.iter().enumerate().flat_map(|(k, t)| {
                tuples[k + 1..].iter().map(|u| {
                    let mut v = vec![0i128; total];
                    for s in 0..dims.len() {
                        v[offsets[s] + t[s]] += 1;
                        v[offsets[s] + u[s]] -= 1;
                    }
                    v
                })
            });
            let hyperplanes = collect_hyperplanes(normals, &rays)?;
            Ok(Arrangement { system: system.clone(), cone_rays: rays, hyperplanes, symmetric: false, layout: Layout::Sites })
        }
        System::Fermion { r, n, .. } => {
            let (r, n) = (*r, *n);
            let rays: Vec<Vec<i128>> = (1..r).map(|k| fundamental(r, k)).collect();
            let subsets = n_subsets(r, n);
            let normals = subsets.iter().enumerate().flat_map(|(k, s)| {
                subsets[k + 1..].iter().map(move |t| {
                    let mut v = vec![0i128; r];
                    s.iter().for_each(|&i| v[i - 1] += 1);
                    t.iter().for_each(|&i| v[i - 1] -= 1);
                    v
                })
            });
            let hyperplanes = collect_hyperplanes(normals, &rays)?;
            Ok(Arrangement {
                system: system.clone(),
                cone_rays: rays,
                hyperplanes,
                symmetric: false,
                layout: Layout::Orbitals { n },
            })
        }
        System::Correlations => Err(Error::UnknownSystem("correlation vectors have no cubicle arrangement".into())),
    }
}

impl Arrangement {
    /// Ambient dimension, the number of cone generators.
    pub fn dim(&self) -> usize {
        self.cone_rays.len()
    }

    /// For qubit arrays, the same arrangement inside the fundamental domain
    /// `0 ≤ a₁ ≤ ⋯ ≤ a_n` of site permutations; otherwise unchanged.
    pub fn reduced(&self) -> Result<Self> {
        if self.layout != Layout::Qubits {
            return Ok(self.clone());
        }
        let n = self.dim();
        let rays: Vec<Vec<i128>> = (0..n).map(|k| (0..n).map(|i| i128::from(i >= k)).collect()).collect();
        let mut hyperplanes = Vec::new();
        for h in &self.hyperplanes {
            if cuts(&h.normal, &rays)? {
                hyperplanes.push(h.clone());
            }
        }
        Ok(Self { cone_rays: rays, hyperplanes, ..self.clone() })
    }

    /// Test spectra at a point of the ambient space.
    pub fn tests_at(&self, x: &[Rational]) -> Result<Vec<TestSpectrum>> {
        match self.layout {
            Layout::Qubits => x.iter().map(|&a| TestSpectrum::qubit(a)).collect(),
            Layout::Sites => {
                let mut at = 0;
                self.system
                    .site_ranks()
                    .iter()
                    .map(|&d| {
                        at += d;
                        TestSpectrum::new(x[at - d..at].to_vec())
                    })
                    .collect()
            }
            Layout::Orbitals { .. } => Ok(vec![TestSpectrum::new(x.to_vec())?]),
        }
    }

    /// Ambient coordinates of the test spectra, inverse to [`Arrangement::tests_at`].
    pub fn point_of(&self, tests: &[TestSpectrum]) -> Result<Vec<Rational>> {
        let ranks = match self.layout {
            Layout::Orbitals { .. } => vec![self.system.site_ranks()[0]],
            _ => self.system.site_ranks(),
        };
        if tests.len() != ranks.len() || tests.iter().zip(&ranks).any(|(t, &d)| t.len() != d) {
            return Err(Error::DimensionMismatch(format!("test spectra do not match {}", self.system)));
        }
        Ok(match self.layout {
            Layout::Qubits => tests.iter().map(|t| t.values()[0]).collect(),
            _ => tests.iter().flat_map(|t| t.values().iter().copied()).collect(),
        })
    }

    /// Orders of the chambers whose closure contains `x`, e.g. every chamber around an edge.
    pub fn orders_around(&self, chambers: &[Chamber], x: &[Rational]) -> Result<Vec<Vec<Vec<usize>>>> {
        let values: Vec<Rational> = self
            .hyperplanes
            .iter()
            .map(|h| h.normal.iter().zip(x).map(|(&a, b)| b * a).sum())
            .collect();
        let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
        for c in chambers {
            let touches = values.iter().zip(&c.signs).all(|(v, &s)| v.is_zero() || (*v > Rational::zero()) == (s > 0));
            if touches {
                let order = self.order_at(&c.barycenter())?;
                if !out.contains(&order) {
                    out.push(order);
                }
            }
        }
        Ok(out)
    }

    /// Order of the combined sums at an interior point: index tuples, or `n`-subsets for fermions.
    pub fn order_at(&self, x: &[Rational]) -> Result<Vec<Vec<usize>>> {
        let tests = self.tests_at(x)?;
        match self.layout {
            Layout::Orbitals { n } => subset_order(&tests[0], n),
            _ => sum_order_multi(&tests),
        }
    }

    fn canonical_edge(&self, r: &RationalRay) -> RationalRay {
        let mut v = r.0.clone();
        if self.symmetric {
            v.sort();
        }
        RationalRay(v)
    }
}

/// Every full-dimensional chamber of the arrangement, with its extreme rays.
pub fn enumerate_chambers(arr: &Arrangement, max_dim: usize) -> Result<Vec<Chamber>> {
    let d = arr.dim();
    if d > max_dim {
        return Err(Error::Unsupported(format!("ambient dimension {d} exceeds the cap {max_dim}")));
    }
    // work in coordinates t with x = Σ tᵢ ρᵢ, where the cone is the orthant
    let local: Vec<Vec<i128>> = arr
        .hyperplanes
        .iter()
        .map(|h| arr.cone_rays.iter().map(|r| dot(&h.normal, r)).collect())
        .collect::<Result<_>>()?;
    let mut cells = vec![(Vec::<i8>::new(), Cone::orthant(d))];
    for h in &local {
        let next: Vec<Vec<(Vec<i8>, Cone)>> = cells
            .par_iter()
            .map(|(signs, c)| -> Result<Vec<(Vec<i8>, Cone)>> {
                let with = |s: i8, c: Cone| {
                    let mut v = signs.clone();
                    v.push(s);
                    (v, c)
                };
                Ok(match c.split(h)? {
                    Some((plus, minus)) => vec![with(1, plus), with(-1, minus)],
                    None => {
                        let s = if c.values(h)?.iter().any(|&v| v > 0) { 1 } else { -1 };
                        vec![with(s, c.clone())]
                    }
                })
            })
            .collect::<Result<_>>()?;
        cells = next.into_iter().flatten().collect();
    }
    cells
        .into_iter()
        .map(|(signs, c)| {
            let mut rays: Vec<RationalRay> = c
                .rays
                .iter()
                .map(|t| {
                    let x: Option<Vec<i128>> = (0..arr.cone_rays[0].len())
                        .map(|k| {
                            t.iter().zip(&arr.cone_rays).try_fold(0i128, |acc, (&ti, r)| acc.checked_add(ti.checked_mul(r[k])?))
                        })
                        .collect();
                    Ok(RationalRay::from_ints(&x.ok_or(Error::Overflow)?))
                })
                .collect::<Result<_>>()?;
            rays.sort();
            Ok(Chamber { signs, rays })
        })
        .collect()
}

/// Extreme rays of all chambers, deduplicated (up to site permutation for qubit arrays), sorted.
pub fn extremal_edges(arr: &Arrangement, chambers: &[Chamber]) -> Vec<RationalRay> {
    let set: BTreeSet<RationalRay> = chambers.iter().flat_map(|c| c.rays.iter().map(|r| arr.canonical_edge(r))).collect();
    set.into_iter().collect()
}

/// Orders of the chambers having `edge` among their rays.
pub fn edge_orders(arr: &Arrangement, chambers: &[Chamber], edge: &RationalRay) -> Result<Vec<Vec<Vec<usize>>>> {
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    for c in chambers.iter().filter(|c| c.rays.contains(edge)) {
        let order = arr.order_at(&c.barycenter())?;
        if !out.contains(&order) {
            out.push(order);
        }
    }
    Ok(out)
}

/// All inequalities obtained from every extremal edge and every adjacent
/// chamber order, deduplicated.
pub fn generate_from_edges(arr: &Arrangement, chambers: &[Chamber], opts: GenerationOptions) -> Result<Vec<InequalityRecord>> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<InequalityRecord> = Vec::new();
    for c in chambers {
        let order = arr.order_at(&c.barycenter())?;
        for r in &c.rays {
            if !seen.insert((r.clone(), order.clone())) {
                continue;
            }
            let tests = arr.tests_at(&r.to_rationals())?;
            let recs = match arr.layout {
                Layout::Orbitals { n } => fermi_edge_generation(&tests[0], n, &order, opts)?,
                _ => edge_generation(&tests, &order, opts)?,
            };
            for rec in recs {
                if !out.iter().any(|o| o.same_constraint(&rec)) {
                    out.push(rec);
                }
            }
        }
    }
    Ok(out)
}
