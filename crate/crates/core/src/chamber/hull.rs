//! Facets of the convex hull of finitely many rational points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{primitive, Rational};

type Q = BigRational;

/// Largest affine dimension handled by default.
pub const DEFAULT_HULL_DIM: usize = 7;

/// `⟨coeffs, x⟩ ≤ bound` for facets, `= bound` for equalities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<i128>,
    pub bound: i128,
}

impl LinearForm {
    /// `bound − ⟨coeffs, x⟩`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let lhs: Rational = self.coeffs.iter().zip(x).map(|(&c, v)| v * c).sum();
        Rational::from(self.bound) - lhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull {
    /// Dimension of the affine span.
    pub dim: usize,
    pub equalities: Vec<LinearForm>,
    pub facets: Vec<LinearForm>,
}

fn big(x: &Rational) -> Q {
    Q::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Scales to coprime integers, keeping the sign.
fn integral(v: &[Q]) -> Result<Vec<i128>> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.iter()
        .map(|x| if g.is_zero() { x.clone() } else { x / &g })
        .map(|x| x.to_i128().ok_or(Error::Overflow))
        .collect()
}

/// Reduced row echelon form; returns pivot columns.
fn rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, k);
        let inv = m[r][c].recip();
        m[r].iter_mut().for_each(|x| *x *= &inv);
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                row.iter_mut().zip(&pr).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Inverse of a square matrix; `None` when singular.
fn inverse(b: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = b.len();
    let mut m: Vec<Vec<Q>> = b
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain((0..n).map(|j| if i == j { Q::one() } else { Q::zero() })).collect())
        .collect();
    let piv = rref(&mut m);
    (piv == (0..n).collect::<Vec<_>>()).then(|| m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Affine span and irredundant facets of the hull of `points`.
pub fn convex_hull(points: &[Vec<Rational>], max_dim: usize) -> Result<Hull> {
    let p0 = points.first().ok_or_else(|| Error::InvalidSpectrum("no points".into()))?;
    let len = p0.len();
    if points.iter().any(|p| p.len() != len) {
        return Err(Error::DimensionMismatch("points of different lengths".into()));
    }
    let p0q: Vec<Q> = p0.iter().map(big).collect();
    let mut diffs: Vec<Vec<Q>> =
        points[1..].iter().map(|p| p.iter().zip(&p0q).map(|(x, y)| big(x) - y).collect()).collect();
    let pivots = rref(&mut diffs);
    let k = pivots.len();
    if k > max_dim {
        return Err(Error::Unsupported(format!("affine dimension {k} exceeds the cap {max_dim}")));
    }
    let mut equalities = Vec::new();
    for j in (0..len).filter(|j| !pivots.contains(j)) {
        let mut form = vec![Q::zero(); len + 1];
        form[j] = Q::one();
        for (s, &c) in pivots.iter().enumerate() {
            form[c] = -diffs[s][j].clone();
        }
        form[len] = form[..len].iter().zip(&p0q).map(|(a, b)| a * b).fold(Q::zero(), |a, b| a + b);
        let ints = integral(&form)?;
        equalities.push(LinearForm { coeffs: ints[..len].to_vec(), bound: ints[len] });
    }
    if k == 0 {
        return Ok(Hull { dim: 0, equalities, facets: vec![] });
    }
    // dual cone {(c₀, c) : c₀ + ⟨c, y⟩ ≥ 0 for every point y}
    let rows: Vec<Vec<Q>> = points
        .iter()
        .map(|p| std::iter::once(Q::one()).chain(pivots.iter().map(|&c| big(&p[c]))).collect())
        .collect();
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Q>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.clone());
        if rref(&mut trial).len() > echelon.len() {
            echelon = trial;
            basis.push(i);
        }
        if basis.len() == k + 1 {
            break;
        }
    }
    let b: Vec<Vec<Q>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = inverse(&b).ok_or_else(|| Error::Internal("point basis is singular".into()))?;
    let rays: Vec<Vec<i128>> =
        (0..=k).map(|j| integral(&inv.iter().map(|row| row[j].clone()).collect::<Vec<_>>())).collect::<Result<_>>()?;
    let int_rows: Vec<Vec<i128>> = rows.iter().map(|r| integral(r)).collect::<Result<_>>()?;
    let mut cone = Cone::simplicial(basis.iter().map(|&i| int_rows[i].clone()).collect(), rays);
    for (i, row) in int_rows.iter().enumerate() {
        if !basis.contains(&i) {
            cone = cone.restrict(row)?;
        }
    }
    let mut facets: Vec<LinearForm> = cone
        .rays
        .iter()
        .filter(|r| r[1..].iter().any(|&x| x != 0))
        .map(|r| {
            let mut coeffs = vec![0i128; len];
            for (s, &c) in pivots.iter().enumerate() {
                coeffs[c] = -r[s + 1];
            }
            let mut all = coeffs.clone();
            all.push(r[0]);
            let v = primitive(&all);
            LinearForm { coeffs: v[..len].to_vec(), bound: v[len] }
        })
        .collect();
    facets.sort();
    facets.dedup();
    debug_assert!(facets.iter().all(|f| points.iter().all(|p| !f.slack(p).is_negative())));
    Ok(Hull { dim: k, equalities, facets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pts(v: &[&[i128]]) -> Vec<Vec<Rational>> {
        v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn square_and_simplex() {
        let h = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[1, 1]]), 7).unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 4);
        let s = convex_hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 7).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.equalities, vec![LinearForm { coeffs: vec![1, 1, 1], bound: 1 }]);
        assert_eq!(s.facets.len(), 3);
        // written in the pivot coordinates x₁, x₂ of the span
        let f = |c: [i128; 3], b| LinearForm { coeffs: c.to_vec(), bound: b };
        assert_eq!(s.facets, vec![f([-1, 0, 0], 0), f([0, -1, 0], 0), f([1, 1, 0], 1)]);
        let point = convex_hull(&pts(&[&[2, 3]]), 7).unwrap();
        assert_eq!((point.dim, point.equalities.len()), (0, 2));
        assert!(convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]]), 1).is_err());
    }
}
