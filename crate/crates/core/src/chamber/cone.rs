//! Pointed polyhedral cones `{t : C t ≥ 0}` with exact integer extreme rays.
//!
//! Cones are refined one halfspace at a time by the double-description
//! step; adjacency of rays uses the combinatorial zero-set test.

use crate::error::{Error, Result};
use crate::exact::{dot, primitive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cone {
    pub dim: usize,
    pub constraints: Vec<Vec<i128>>,
    pub rays: Vec<Vec<i128>>,
}

type Bits = Vec<u64>;

impl Cone {
    /// The nonnegative orthant of `R^d`.
    pub fn orthant(dim: usize) -> Self {
        let unit = |k: usize| (0..dim).map(|i| i128::from(i == k)).collect::<Vec<_>>();
        Self { dim, constraints: (0..dim).map(unit).collect(), rays: (0..dim).map(unit).collect() }
    }

    /// `{t : B t ≥ 0}` for invertible `B`; the rays are the columns of `B⁻¹`, given by the caller.
    pub fn simplicial(constraints: Vec<Vec<i128>>, rays: Vec<Vec<i128>>) -> Self {
        Self { dim: constraints.len(), constraints, rays }
    }

    pub fn values(&self, h: &[i128]) -> Result<Vec<i128>> {
        self.rays.iter().map(|r| dot(h, r)).collect()
    }

    fn zero_sets(&self) -> Result<Vec<Bits>> {
        let words = self.constraints.len().div_ceil(64);
        self.rays
            .iter()
            .map(|r| {
                let mut b = vec![0u64; words];
                for (k, c) in self.constraints.iter().enumerate() {
                    if dot(c, r)? == 0 {
                        b[k / 64] |= 1 << (k % 64);
                    }
                }
                Ok(b)
            })
            .collect()
    }

    /// Pairs `(p, q)` of rays with `v_p > 0 > v_q` spanning a 2-face.
    fn crossing_pairs(&self, vals: &[i128]) -> Result<Vec<(usize, usize)>> {
        let z = self.zero_sets()?;
        let words = z.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for p in (0..vals.len()).filter(|&p| vals[p] > 0) {
            for q in (0..vals.len()).filter(|&q| vals[q] < 0) {
                let common: Bits = (0..words).map(|w| z[p][w] & z[q][w]).collect();
                let tight = common.iter().map(|w| w.count_ones() as usize).sum::<usize>();
                if tight + 2 < self.dim {
                    continue;
                }
                let blocked = (0..self.rays.len())
                    .any(|r| r != p && r != q && (0..words).all(|w| common[w] & !z[r][w] == 0));
                if !blocked {
                    out.push((p, q));
                }
            }
        }
        Ok(out)
    }

    fn side(&self, h: &[i128], vals: &[i128], pairs: &[(usize, usize)], sign: i128) -> Result<Self> {
        let mut rays: Vec<Vec<i128>> =
            self.rays.iter().zip(vals).filter(|(_, &v)| v * sign >= 0).map(|(r, _)| r.clone()).collect();
        for &(p, q) in pairs {
            let (vp, vq) = (vals[p], -vals[q]);
            let r: Option<Vec<i128>> = self.rays[p]
                .iter()
                .zip(&self.rays[q])
                .map(|(&a, &b)| vq.checked_mul(a)?.checked_add(vp.checked_mul(b)?))
                .collect();
            let r = primitive(&r.ok_or(Error::Overflow)?);
            if !rays.contains(&r) {
                rays.push(r);
            }
        }
        let mut constraints = self.constraints.clone();
        constraints.push(h.iter().map(|x| x * sign).collect());
        Ok(Self { dim: self.dim, constraints, rays })
    }

    /// Both halves `h ≥ 0` and `h ≤ 0`, or `None` if `h` does not cut the interior.
    pub fn split(&self, h: &[i128]) -> Result<Option<(Self, Self)>> {
        let vals = self.values(h)?;
        if !(vals.iter().any(|&v| v > 0) && vals.iter().any(|&v| v < 0)) {
            return Ok(None);
        }
        let pairs = self.crossing_pairs(&vals)?;
        Ok(Some((self.side(h, &vals, &pairs, 1)?, self.side(h, &vals, &pairs, -1)?)))
    }

    /// The part with `h ≥ 0`.
    pub fn restrict(&self, h: &[i128]) -> Result<Self> {
        let vals = self.values(h)?;
        if vals.iter().all(|&v| v >= 0) {
            let mut c = self.clone();
            c.constraints.push(h.to_vec());
            return Ok(c);
        }
        let pairs = self.crossing_pairs(&vals)?;
        self.side(h, &vals, &pairs, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_cone() {
        // cone over the unit square: t0 ≥ t1 ≥ 0, t0 ≥ t2 ≥ 0 after splitting the orthant
        let c = Cone::orthant(3);
        let c = c.restrict(&[1, -1, 0]).unwrap();
        let c = c.restrict(&[1, 0, -1]).unwrap();
        let mut rays = c.rays.clone();
        rays.sort();
        assert_eq!(rays, vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]);
        let (a, b) = Cone::orthant(2).split(&[1, -1]).unwrap().unwrap();
        assert_eq!(a.rays.len(), 2);
        assert_eq!(b.rays.len(), 2);
        assert!(Cone::orthant(2).split(&[1, 1]).unwrap().is_none());
    }
}
