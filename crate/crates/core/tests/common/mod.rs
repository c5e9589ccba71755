#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qmarginal::exact::{rat, Rational};
use qmarginal::schubert::{schubert_poly, IntPolynomial, Permutation};

/// Every reduced word of `w`, by peeling descents.
pub fn reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![vec![]];
    }
    (1..w.n())
        .filter(|&i| w.has_descent(i))
        .flat_map(|i| {
            reduced_words(&w.times_s(i)).into_iter().map(move |mut word| {
                word.push(i);
                word
            })
        })
        .collect()
}

pub type Poly = BTreeMap<Vec<u16>, Rational>;

pub fn to_map(p: &IntPolynomial) -> Poly {
    p.terms().map(|(m, c)| (m.clone(), rat(c))).collect()
}

/// `h_k(x_{o+k}, …, x_{o+d})` as a term map over `total` variables.
pub fn complete_tail(total: usize, o: usize, d: usize, k: usize) -> Poly {
    let vars: Vec<usize> = (o + k - 1..o + d).collect();
    let mut out = Poly::new();
    let mut stack = vec![(0usize, k, vec![0u16; total])];
    while let Some((at, left, e)) = stack.pop() {
        if left == 0 {
            out.insert(e, Rational::one());
            continue;
        }
        if at == vars.len() {
            continue;
        }
        for take in 0..=left {
            let mut e2 = e.clone();
            e2[vars[at]] += take as u16;
            stack.push((at + 1, left - take, e2));
        }
    }
    out
}

/// Normal form modulo the symmetric ideals of every site block.
pub fn normal_form(p: &Poly, dims: &[usize]) -> Poly {
    let total: usize = dims.iter().sum();
    let mut rules = Vec::new();
    let mut o = 0;
    for &d in dims {
        for k in 1..=d {
            rules.push((o + k - 1, k as u16, complete_tail(total, o, d, k)));
        }
        o += d;
    }
    let mut p = p.clone();
    loop {
        let hit = p.iter().find_map(|(m, c)| {
            rules.iter().find(|(v, k, _)| m[*v] >= *k).map(|r| (m.clone(), *c, r))
        });
        let Some((m, c, (v, k, g))) = hit else { return p };
        let mut q = m.clone();
        q[*v] -= k;
        for (gm, gc) in g {
            let e: Vec<u16> = q.iter().zip(gm).map(|(a, b)| a + b).collect();
            let entry = p.entry(e.clone()).or_insert_with(Rational::zero);
            *entry -= c * gc;
            if entry.is_zero() {
                p.remove(&e);
            }
        }
    }
}

pub fn tuples(dims: &[usize]) -> Vec<Vec<Permutation>> {
    dims.iter().fold(vec![vec![]], |acc, &d| {
        acc.into_iter()
            .flat_map(|t| {
                Permutation::all(d).into_iter().map(move |u| {
                    let mut t = t.clone();
                    t.push(u);
                    t
                })
            })
            .collect()
    })
}

/// Coefficients of `f` in the basis `Π S_{u_s}(x^{(s)})` of the quotient ring, by exact elimination.
pub fn expand(f: &IntPolynomial, dims: &[usize]) -> BTreeMap<Vec<Permutation>, Rational> {
    let total: usize = dims.iter().sum();
    let basis: Vec<(Vec<Permutation>, Poly)> = tuples(dims)
        .into_iter()
        .map(|us| {
            let mut o = 0;
            let mut prod = IntPolynomial::one(total);
            for (u, &d) in us.iter().zip(dims) {
                let images: Vec<IntPolynomial> = (1..=d).map(|k| IntPolynomial::x(total, o + k)).collect();
                prod = &prod * &schubert_poly(u).substitute(&images).unwrap();
                o += d;
            }
            let nf = normal_form(&to_map(&prod), dims);
            (us, nf)
        })
        .collect();
    let target = normal_form(&to_map(f), dims);
    let mut rows: Vec<Vec<u16>> =
        basis.iter().flat_map(|(_, b)| b.keys().cloned()).chain(target.keys().cloned()).collect();
    rows.sort();
    rows.dedup();
    let cols = basis.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = basis.iter().map(|(_, b)| b.get(m).copied().unwrap_or_default()).collect();
            row.push(target.get(m).copied().unwrap_or_default());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..a.len()).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, k);
        let inv = a[r][c].recip();
        a[r].iter_mut().for_each(|x| *x *= inv);
        for k in 0..a.len() {
            if k != r && !a[k][c].is_zero() {
                let f = a[k][c];
                let pr = a[r].clone();
                a[k].iter_mut().zip(&pr).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    assert_eq!(pivots.len(), cols, "basis products are independent");
    assert!(a[r..].iter().all(|row| row[cols].is_zero()), "target lies in the span");
    pivots.iter().enumerate().map(|(k, &c)| (basis[c].0.clone(), a[k][cols])).collect()
}

