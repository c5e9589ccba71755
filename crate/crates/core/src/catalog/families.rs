//! Inequality data of every catalogued family.

use super::record::InequalityRecord;

pub(super) fn le1(id: &str, c: &[i64], bound: i64) -> InequalityRecord {
    InequalityRecord::le(id, vec![c.to_vec()], vec![], bound)
}

fn unit(len: usize, k: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[k] = c;
    v
}

/// `λ_i ≤ Σ_{j≠i} λ_j` on the smaller eigenvalue of each qubit.
pub(super) fn polygon(n: usize) -> Vec<InequalityRecord> {
    (0..n)
        .map(|i| {
            let lhs = (0..n).map(|j| vec![0, if j == i { 1 } else { -1 }]).collect();
            InequalityRecord::le("POLYGON", lhs, vec![], 0)
        })
        .collect()
}

pub(super) fn bravyi() -> Vec<InequalityRecord> {
    let id = "BRAVYI_2Q";
    let r = |a: i64, b: i64, rhs: [i64; 4]| InequalityRecord::le(id, vec![vec![0, a], vec![0, b]], rhs.to_vec(), 0);
    vec![
        r(-1, 0, [0, 0, -1, -1]),
        r(0, -1, [0, 0, -1, -1]),
        r(-1, -1, [0, -1, -1, -2]),
        r(1, -1, [1, 0, -1, 0]),
        r(1, -1, [0, 1, 0, -1]),
        r(-1, 1, [1, 0, -1, 0]),
        r(-1, 1, [0, 1, 0, -1]),
    ]
}

/// The seven three-qutrit templates `(a, b, c)` meaning `a·λᵃ ≤ b·λᵇ + c·λᶜ`, spectra increasing.
const FRANZ_TEMPLATES: [[[i64; 3]; 3]; 7] = [
    [[1, 1, 0], [1, 1, 0], [1, 1, 0]],
    [[1, 0, 1], [1, 1, 0], [1, 0, 1]],
    [[0, 1, 1], [1, 1, 0], [0, 1, 1]],
    [[1, 2, 0], [1, 2, 0], [1, 2, 0]],
    [[2, 1, 0], [1, 2, 0], [2, 1, 0]],
    [[0, 2, 1], [1, 2, 0], [0, 2, 1]],
    [[0, 2, 1], [2, 1, 0], [0, 1, 2]],
];

pub(super) fn franz() -> Vec<InequalityRecord> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<InequalityRecord> = Vec::new();
    for (t, tpl) in FRANZ_TEMPLATES.iter().enumerate() {
        for p in perms {
            let mut lhs = vec![vec![0; 3]; 3];
            lhs[p[0]] = tpl[0].to_vec();
            lhs[p[1]] = tpl[1].iter().map(|x| -x).collect();
            lhs[p[2]] = tpl[2].iter().map(|x| -x).collect();
            let rec = InequalityRecord::le("FRANZ_3QUTRIT", lhs, vec![], 0).with_note(format!(
                "template {} with (a,b,c) = ({},{},{})",
                t + 1,
                ["A", "B", "C"][p[0]],
                ["A", "B", "C"][p[1]],
                ["A", "B", "C"][p[2]]
            ));
            if !out.iter().any(|r| r.same_constraint(&rec)) {
                out.push(rec);
            }
        }
    }
    out
}

/// Partial sums of each local spectrum against partial sums of the global one.
pub(super) fn basic(dims: &[usize]) -> Vec<InequalityRecord> {
    let total: usize = dims.iter().product();
    let mut out = Vec::new();
    for (s, &d) in dims.iter().enumerate() {
        for k in 1..=d {
            let lhs = dims
                .iter()
                .enumerate()
                .map(|(t, &e)| (0..e).map(|i| i64::from(t == s && i < k)).collect())
                .collect();
            let rhs = (0..total).map(|i| i64::from(i < k * total / d)).collect();
            out.push(InequalityRecord::le("BASIC", lhs, rhs, 0).with_note(format!("site {} k={k}", s + 1)));
        }
    }
    out
}

/// `(Δ coefficients, global coefficients)` with `Δᵢ = λ⁽ⁱ⁾₁ − λ⁽ⁱ⁾₂`, `Δ₁ ≤ Δ₂ ≤ Δ₃`.
const THREE_QUBIT: [([i64; 3], [i64; 8]); 10] = [
    ([0, 0, 1], [1, 1, 1, 1, -1, -1, -1, -1]),
    ([0, 1, 1], [2, 2, 0, 0, 0, 0, -2, -2]),
    ([1, 1, 1], [3, 1, 1, 1, -1, -1, -1, -3]),
    ([-1, 1, 1], [1, 3, 1, 1, -1, -1, -1, -3]),
    ([-1, 1, 1], [3, 1, 1, 1, -1, -1, -3, -1]),
    ([1, 1, 2], [4, 2, 2, 0, 0, -2, -2, -4]),
    ([-1, 1, 2], [2, 4, 2, 0, 0, -2, -2, -4]),
    ([-1, 1, 2], [4, 2, 0, 2, 0, -2, -2, -4]),
    ([-1, 1, 2], [4, 2, 2, 0, -2, 0, -2, -4]),
    ([-1, 1, 2], [4, 2, 2, 0, 0, -2, -4, -2]),
];

pub(super) fn three_qubit_mixed() -> Vec<InequalityRecord> {
    THREE_QUBIT
        .iter()
        .map(|(d, g)| {
            let lhs = d.iter().map(|&c| vec![c, -c]).collect();
            InequalityRecord::le("THREE_QUBIT_MIXED", lhs, g.to_vec(), 0)
        })
        .collect()
}

pub(super) fn pauli(r: usize) -> Vec<InequalityRecord> {
    (0..r).flat_map(|i| [le1("PAULI", &unit(r, i, 1), 1), le1("PAULI", &unit(r, i, -1), 0)]).collect()
}

/// Even degeneracy for two particles (`n = 2`) or two holes (`n = r − 2`).
pub(super) fn two_particle(r: usize, n: usize) -> Vec<InequalityRecord> {
    let id = "TWO_PARTICLE_PURE";
    let pair = |i: usize| {
        let mut v = vec![0; r];
        v[i] = 1;
        v[i + 1] = -1;
        InequalityRecord::eq(id, vec![v], vec![], 0)
    };
    let holes = n != 2;
    let mut out = Vec::new();
    if holes && r % 2 == 1 {
        out.push(InequalityRecord::eq(id, vec![unit(r, 0, 1)], vec![], 1));
        out.extend((1..r).step_by(2).map(pair));
    } else {
        out.extend((0..r - 1).step_by(2).map(pair));
        if r % 2 == 1 {
            out.push(InequalityRecord::eq(id, vec![unit(r, r - 1, 1)], vec![], 0));
        }
    }
    out
}

pub(super) fn bd6() -> Vec<InequalityRecord> {
    let e = |c: &[i64]| InequalityRecord::eq("BD6", vec![c.to_vec()], vec![], 1);
    vec![
        e(&[1, 0, 0, 0, 0, 1]),
        e(&[0, 1, 0, 0, 1, 0]),
        e(&[0, 0, 1, 1, 0, 0]),
        le1("BD6", &[0, 0, 0, 1, -1, -1], 0),
    ]
}

pub(super) fn f7_bd() -> Vec<InequalityRecord> {
    [[1, 6, 7], [2, 5, 7], [3, 4, 7], [3, 5, 6]]
        .iter()
        .map(|s| {
            let mut c = vec![0; 7];
            for &i in s {
                c[i - 1] = -1;
            }
            le1("F7_BD", &c, -1)
        })
        .collect()
}

pub(super) fn f7_list() -> Vec<InequalityRecord> {
    [
        [-4, 3, 3, 3, 3, -4, -4],
        [3, -4, 3, 3, -4, 3, -4],
        [3, 3, -4, -4, 3, 3, -4],
        [3, 3, -4, 3, -4, -4, 3],
    ]
    .iter()
    .map(|c| le1("F7_LIST", c, 2))
    .collect()
}

const F8_31: [([i64; 8], i64); 31] = [
    ([3, -1, -1, -1, -1, -1, -1, 3], 1),
    ([-1, 1, 1, 1, 1, -1, -1, -1], 1),
    ([1, 1, -1, -1, 1, 1, -1, -1], 1),
    ([1, 1, -1, 1, -1, -1, 1, -1], 1),
    ([1, -1, 1, 1, -1, 1, -1, -1], 1),
    ([2, 1, -2, -1, 0, -1, 0, 1], 1),
    ([2, -1, 0, -1, 0, 1, -2, 1], 1),
    ([0, 0, 1, 2, -2, -1, -1, 1], 1),
    ([1, 2, -2, 0, -1, -1, 0, 1], 1),
    ([2, -1, 0, 1, -2, -1, 0, 1], 1),
    ([5, 5, -7, -3, -3, 1, 1, 1], 3),
    ([5, -3, -3, 1, 1, 5, -7, 1], 3),
    ([5, 1, -3, 1, -3, 1, -3, 1], 3),
    ([1, 1, 1, 5, -3, -3, -3, 1], 3),
    ([1, 5, -3, 1, 1, -3, -3, 1], 3),
    ([9, 1, -7, -7, -7, 1, 1, 9], 3),
    ([9, -7, -7, 1, 1, 1, -7, 9], 3),
    ([7, -1, -1, -1, -1, 7, -9, -1], 5),
    ([7, -1, -1, 7, -9, -1, -1, -1], 5),
    ([7, 7, -9, -1, -1, -1, -1, -1], 5),
    ([-1, -1, 7, 7, -1, -1, -9, -1], 5),
    ([-1, 7, -1, 7, -1, -9, -1, -1], 5),
    ([-1, 7, -1, -1, 7, -1, -9, -1], 5),
    ([-3, 5, 5, 13, -11, -3, -11, 5], 7),
    ([5, 13, -11, 5, -11, -3, -3, 5], 7),
    ([5, -3, 5, 13, -11, -11, -3, 5], 7),
    ([5, 13, -11, -3, 5, -11, -3, 5], 7),
    ([19, 11, -21, -13, -5, -5, 3, 11], 9),
    ([19, -13, -5, -5, 3, 11, -21, 11], 9),
    ([11, 19, -21, -5, -13, -5, 3, 11], 9),
    ([-5, 3, 11, 19, -21, -13, -5, 11], 9),
];

/// Group sizes of the ∧³C⁸ list, in order.
pub const F8_GROUPS: [usize; 9] = [1, 4, 5, 2, 3, 2, 6, 4, 4];

pub(super) fn f8_31() -> Vec<InequalityRecord> {
    let mut group = 0;
    let mut left = F8_GROUPS[0];
    F8_31
        .iter()
        .map(|(c, b)| {
            if left == 0 {
                group += 1;
                left = F8_GROUPS[group];
            }
            left -= 1;
            le1("F8_31", c, *b).with_note(format!("group {}", group + 1))
        })
        .collect()
}

const F84_14: [[i64; 8]; 14] = [
    [5, 1, 1, -3, 1, -3, -3, 1],
    [1, 1, 5, -3, 1, 1, -3, -3],
    [1, 1, 1, 1, 5, -3, -3, -3],
    [1, 5, 1, -3, 1, -3, 1, -3],
    [5, -3, 1, 1, 1, 1, -3, -3],
    [5, 1, 1, -3, -3, 1, 1, -3],
    [5, 1, -3, 1, 1, -3, 1, -3],
    [-1, 3, 3, -1, 3, -1, -1, -5],
    [3, 3, -1, -1, 3, -5, -1, -1],
    [3, 3, 3, -5, -1, -1, -1, -1],
    [3, -1, 3, -1, 3, -1, -5, -1],
    [3, 3, -1, -1, -1, -1, 3, -5],
    [3, -1, -1, 3, 3, -1, -1, -5],
    [3, -1, 3, -1, -1, 3, -1, -5],
];

pub(super) fn f84_14() -> Vec<InequalityRecord> {
    F84_14
        .iter()
        .enumerate()
        .map(|(k, c)| le1("F84_14", c, 4).with_note(format!("group {}", k / 7 + 1)))
        .collect()
}

/// Orbitals entering each `x_k` with a plus sign; the other four enter with a minus.
pub const F84_ABS_PLUS: [[usize; 4]; 7] =
    [[1, 2, 3, 4], [1, 2, 5, 6], [1, 3, 5, 7], [1, 4, 6, 7], [2, 3, 6, 7], [2, 4, 5, 7], [3, 4, 5, 6]];

/// `Σ ±x_k ≤ 4` over all 128 sign choices.
pub(super) fn f84_abs() -> Vec<InequalityRecord> {
    let x: Vec<Vec<i64>> = F84_ABS_PLUS
        .iter()
        .map(|plus| (1..=8).map(|i| if plus.contains(&i) { 1 } else { -1 }).collect())
        .collect();
    (0..128u32)
        .map(|signs| {
            let mut c = vec![0i64; 8];
            for (k, xk) in x.iter().enumerate() {
                let s = if signs >> k & 1 == 1 { -1 } else { 1 };
                for i in 0..8 {
                    c[i] += s * xk[i];
                }
            }
            le1("F84_ABS", &c, 4).with_note(format!("signs {signs:07b}"))
        })
        .collect()
}

pub(super) fn w2h4_mixed() -> Vec<InequalityRecord> {
    let id = "W2H4_MIXED";
    let r = |l: [i64; 4], n: [i64; 6]| InequalityRecord::le(id, vec![l.to_vec()], n.to_vec(), 0);
    let mut out = vec![
        r([2, 0, 0, 0], [1, 1, 1, 0, 0, 0]),
        r([0, 0, 0, -2], [0, 0, 0, -1, -1, -1]),
        r([2, 0, 0, -2], [1, 1, 0, 0, -1, -1]),
        r([1, 1, -1, -1], [1, 0, 0, 0, 0, -1]),
        r([1, -1, 1, -1], [1, 0, 0, 0, -1, 0]),
        r([1, -1, 1, -1], [0, 1, 0, 0, 0, -1]),
    ];
    for sign in [1, -1] {
        for n in [[1, 0, 0, -1, 0, 0], [0, 1, 0, 0, -1, 0], [0, 0, 1, 0, 0, -1]] {
            out.push(r([sign, -sign, -sign, sign], n));
        }
    }
    for l in [[2, 0, -2, 0], [0, 2, 0, -2]] {
        for n in [[1, 0, 1, 0, -1, -1], [1, 1, 0, -1, 0, -1]] {
            out.push(r(l, n));
        }
    }
    for l in [[2, -2, 0, 0], [0, 0, 2, -2]] {
        for n in [[1, 0, 1, -1, 0, -1], [0, 1, 1, 0, -1, -1], [1, 1, 0, -1, -1, 0]] {
            out.push(r(l, n));
        }
    }
    out
}

/// Correlators ordered `(⟨a₁b₁⟩, ⟨a₁b₂⟩, ⟨a₂b₁⟩, ⟨a₂b₂⟩)`.
pub(super) fn chsh() -> Vec<InequalityRecord> {
    let mut out = Vec::new();
    for sign in [1, -1] {
        for minus in [1, 0, 2, 3] {
            let c: Vec<i64> = (0..4).map(|k| if k == minus { sign } else { -sign }).collect();
            out.push(le1("CHSH_16", &c, 2));
        }
    }
    for k in 0..4 {
        for sign in [1, -1] {
            out.push(le1("CHSH_16", &unit(4, k, sign), 1));
        }
    }
    out
}
