//! Small groups used throughout the tests, benches and CLI examples.

use crate::group::{Group, DEFAULT_MAX_ELEMENTS};

pub fn trivial() -> Group {
    Group::from_cayley(&[vec![0]])
        .unwrap()
        .group
        .with_labels(vec!["1".into()])
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// `Z/n` as a Cayley table; element `k` is `g^k`.
pub fn cyclic(n: usize) -> Group {
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let labels = (0..n)
        .map(|k| {
            if k == 0 {
                "1".into()
            } else {
                power_label("g", k)
            }
        })
        .collect();
    Group::from_cayley(&table)
        .unwrap()
        .group
        .with_labels(labels)
}

/// `C_m × C_n` with generators `a`, `b`; element `a^i b^j` has index `n·i + j`.
pub fn abelian2(m: usize, n: usize) -> Group {
    let size = m * n;
    let table: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| ((x / n + y / n) % m) * n + (x % n + y % n) % n)
                .collect()
        })
        .collect();
    let labels = (0..size)
        .map(|x| {
            let s = power_label("a", x / n) + &power_label("b", x % n);
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    Group::from_cayley(&table)
        .unwrap()
        .group
        .with_labels(labels)
}

pub fn klein_four() -> Group {
    abelian2(2, 2)
}

pub fn c3xc3() -> Group {
    abelian2(3, 3)
}

/// `C3 × C4` realised as `Z/12`: `(g^i, h^j)` is the residue `4i + 3j`.
/// Element 4 generates the `C3` factor and element 3 the `C4` factor.
pub fn c3xc4() -> Group {
    let table: Vec<Vec<usize>> = (0..12)
        .map(|a| (0..12).map(|b| (a + b) % 12).collect())
        .collect();
    let labels = (0..12)
        .map(|k| {
            let s = power_label("g", k % 3) + &power_label("h", (3 * k) % 4);
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    Group::from_cayley(&table)
        .unwrap()
        .group
        .with_labels(labels)
}

pub fn symmetric3() -> Group {
    Group::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_MAX_ELEMENTS).unwrap()
}

/// Symmetries of a square acting on its corners.
pub fn dihedral8() -> Group {
    Group::from_permutations(
        4,
        &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
        DEFAULT_MAX_ELEMENTS,
    )
    .unwrap()
}

pub fn alternating4() -> Group {
    Group::from_permutations(
        4,
        &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]],
        DEFAULT_MAX_ELEMENTS,
    )
    .unwrap()
}

/// Quaternion units; index `2u + s` for unit `u ∈ {1, i, j, k}` and sign bit `s`.
pub fn quaternion8() -> Group {
    // unit product table: (unit, sign flip)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, s) = UNIT[x / 2][y / 2];
                    2 * u + (s ^ (x % 2) ^ (y % 2))
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    Group::from_cayley(&table)
        .unwrap()
        .group
        .with_labels(labels)
}

pub fn unitriangular(n: usize, p: u32) -> Group {
    Group::unitriangular(n, p, DEFAULT_MAX_ELEMENTS).unwrap()
}

/// Position sets (1-based `(i, j)`) of the fourteen normal pattern subgroups
/// of `UT_4`, in the numbering of the usual Hasse diagram: bottom node 1 is
/// the trivial subgroup, top node 14 the whole group.
pub const UT4_PATTERNS: [&[(usize, usize)]; 14] = [
    &[],
    &[(1, 4)],
    &[(1, 3), (1, 4)],
    &[(1, 4), (2, 4)],
    &[(1, 2), (1, 3), (1, 4)],
    &[(1, 3), (1, 4), (2, 4)],
    &[(1, 4), (2, 4), (3, 4)],
    &[(1, 2), (1, 3), (1, 4), (2, 4)],
    &[(1, 3), (1, 4), (2, 3), (2, 4)],
    &[(1, 3), (1, 4), (2, 4), (3, 4)],
    &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
    &[(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)],
    &[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
    &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
];

/// Covering pairs between the pattern subgroups above (1-based node numbers).
pub const UT4_HASSE: [(usize, usize); 21] = [
    (1, 2),
    (2, 3),
    (2, 4),
    (4, 7),
    (4, 6),
    (3, 6),
    (3, 5),
    (5, 8),
    (6, 8),
    (6, 9),
    (6, 10),
    (7, 10),
    (10, 13),
    (9, 13),
    (9, 11),
    (8, 11),
    (11, 14),
    (12, 14),
    (13, 14),
    (8, 12),
    (10, 12),
];

/// The fixed list of small groups exercised by the consistency suites.
pub fn standard() -> Vec<(&'static str, Group)> {
    vec![
        ("trivial", trivial()),
        ("C2", cyclic(2)),
        ("C4", cyclic(4)),
        ("C6", cyclic(6)),
        ("C2xC2", klein_four()),
        ("S3", symmetric3()),
        ("D4", dihedral8()),
        ("Q8", quaternion8()),
        ("A4", alternating4()),
        ("C3xC3", c3xc3()),
        ("C3xC4", c3xc4()),
        ("UT3(2)", unitriangular(3, 2)),
        ("UT3(3)", unitriangular(3, 3)),
        ("UT4(2)", unitriangular(4, 2)),
    ]
}
