//! Burnside–Dixon character table computation.
//!
//! The class sums span the centre of the group algebra; their structure
//! constants `a_ijk` define commuting matrices `M_i[j][k] = a_ijk` whose common
//! eigenvectors are the central characters `ω_χ(C_k) = |C_k| χ(g_k) / χ(1)`.
//! Everything is done modulo a prime `p ≡ 1 (mod exp G)` where those matrices
//! split, and each character value is lifted back to `Q(ζ_e)` through the
//! eigenvalue multiplicities of `ρ(g)`, which are small nonnegative integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::modp::{dixon_prime, inv_mod, nullspace, pow_mod, primitive_root};
use super::{CharacterTable, ChartabError};
use crate::cyclotomic::CycNum;
use crate::group::Group;

pub const DEFAULT_MAX_ORDER: usize = 2000;

/// Prime and root of unity used for the modular computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DixonParameters {
    pub exponent: u64,
    pub prime: u64,
    /// A primitive `exponent`-th root of unity mod `prime`; it stands in for `ζ_e`.
    pub root: u64,
}

impl DixonParameters {
    pub fn for_group(g: &Group) -> Self {
        let e = g.exponent() as u64;
        let p = dixon_prime(e, g.order() as u64);
        let root = pow_mod(primitive_root(p), (p - 1) / e, p);
        DixonParameters {
            exponent: e,
            prime: p,
            root,
        }
    }
}

pub fn dixon_character_table(g: &Group, max_order: usize) -> Result<CharacterTable, ChartabError> {
    let n = g.order();
    if n > max_order {
        return Err(ChartabError::GroupTooLarge {
            order: n,
            limit: max_order,
        });
    }
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let params = DixonParameters::for_group(g);
    let p = params.prime;
    let e = params.exponent;

    // a[i][j][k] = #{(x, y) in C_i x C_j : x y = rep_k}
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for &x in &classes.members[i] {
            let xi = g.inv(x);
            for (k, &z) in classes.reps.iter().enumerate() {
                let y = g.mul(xi, z);
                a[i][classes.class_of[y]][k] += 1;
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|c| {
            let mut v = vec![0u64; r];
            v[c] = 1;
            v
        })
        .collect()];
    for m in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_space(m, &basis, p)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(ChartabError::InternalCheckFailed(
            "class matrices did not split into one-dimensional eigenspaces".into(),
        ));
    }

    let inverse_class: Vec<usize> = classes
        .reps
        .iter()
        .map(|&x| classes.class_of[g.inv(x)])
        .collect();
    // power_class[k][l] = class of rep_k^l
    let power_class: Vec<Vec<usize>> = classes
        .reps
        .iter()
        .map(|&x| {
            let mut acc = 0;
            (0..e)
                .map(|_| {
                    let c = classes.class_of[acc];
                    acc = g.mul(acc, x);
                    c
                })
                .collect()
        })
        .collect();

    let n_mod = n as u64 % p;
    let e_inv = inv_mod(e % p, p);
    let root_inv = inv_mod(params.root, p);
    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(ChartabError::InternalCheckFailed(
                "eigenvector vanishes at the identity class".into(),
            ));
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| x * scale % p).collect();
        // χ(1)^2 · Σ_k ω_k ω_{k*} / |C_k| = |G|
        let s = (0..r).fold(0, |acc, k| {
            let t = omega[k] * omega[inverse_class[k]] % p
                * inv_mod(classes.sizes[k] as u64 % p, p)
                % p;
            (acc + t) % p
        });
        if s == 0 {
            return Err(ChartabError::InternalCheckFailed(
                "degenerate degree sum".into(),
            ));
        }
        let d2 = n_mod * inv_mod(s, p) % p;
        let degree = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| ChartabError::InternalCheckFailed("no integral degree".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|k| degree % p * omega[k] % p * inv_mod(classes.sizes[k] as u64 % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            // multiplicity of the eigenvalue ζ^j of ρ(rep_k)
            let mut poly = vec![BigRational::zero(); e as usize];
            let mut total = 0u64;
            for (j, slot) in poly.iter_mut().enumerate() {
                let step = pow_mod(root_inv, j as u64, p);
                let mut z = 1u64;
                let mut acc = 0u64;
                for &c in &power_class[k] {
                    acc = (acc + chi_mod[c] * z) % p;
                    z = z * step % p;
                }
                let mult = acc * e_inv % p;
                if mult > degree {
                    return Err(ChartabError::InternalCheckFailed(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                total += mult;
                *slot = BigRational::from_integer(BigInt::from(mult));
            }
            if total != degree {
                return Err(ChartabError::InternalCheckFailed(
                    "eigenvalue multiplicities do not sum to the degree".into(),
                ));
            }
            row.push(CycNum::from_poly(e as u32, poly));
        }
        rows.push(row);
    }
    CharacterTable::from_rows(g, classes, rows).map_err(|err| match err {
        ChartabError::InvariantViolation(msg) => ChartabError::InternalCheckFailed(msg),
        other => other,
    })
}

/// Splits the span of `basis` (column vectors) into eigenspaces of `m`.
fn split_space(
    m: &[Vec<u64>],
    basis: &[Vec<u64>],
    p: u64,
) -> Result<Vec<Vec<Vec<u64>>>, ChartabError> {
    let r = m.len();
    let d = basis.len();
    // mb[:, t] = M · basis[t]
    let mb: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..r)
                .map(|row| (0..r).fold(0, |acc, col| (acc + m[row][col] * b[col]) % p))
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut dims = 0;
    for lambda in 0..p {
        if dims == d {
            break;
        }
        // (M - λ) B as an r × d matrix
        let shifted: Vec<Vec<u64>> = (0..r)
            .map(|row| {
                (0..d)
                    .map(|t| (mb[t][row] + p - lambda * basis[t][row] % p) % p)
                    .collect()
            })
            .collect();
        let kernel = nullspace(&shifted, d, p);
        if kernel.is_empty() {
            continue;
        }
        dims += kernel.len();
        let vectors = kernel
            .iter()
            .map(|x| {
                (0..r)
                    .map(|row| (0..d).fold(0, |acc, t| (acc + x[t] * basis[t][row]) % p))
                    .collect()
            })
            .collect();
        found.push(vectors);
    }
    if dims != d {
        return Err(ChartabError::InternalCheckFailed(
            "class matrix is not diagonalizable mod p".into(),
        ));
    }
    Ok(found)
}
