//! Group-algebra check of the primitive central idempotents
//! `e_χ = (χ(1)/|G|) Σ_g χ(g⁻¹) g`.
//!
//! Only used for debugging small groups: every product is `O(n²)` exact
//! cyclotomic multiplications.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CharacterTable, ChartabError};
use crate::cyclotomic::CycNum;
use crate::group::Group;

pub const IDEMPOTENT_CHECK_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub products_checked: usize,
    pub class_sums_checked: usize,
}

type Element = Vec<CycNum>;

fn ratio(a: usize, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn product(g: &Group, x: &Element, y: &Element, m: u32) -> Element {
    let mut out = vec![CycNum::zero(m); g.order()];
    for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let slot = &mut out[g.mul(a, b)];
            *slot = &*slot + &(xa * yb);
        }
    }
    out
}

pub fn idempotent(g: &Group, t: &CharacterTable, i: usize) -> Vec<CycNum> {
    let coef = BigRational::new(BigInt::from(t.degrees()[i]), BigInt::from(g.order()));
    (0..g.order())
        .map(|x| t.value_at(i, g.inv(x)).scale(&coef))
        .collect()
}

/// Checks `e_χ e_ψ = δ e_χ`, `Σ e_χ = 1`, and for every class
/// `Ĉ = Σ_i (|C|/χ_i(1)) χ_i(g_C) e_{χ_i}`.
pub fn check_idempotents(g: &Group, t: &CharacterTable) -> Result<IdempotentReport, ChartabError> {
    let n = g.order();
    if n > IDEMPOTENT_CHECK_MAX_ORDER {
        return Err(ChartabError::GroupTooLarge {
            order: n,
            limit: IDEMPOTENT_CHECK_MAX_ORDER,
        });
    }
    let m = t.conductor();
    let r = t.num_classes();
    let es: Vec<Element> = (0..r).map(|i| idempotent(g, t, i)).collect();
    let zero = vec![CycNum::zero(m); n];
    let mut products_checked = 0;
    for i in 0..r {
        for j in i..r {
            let p = product(g, &es[i], &es[j], m);
            let expected = if i == j { &es[i] } else { &zero };
            if &p != expected {
                return Err(ChartabError::InternalCheckFailed(format!(
                    "idempotent product ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            products_checked += 1;
        }
    }
    let mut sum = zero.clone();
    for e in &es {
        for (s, v) in sum.iter_mut().zip(e) {
            *s = &*s + v;
        }
    }
    if sum
        .iter()
        .enumerate()
        .any(|(x, v)| !(if x == 0 { v.is_one() } else { v.is_zero() }))
    {
        return Err(ChartabError::InternalCheckFailed(
            "idempotents do not sum to 1".into(),
        ));
    }
    let classes = t.classes();
    for c in 0..r {
        let mut rhs = zero.clone();
        for (i, e) in es.iter().enumerate() {
            let coef = t
                .value(i, c)
                .scale(&ratio(classes.sizes[c], t.degrees()[i]));
            for (s, v) in rhs.iter_mut().zip(e) {
                *s = &*s + &(&coef * v);
            }
        }
        let ok = rhs.iter().enumerate().all(|(x, v)| {
            if classes.class_of[x] == c {
                v.is_one()
            } else {
                v.is_zero()
            }
        });
        if !ok {
            return Err(ChartabError::InternalCheckFailed(format!(
                "class sum expansion for class {}",
                c + 1
            )));
        }
    }
    Ok(IdempotentReport {
        products_checked,
        class_sums_checked: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chartab::{dixon_character_table, DEFAULT_MAX_ORDER};

    #[test]
    fn small_groups_pass() {
        for g in [
            catalog::symmetric3(),
            catalog::quaternion8(),
            catalog::cyclic(4),
        ] {
            let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
            let rep = check_idempotents(&g, &t).unwrap();
            let r = t.num_classes();
            assert_eq!(rep.products_checked, r * (r + 1) / 2);
        }
    }

    #[test]
    fn capped() {
        let g = catalog::unitriangular(3, 3);
        let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        assert!(matches!(
            check_idempotents(&g, &t),
            Err(ChartabError::GroupTooLarge { order: 27, .. })
        ));
    }
}
