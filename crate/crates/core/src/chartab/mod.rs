//! Character tables of finite groups, exact over `Q(ζ_e)` with `e = exp G`.
//!
//! Rows are irreducible characters sorted by degree (the trivial character
//! first, then lexicographically on canonical coefficient vectors); columns
//! are conjugacy classes in [`ClassPartition`] order, so the identity class
//! is column 0.

mod dixon;
pub mod idempotents;
pub mod io;
mod modp;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::elements::{ElementSet, Partition};
use crate::group::{ClassPartition, Group, GroupError, NormalSubgroup};

pub use dixon::{dixon_character_table, DixonParameters, DEFAULT_MAX_ORDER};
pub use idempotents::{check_idempotents, IdempotentReport, IDEMPOTENT_CHECK_MAX_ORDER};
pub use io::{parse_character_table, write_character_table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error("group of order {order} exceeds the character table cap {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_order: usize,
    conductor: u32,
    classes: ClassPartition,
    inverse_class: Vec<usize>,
    values: Vec<Vec<CycNum>>,
    degrees: Vec<u64>,
}

fn violation(msg: impl Into<String>) -> ChartabError {
    ChartabError::InvariantViolation(msg.into())
}

impl CharacterTable {
    /// Validates rows of character values (columns in `classes` order), then
    /// sorts the rows canonically. Values are rebased to conductor `exp G`.
    pub fn from_rows(
        g: &Group,
        classes: ClassPartition,
        rows: Vec<Vec<CycNum>>,
    ) -> Result<Self, ChartabError> {
        let n = g.order();
        let r = classes.len();
        let conductor = g.exponent() as u32;
        if rows.len() != r {
            return Err(violation(format!(
                "number of characters {} != number of classes {r}",
                rows.len()
            )));
        }
        let mut values = Vec::with_capacity(r);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != r {
                return Err(violation(format!(
                    "row {i} has {} entries, expected {r}",
                    row.len()
                )));
            }
            let row = row
                .into_iter()
                .map(|v| v.rebase(conductor))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| violation(format!("row {i}: value outside Q(ζ_{conductor}): {e}")))?;
            values.push(row);
        }
        let mut degrees = Vec::with_capacity(r);
        for (i, row) in values.iter().enumerate() {
            let d = row[0]
                .as_integer()
                .and_then(|d| d.to_u64())
                .filter(|&d| d > 0)
                .ok_or_else(|| violation(format!("degree of row {i} is not a positive integer")))?;
            degrees.push(d);
        }
        let sum_sq: u128 = degrees.iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sum_sq != n as u128 {
            return Err(violation(format!(
                "sum of squared degrees {sum_sq} != group order {n}"
            )));
        }
        let inverse_class: Vec<usize> = classes
            .reps
            .iter()
            .map(|&x| classes.class_of[g.inv(x)])
            .collect();

        let trivial = |row: &Vec<CycNum>| row.iter().all(CycNum::is_one);
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&a, &b| {
            degrees[a]
                .cmp(&degrees[b])
                .then_with(|| trivial(&values[b]).cmp(&trivial(&values[a])))
                .then_with(|| {
                    values[a]
                        .iter()
                        .zip(&values[b])
                        .map(|(x, y)| x.canonical_cmp(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        });
        let values: Vec<Vec<CycNum>> = order.iter().map(|&i| values[i].clone()).collect();
        let degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();
        let table = CharacterTable {
            group_order: n,
            conductor,
            classes,
            inverse_class,
            values,
            degrees,
        };
        table.check_invariants()?;
        Ok(table)
    }

    /// Trivial row present, exact row and column orthogonality.
    pub fn check_invariants(&self) -> Result<(), ChartabError> {
        let r = self.num_classes();
        let n = BigRational::from_integer(BigInt::from(self.group_order));
        if !self.values[0].iter().all(CycNum::is_one) {
            return Err(violation("trivial character missing"));
        }
        let conj: Vec<Vec<CycNum>> = self
            .values
            .iter()
            .map(|row| row.iter().map(CycNum::conj).collect())
            .collect();
        for i in 0..r {
            for j in i..r {
                let mut acc = CycNum::zero(self.conductor);
                for c in 0..r {
                    let size = BigRational::from_integer(BigInt::from(self.classes.sizes[c]));
                    acc = acc + (&self.values[i][c] * &conj[j][c]).scale(&size);
                }
                let expected = if i == j {
                    n.clone()
                } else {
                    BigRational::zero()
                };
                if acc != CycNum::from_rational(expected) {
                    return Err(violation(format!(
                        "row orthogonality ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for c in 0..r {
            for d in c..r {
                let mut acc = CycNum::zero(self.conductor);
                for i in 0..r {
                    acc = acc + &self.values[i][c] * &conj[i][d];
                }
                let expected = if c == d {
                    &n / BigRational::from_integer(BigInt::from(self.classes.sizes[c]))
                } else {
                    BigRational::zero()
                };
                if acc != CycNum::from_rational(expected) {
                    return Err(violation(format!(
                        "column orthogonality ({}, {})",
                        c + 1,
                        d + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn values(&self) -> &[Vec<CycNum>] {
        &self.values
    }

    pub fn value(&self, i: usize, class: usize) -> &CycNum {
        &self.values[i][class]
    }

    /// `χ_i(g)` for an element index.
    pub fn value_at(&self, i: usize, g: usize) -> &CycNum {
        &self.values[i][self.classes.class_of[g]]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// `{g : χ_i(g) = χ_i(1)}` as a raw member set.
    pub fn kernel_set(&self, i: usize) -> ElementSet {
        let row = &self.values[i];
        ElementSet::from_indices(
            self.group_order,
            (0..self.group_order).filter(|&g| row[self.classes.class_of[g]] == row[0]),
        )
    }

    /// Kernel of `χ_i`, validated as a normal subgroup of `g`.
    pub fn kernel(&self, g: &Group, i: usize) -> Result<NormalSubgroup, GroupError> {
        NormalSubgroup::new(g, self.kernel_set(i))
    }

    pub fn is_faithful(&self, i: usize) -> bool {
        self.kernel_set(i).len() == 1
    }

    /// For each element, the irreducibles `i` with `χ_i(g) ≠ χ_i(1)`.
    pub fn idempotent_supports(&self) -> IdempotentSupport {
        let r = self.num_classes();
        let class_masks = (0..r)
            .map(|c| {
                ElementSet::from_indices(
                    r,
                    (0..r).filter(|&i| self.values[i][c] != self.values[i][0]),
                )
            })
            .collect();
        IdempotentSupport {
            class_of: self.classes.class_of.clone(),
            class_masks,
        }
    }

    /// Elements grouped by equal idempotent support `E_g`.
    pub fn k_classes(&self) -> Partition {
        let s = self.idempotent_supports();
        Partition::by_key((0..self.group_order).map(|g| s.support(g).clone()))
    }
}

/// `χ^N(g)`, the regular character of `G/N` pulled back to `G`.
pub fn quotient_regular_value(g: &Group, n: &NormalSubgroup, x: usize) -> u64 {
    if n.contains(x) {
        (g.order() / n.order()) as u64
    } else {
        0
    }
}

/// Supports of `1 - χ_i(g)/χ_i(1)` over the primitive central idempotents.
#[derive(Debug, Clone)]
pub struct IdempotentSupport {
    class_of: Vec<usize>,
    class_masks: Vec<ElementSet>,
}

impl IdempotentSupport {
    pub fn support(&self, g: usize) -> &ElementSet {
        &self.class_masks[self.class_of[g]]
    }

    pub fn class_support(&self, class: usize) -> &ElementSet {
        &self.class_masks[class]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cyclotomic::parse_cyc;

    fn row(lits: &[&str]) -> Vec<CycNum> {
        lits.iter().map(|s| parse_cyc(s).unwrap()).collect()
    }

    #[test]
    fn cyclic_three() {
        let g = catalog::cyclic(3);
        let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(t.conductor(), 3);
        let expected = [
            row(&["1", "1", "1"]),
            row(&["1", "E(3)", "E(3)^2"]),
            row(&["1", "E(3)^2", "E(3)"]),
        ];
        for e in &expected {
            assert!(t.values().contains(e), "missing row {e:?}");
        }
        assert_eq!(t.values()[0], expected[0]);
    }

    #[test]
    fn symmetric_three_by_regular_representation_oracle() {
        let g = catalog::symmetric3();
        let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let cl = t.classes();
        // oracle for the degree-2 character: permutation character minus trivial,
        // counted from fixed points of the natural action
        let perm_char = |x: usize| -> i64 {
            let label = g.label(x);
            let images: Vec<usize> = label
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|s| s.parse().unwrap())
                .collect();
            images.iter().enumerate().filter(|(i, &v)| *i == v).count() as i64
        };
        for c in 0..3 {
            let expected = perm_char(cl.reps[c]) - 1;
            assert_eq!(t.value(2, c), &CycNum::from_int(expected));
        }
        // classes: identity, 3-cycles, transpositions
        assert_eq!(cl.sizes, vec![1, 2, 3]);
        assert_eq!(t.values()[2], row(&["2", "-1", "0"]));
    }

    #[test]
    fn kernels_and_supports() {
        let g = catalog::cyclic(4);
        let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(t.kernel(&g, 0).unwrap(), NormalSubgroup::whole(&g));
        // brute force: a character of C4 is faithful iff its value at the generator has order 4
        let faithful: Vec<usize> = (0..4).filter(|&i| t.is_faithful(i)).collect();
        assert_eq!(faithful.len(), 2);
        for &i in &faithful {
            assert_eq!(t.kernel(&g, i).unwrap().order(), 1);
            for x in 1..4 {
                assert!(t.idempotent_supports().support(x).contains(i));
            }
        }
        assert!(t.idempotent_supports().support(0).is_empty());
    }

    #[test]
    fn quotient_regular_character() {
        let g = catalog::cyclic(12);
        let whole = NormalSubgroup::whole(&g);
        let one = NormalSubgroup::trivial(&g);
        let c3 = g.normal_closure(&[4]).unwrap();
        assert!((0..12).all(|x| quotient_regular_value(&g, &whole, x) == 1));
        assert_eq!(quotient_regular_value(&g, &one, 0), 12);
        assert_eq!(quotient_regular_value(&g, &one, 5), 0);
        assert_eq!(quotient_regular_value(&g, &c3, 8), 4);
    }

    #[test]
    fn k_classes_of_s3() {
        let g = catalog::symmetric3();
        let t = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        let k = t.k_classes();
        let cl = g.conjugacy_classes();
        assert_eq!(k, Partition::new(cl.members.clone()));
        let trivial = catalog::trivial();
        let tt = dixon_character_table(&trivial, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(tt.k_classes().parts(), &[vec![0]]);
    }

    #[test]
    fn too_large() {
        let g = catalog::cyclic(12);
        assert_eq!(
            dixon_character_table(&g, 10).unwrap_err(),
            ChartabError::GroupTooLarge {
                order: 12,
                limit: 10
            }
        );
    }

    #[test]
    fn rejects_bad_rows() {
        let g = catalog::cyclic(3);
        let cl = g.conjugacy_classes();
        let bad = vec![
            row(&["1", "1", "1"]),
            row(&["1", "1", "1"]),
            row(&["2", "1", "1"]),
        ];
        assert!(matches!(
            CharacterTable::from_rows(&g, cl.clone(), bad),
            Err(ChartabError::InvariantViolation(m)) if m.contains("squared degrees")
        ));
        let bad = vec![
            row(&["1", "1", "1"]),
            row(&["1", "1", "1"]),
            row(&["1", "E(3)", "E(3)^2"]),
        ];
        assert!(matches!(
            CharacterTable::from_rows(&g, cl, bad),
            Err(ChartabError::InvariantViolation(m)) if m.contains("orthogonality")
        ));
    }
}
