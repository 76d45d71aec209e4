//! The closure `A(S)` of a family of normal subgroups under products and
//! intersections, with its order relation, Hasse diagram and Möbius function.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::json;
use thiserror::Error;

use crate::elements::ElementSet;
use crate::group::{Group, GroupError, NormalSubgroup};

pub const DEFAULT_MAX_LATTICE: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("generator {index} is not a normal subgroup: {source}")]
    NotNormal { index: usize, source: GroupError },
    #[error("lattice closure exceeds {limit} nodes")]
    TooLarge { limit: usize },
}

#[derive(Debug, Clone)]
pub struct NormalLattice {
    group_order: usize,
    nodes: Vec<NormalSubgroup>,
    leq: Vec<Vec<bool>>,
    mobius: Vec<Vec<i64>>,
    hasse: Vec<(usize, usize)>,
    unitriangular_labels: Option<Vec<Vec<(usize, usize)>>>,
}

impl NormalLattice {
    /// Validates each set as a normal subgroup, then closes.
    pub fn closure(g: &Group, sets: &[ElementSet], max_nodes: usize) -> Result<Self, LatticeError> {
        let gens = sets
            .iter()
            .enumerate()
            .map(|(index, s)| {
                NormalSubgroup::new(g, s.clone())
                    .map_err(|source| LatticeError::NotNormal { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(g, &gens, max_nodes)
    }

    /// Smallest family containing `gens`, `1` and `G`, closed under pairwise
    /// product and intersection.
    pub fn generate(
        g: &Group,
        gens: &[NormalSubgroup],
        max_nodes: usize,
    ) -> Result<Self, LatticeError> {
        let mut nodes: Vec<NormalSubgroup> = Vec::new();
        let mut index: HashMap<NormalSubgroup, usize> = HashMap::new();
        let mut push =
            |n: NormalSubgroup, nodes: &mut Vec<NormalSubgroup>| -> Result<(), LatticeError> {
                if !index.contains_key(&n) {
                    if nodes.len() == max_nodes {
                        return Err(LatticeError::TooLarge { limit: max_nodes });
                    }
                    index.insert(n.clone(), nodes.len());
                    nodes.push(n);
                }
                Ok(())
            };
        push(NormalSubgroup::trivial(g), &mut nodes)?;
        push(NormalSubgroup::whole(g), &mut nodes)?;
        for n in gens {
            push(n.clone(), &mut nodes)?;
        }
        // every pair (i, j) with j < i is combined exactly once
        let mut i = 0;
        while i < nodes.len() {
            for j in 0..i {
                let p = g.product(&nodes[i], &nodes[j]);
                let m = g.intersection(&nodes[i], &nodes[j]);
                push(p, &mut nodes)?;
                push(m, &mut nodes)?;
            }
            i += 1;
        }
        nodes.sort();
        Ok(Self::from_sorted_nodes(g, nodes))
    }

    fn from_sorted_nodes(g: &Group, nodes: Vec<NormalSubgroup>) -> Self {
        let r = nodes.len();
        let leq: Vec<Vec<bool>> = (0..r)
            .map(|i| (0..r).map(|j| nodes[i].is_subgroup_of(&nodes[j])).collect())
            .collect();
        let mobius = mobius_matrix(&leq);
        let hasse = hasse_edges(&leq);
        let unitriangular_labels = g
            .unitriangular_info()
            .map(|ut| nodes.iter().map(|n| ut.support(n.members())).collect());
        NormalLattice {
            group_order: g.order(),
            nodes,
            leq,
            mobius,
            hasse,
            unitriangular_labels,
        }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NormalSubgroup] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NormalSubgroup {
        &self.nodes[i]
    }

    pub fn index_of(&self, n: &NormalSubgroup) -> Option<usize> {
        self.nodes.binary_search(n).ok()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn mobius(&self, i: usize, j: usize) -> i64 {
        self.mobius[i][j]
    }

    pub fn mobius_rows(&self) -> &[Vec<i64>] {
        &self.mobius
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Index of the smallest node containing both.
    pub fn join(&self, i: usize, j: usize) -> usize {
        (0..self.len())
            .find(|&k| self.leq[i][k] && self.leq[j][k])
            .expect("lattice has a top")
    }

    /// Index of the largest node contained in both.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        (0..self.len())
            .rev()
            .find(|&k| self.leq[k][i] && self.leq[k][j])
            .expect("lattice has a bottom")
    }

    /// Pattern positions of each node, for lattices in `UT_n(F_p)`.
    pub fn pattern_labels(&self) -> Option<&[Vec<(usize, usize)>]> {
        self.unitriangular_labels.as_deref()
    }

    pub fn node_label(&self, i: usize) -> String {
        match &self.unitriangular_labels {
            Some(l) => format!("{} {}", self.nodes[i].order(), format_positions(&l[i])),
            None => self.nodes[i].order().to_string(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let label = match &self.unitriangular_labels {
                Some(l) => format!("{}\\n{}", self.nodes[i].order(), format_positions(&l[i])),
                None => self.nodes[i].order().to_string(),
            };
            writeln!(s, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for &(a, b) in &self.hasse {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "nodes": self.nodes.iter().map(|n| json!({
                "order": n.order(),
                "members": n.members().to_vec(),
            })).collect::<Vec<_>>(),
            "hasse": self.hasse.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "mobius": self.mobius,
        })
    }
}

pub fn format_positions(pos: &[(usize, usize)]) -> String {
    let inner: Vec<String> = pos.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", inner.join(","))
}

/// `μ(s,s) = 1` and `μ(s,u) = -Σ_{s<t≤u} μ(t,u)`; zero off the order relation.
///
/// `leq` must be a partial order whose indices extend it linearly
/// (`leq[i][j]` implies `i <= j`).
pub fn mobius_matrix(leq: &[Vec<bool>]) -> Vec<Vec<i64>> {
    let r = leq.len();
    let mut mu = vec![vec![0i64; r]; r];
    for u in 0..r {
        mu[u][u] = 1;
        for s in (0..u).rev() {
            if !leq[s][u] {
                continue;
            }
            let sum: i64 = (s + 1..=u)
                .filter(|&t| leq[s][t] && leq[t][u])
                .map(|t| mu[t][u])
                .sum();
            mu[s][u] = -sum;
        }
    }
    mu
}

/// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
pub fn hasse_edges(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let r = leq.len();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            if leq[a][b] && !(a + 1..b).any(|k| leq[a][k] && leq[k][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::DEFAULT_MAX_NORMAL_SUBGROUPS;
    use proptest::prelude::*;

    fn chain(r: usize) -> Vec<Vec<bool>> {
        (0..r).map(|i| (0..r).map(|j| i <= j).collect()).collect()
    }

    fn check_delta(leq: &[Vec<bool>], mu: &[Vec<i64>]) {
        let r = leq.len();
        for s in 0..r {
            for u in 0..r {
                if !leq[s][u] {
                    continue;
                }
                let sum: i64 = (0..r)
                    .filter(|&t| leq[s][t] && leq[t][u])
                    .map(|t| mu[t][u])
                    .sum();
                assert_eq!(sum, i64::from(s == u), "delta identity at ({s}, {u})");
            }
        }
    }

    #[test]
    fn small_posets() {
        assert_eq!(mobius_matrix(&chain(1)), vec![vec![1]]);
        let mu = mobius_matrix(&chain(3));
        assert_eq!((mu[0][1], mu[1][2], mu[0][2]), (-1, -1, 0));
        let diamond = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let mu = mobius_matrix(&diamond);
        assert_eq!(mu[0][3], 1);
        check_delta(&diamond, &mu);
        assert_eq!(hasse_edges(&diamond), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(hasse_edges(&chain(2)), vec![(0, 1)]);
    }

    #[test]
    fn empty_generators() {
        let g = catalog::symmetric3();
        let l = NormalLattice::generate(&g, &[], DEFAULT_MAX_LATTICE).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.hasse(), &[(0, 1)]);
        let t = catalog::trivial();
        let l = NormalLattice::generate(&t, &[], DEFAULT_MAX_LATTICE).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.mobius_rows(), &[vec![1]]);
    }

    #[test]
    fn c3xc4_diamond() {
        let g = catalog::c3xc4();
        let a = g.normal_closure(&[4]).unwrap();
        let b = g.normal_closure(&[3]).unwrap();
        let l = NormalLattice::generate(&g, &[a, b], DEFAULT_MAX_LATTICE).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.hasse().len(), 4);
        assert_eq!(l.mobius(0, 3), 1);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        let dot = l.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        let j = l.to_json();
        assert_eq!(j["nodes"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn rejects_non_normal() {
        let g = catalog::symmetric3();
        let transposition = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        let h = ElementSet::from_indices(6, [0, transposition]);
        let err =
            NormalLattice::closure(&g, &[ElementSet::full(6), h], DEFAULT_MAX_LATTICE).unwrap_err();
        assert!(matches!(err, LatticeError::NotNormal { index: 1, .. }));
    }

    #[test]
    fn ut4_patterns_reproduce_the_diagram() {
        let g = catalog::unitriangular(4, 2);
        let pats: Vec<NormalSubgroup> = catalog::UT4_PATTERNS
            .iter()
            .map(|p| g.pattern_subgroup(p).unwrap())
            .collect();
        let l = NormalLattice::generate(&g, &pats[1..13], DEFAULT_MAX_LATTICE).unwrap();
        assert_eq!(l.len(), 14);
        let idx: Vec<usize> = pats.iter().map(|p| l.index_of(p).unwrap()).collect();
        let mut expected: Vec<(usize, usize)> = catalog::UT4_HASSE
            .iter()
            .map(|&(a, b)| (idx[a - 1], idx[b - 1]))
            .collect();
        expected.sort();
        assert_eq!(l.hasse(), expected.as_slice());
        check_delta(&l.leq, &l.mobius);
        assert!(l.node_label(l.top()).starts_with("64 {(1,2)"));
    }

    #[test]
    fn closure_is_closed_and_idempotent() {
        for (_, g) in catalog::standard() {
            let all = g
                .all_normal_subgroups(DEFAULT_MAX_NORMAL_SUBGROUPS)
                .unwrap();
            let some: Vec<_> = all.iter().step_by(3).cloned().collect();
            let l = NormalLattice::generate(&g, &some, DEFAULT_MAX_LATTICE).unwrap();
            for i in 0..l.len() {
                for j in 0..l.len() {
                    assert!(l.index_of(&g.product(l.node(i), l.node(j))).is_some());
                    assert!(l.index_of(&g.intersection(l.node(i), l.node(j))).is_some());
                }
            }
            let again = NormalLattice::generate(&g, l.nodes(), DEFAULT_MAX_LATTICE).unwrap();
            assert_eq!(again.nodes(), l.nodes());
            check_delta(&l.leq, &l.mobius);
        }
    }

    proptest! {
        #[test]
        fn mobius_inversion(f in proptest::collection::vec(-1000i64..1000, 14), subset in 0u32..4096) {
            let g = catalog::unitriangular(4, 2);
            let pats: Vec<NormalSubgroup> = catalog::UT4_PATTERNS[1..13]
                .iter()
                .enumerate()
                .filter(|(k, _)| subset >> k & 1 == 1)
                .map(|(_, p)| g.pattern_subgroup(p).unwrap())
                .collect();
            let l = NormalLattice::generate(&g, &pats, DEFAULT_MAX_LATTICE).unwrap();
            let r = l.len();
            let f = &f[..r];
            // g(t) = Σ_{s≤t} f(s), recovered as Σ_{s≤t} g(s) μ(s,t)
            let up: Vec<i64> = (0..r).map(|t| (0..r).filter(|&s| l.leq(s, t)).map(|s| f[s]).sum()).collect();
            for t in 0..r {
                let back: i64 = (0..r).filter(|&s| l.leq(s, t)).map(|s| up[s] * l.mobius(s, t)).sum();
                prop_assert_eq!(back, f[t]);
            }
            // dual: h(s) = Σ_{t≥s} f(t), recovered as Σ_{t≥s} μ(s,t) h(t)
            let down: Vec<i64> = (0..r).map(|s| (0..r).filter(|&t| l.leq(s, t)).map(|t| f[t]).sum()).collect();
            for s in 0..r {
                let back: i64 = (0..r).filter(|&t| l.leq(s, t)).map(|t| l.mobius(s, t) * down[t]).sum();
                prop_assert_eq!(back, f[s]);
            }
        }
    }
}
