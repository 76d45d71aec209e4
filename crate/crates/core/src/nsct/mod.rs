//! Normal supercharacter theories built from a lattice `A(S)` of normal
//! subgroups.
//!
//! Superclasses are the sets `N° = N \ ⋃_{H<N} H`; character parts are
//! `X^{N•} = X^N \ ⋃_{K>N} X^K` with `X^N = {ψ : N ⊆ ker ψ}`. The
//! supercharacter `χ^{N•} = Σ_{ψ∈X^{N•}} ψ(1)ψ` is evaluated three ways:
//! through the Möbius function of the lattice, through the top-down
//! recursion, and directly from a character table.
//!
//! Columns are listed in lattice-node order and rows in reverse node order,
//! so the trivial supercharacter comes first. The node sets
//! carrying a nonempty `N°` and a nonempty `X^{N•}` need not coincide (in
//! `C3×C3` with every normal subgroup, `G° = ∅` while `X^{G•}` holds the
//! trivial character); only their sizes agree.

pub mod render;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::cyclotomic::CycNum;
use crate::elements::{ElementSet, Partition};
use crate::group::{Group, GroupError, NormalSubgroup};
use crate::lattice::{LatticeError, NormalLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NsctError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superclass {
    pub node: usize,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPart {
    pub node: usize,
    pub irreducibles: Vec<usize>,
}

/// `N°` for every node, empty ones included.
pub fn node_superclasses(l: &NormalLattice) -> Vec<ElementSet> {
    (0..l.len())
        .map(|i| {
            let mut rest = l.node(i).members().clone();
            for h in (0..i).filter(|&h| l.lt(h, i)) {
                rest = rest.difference(l.node(h).members());
            }
            rest
        })
        .collect()
}

/// Nonempty `N°`, in node order.
pub fn superclasses(l: &NormalLattice) -> Vec<Superclass> {
    node_superclasses(l)
        .into_iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(node, s)| Superclass {
            node,
            elements: s.to_vec(),
        })
        .collect()
}

/// `X^{N•}` for every node, empty ones included.
pub fn node_char_parts(l: &NormalLattice, t: &CharacterTable) -> Vec<Vec<usize>> {
    let kernels: Vec<ElementSet> = (0..t.num_classes()).map(|i| t.kernel_set(i)).collect();
    // above[i] = nodes contained in ker χ_i
    let above: Vec<Vec<bool>> = kernels
        .iter()
        .map(|k| l.nodes().iter().map(|n| n.members().is_subset(k)).collect())
        .collect();
    (0..l.len())
        .map(|n| {
            (0..kernels.len())
                .filter(|&i| above[i][n] && !(n + 1..l.len()).any(|k| l.lt(n, k) && above[i][k]))
                .collect()
        })
        .collect()
}

/// Nonempty `X^{N•}`, in reverse node order (trivial character first).
pub fn char_parts(l: &NormalLattice, t: &CharacterTable) -> Vec<CharPart> {
    node_char_parts(l, t)
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .rev()
        .map(|(node, irreducibles)| CharPart { node, irreducibles })
        .collect()
}

/// `Σ_{M ∋ g, N ⊆ M} μ(N, M) |G|/|M|`.
pub fn values_mobius(l: &NormalLattice, n: usize, g: usize) -> i64 {
    let order = l.group_order() as i64;
    (n..l.len())
        .filter(|&m| l.leq(n, m) && l.node(m).contains(g))
        .map(|m| l.mobius(n, m) * (order / l.node(m).order() as i64))
        .sum()
}

/// `χ^{N•}(1) = Σ_{ψ∈X^{N•}} ψ(1)²` for every node.
pub fn part_degrees(l: &NormalLattice, t: &CharacterTable) -> Vec<i64> {
    node_char_parts(l, t)
        .iter()
        .map(|p| {
            p.iter()
                .map(|&i| (t.degrees()[i] * t.degrees()[i]) as i64)
                .sum()
        })
        .collect()
}

/// `χ^{N•}(g)` for every node `N`, by the recursion
/// `Σ_{ψ∈X^{N•}} ψ(1)²` if `g ∈ N`, else `-Σ_{K>N} χ^{K•}(g)`, evaluated
/// from the top of the lattice down.
pub fn recursive_column(l: &NormalLattice, degrees_sq: &[i64], g: usize) -> Vec<i64> {
    let r = l.len();
    let mut col = vec![0i64; r];
    for n in (0..r).rev() {
        col[n] = if l.node(n).contains(g) {
            degrees_sq[n]
        } else {
            -(n + 1..r)
                .filter(|&k| l.lt(n, k))
                .map(|k| col[k])
                .sum::<i64>()
        };
    }
    col
}

pub fn values_recursive(l: &NormalLattice, t: &CharacterTable, n: usize, g: usize) -> i64 {
    recursive_column(l, &part_degrees(l, t), g)[n]
}

/// `Σ_{ψ∈part} ψ(1)ψ` at a conjugacy class.
pub fn supercharacter_value(t: &CharacterTable, part: &[usize], class: usize) -> CycNum {
    part.iter().fold(CycNum::zero(t.conductor()), |acc, &i| {
        let d = num_rational::BigRational::from_integer(BigInt::from(t.degrees()[i]));
        acc + t.value(i, class).scale(&d)
    })
}

fn as_i64(v: &CycNum) -> Option<i64> {
    v.as_integer().and_then(|x| x.to_i64())
}

pub fn values_direct(t: &CharacterTable, part: &[usize], g: usize) -> Option<i64> {
    as_i64(&supercharacter_value(t, part, t.classes().class_of[g]))
}

#[derive(Debug, Clone)]
pub struct SupercharacterTheory {
    pub lattice: NormalLattice,
    pub superclasses: Vec<Superclass>,
    pub char_parts: Option<Vec<CharPart>>,
    /// Lattice node of each supercharacter row, largest first.
    pub rows: Vec<usize>,
    /// `table[row][superclass] = χ^{N•}` on that superclass.
    pub table: Vec<Vec<i64>>,
}

impl SupercharacterTheory {
    pub fn superclass_partition(&self) -> Partition {
        Partition::new(
            self.superclasses
                .iter()
                .map(|s| s.elements.clone())
                .collect(),
        )
    }

    pub fn char_partition(&self) -> Option<Partition> {
        self.char_parts
            .as_ref()
            .map(|p| Partition::new(p.iter().map(|c| c.irreducibles.clone()).collect()))
    }

    /// Nodes where exactly one of `N°`, `X^{N•}` is empty.
    pub fn unpaired_nodes(&self) -> Vec<usize> {
        let cols: Vec<usize> = self.superclasses.iter().map(|s| s.node).collect();
        (0..self.lattice.len())
            .filter(|n| cols.contains(n) != self.rows.contains(n))
            .collect()
    }
}

pub fn build_nsct(
    g: &Group,
    gens: &[NormalSubgroup],
    t: Option<&CharacterTable>,
    max_nodes: usize,
) -> Result<SupercharacterTheory, NsctError> {
    let l = NormalLattice::generate(g, gens, max_nodes)?;
    theory_from_lattice(g, l, t)
}

pub fn theory_from_lattice(
    g: &Group,
    l: NormalLattice,
    t: Option<&CharacterTable>,
) -> Result<SupercharacterTheory, NsctError> {
    let fail = |m: String| Err(NsctError::ConsistencyFailure(m));
    let classes = superclasses(&l);
    let at_one: Vec<i64> = (0..l.len()).map(|n| values_mobius(&l, n, 0)).collect();
    if let Some(n) = at_one.iter().position(|&v| v < 0) {
        return fail(format!("negative degree {} for node {n}", at_one[n]));
    }
    let rows: Vec<usize> = (0..l.len()).rev().filter(|&n| at_one[n] > 0).collect();
    if rows.len() != classes.len() {
        return fail(format!(
            "{} nonzero supercharacters but {} superclasses",
            rows.len(),
            classes.len()
        ));
    }
    let table: Vec<Vec<i64>> = rows
        .iter()
        .map(|&n| {
            classes
                .iter()
                .map(|s| values_mobius(&l, n, s.elements[0]))
                .collect()
        })
        .collect();
    for s in &classes {
        for &x in &s.elements[1..] {
            if let Some(&n) = rows
                .iter()
                .find(|&&n| values_mobius(&l, n, x) != values_mobius(&l, n, s.elements[0]))
            {
                return fail(format!(
                    "Möbius value of node {n} not constant on superclass of node {}",
                    s.node
                ));
            }
        }
    }
    let char_parts = match t {
        None => None,
        Some(t) => Some(check_against_table(g, &l, t, &rows, &at_one)?),
    };
    let theory = SupercharacterTheory {
        lattice: l,
        superclasses: classes,
        char_parts,
        rows,
        table,
    };
    if let Some(t) = t {
        let report = verify_sct(g, &theory, t);
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return fail(format!(
                "axiom '{}' failed: {}",
                c.axiom,
                c.witness.as_deref().unwrap_or("no witness")
            ));
        }
    }
    Ok(theory)
}

fn check_against_table(
    g: &Group,
    l: &NormalLattice,
    t: &CharacterTable,
    rows: &[usize],
    at_one: &[i64],
) -> Result<Vec<CharPart>, NsctError> {
    let fail = |m: String| Err(NsctError::ConsistencyFailure(m));
    if t.group_order() != g.order() {
        return fail("character table belongs to a different group".into());
    }
    let parts = node_char_parts(l, t);
    let degrees_sq = part_degrees(l, t);
    for n in 0..l.len() {
        if degrees_sq[n] != at_one[n] {
            return fail(format!(
                "degree of node {n}: Möbius {} vs Σψ(1)² {}",
                at_one[n], degrees_sq[n]
            ));
        }
    }
    let cl = t.classes();
    for (c, &rep) in cl.reps.iter().enumerate() {
        let rec = recursive_column(l, &degrees_sq, rep);
        for n in 0..l.len() {
            let mob = values_mobius(l, n, rep);
            if rec[n] != mob {
                return fail(format!(
                    "recursive value {} vs Möbius {mob} at node {n}, element {rep}",
                    rec[n]
                ));
            }
            let direct = supercharacter_value(t, &parts[n], c);
            if as_i64(&direct) != Some(mob) {
                return fail(format!(
                    "direct value {direct} vs Möbius {mob} at node {n}, element {rep}"
                ));
            }
        }
    }
    let out: Vec<CharPart> = parts
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .rev()
        .map(|(node, irreducibles)| CharPart { node, irreducibles })
        .collect();
    if out.iter().map(|p| p.node).ne(rows.iter().copied()) {
        return fail("nonempty character parts differ from nonzero Möbius rows".into());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<AxiomCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(if c.passed { "pass  " } else { "FAIL  " });
            s.push_str(c.axiom);
            if let Some(w) = &c.witness {
                s.push_str(": ");
                s.push_str(w);
            }
            s.push('\n');
        }
        s
    }
}

pub fn verify_sct(
    g: &Group,
    theory: &SupercharacterTheory,
    t: &CharacterTable,
) -> VerificationReport {
    let classes: Vec<Vec<usize>> = theory
        .superclasses
        .iter()
        .map(|s| s.elements.clone())
        .collect();
    let parts: Vec<Vec<usize>> = theory
        .char_parts
        .as_ref()
        .map(|p| p.iter().map(|c| c.irreducibles.clone()).collect())
        .unwrap_or_default();
    verify_partitions(g, t, &classes, &parts)
}

fn partition_witness(parts: &[Vec<usize>], n: usize) -> Option<String> {
    let mut seen = vec![false; n];
    for p in parts {
        if p.is_empty() {
            return Some("empty part".into());
        }
        for &x in p {
            if x >= n {
                return Some(format!("index {x} out of range"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Some(format!("index {x} in two parts"));
            }
        }
    }
    seen.iter()
        .position(|s| !s)
        .map(|x| format!("index {x} uncovered"))
}

/// Checks the supercharacter theory axioms for a pair of partitions.
pub fn verify_partitions(
    g: &Group,
    t: &CharacterTable,
    superclasses: &[Vec<usize>],
    parts: &[Vec<usize>],
) -> VerificationReport {
    let n = g.order();
    let r = t.num_classes();
    let mut checks = Vec::new();
    let mut push = |axiom, witness: Option<String>| {
        checks.push(AxiomCheck {
            axiom,
            passed: witness.is_none(),
            witness,
        })
    };
    let elem_w = partition_witness(superclasses, n).map(|w| format!("superclasses: {w}"));
    let irr_w = partition_witness(parts, r).map(|w| format!("character parts: {w}"));
    let partitions_ok = elem_w.is_none() && irr_w.is_none();
    push("identity is a superclass", {
        if superclasses.iter().any(|s| s.as_slice() == [g.identity()]) {
            None
        } else {
            Some("no part equal to {1}".into())
        }
    });
    push("equal part counts", {
        if superclasses.len() == parts.len() {
            None
        } else {
            Some(format!(
                "{} superclasses vs {} character parts",
                superclasses.len(),
                parts.len()
            ))
        }
    });
    let mut constancy = None;
    let mut integrality = None;
    if partitions_ok {
        let cl = t.classes();
        'outer: for (pi, part) in parts.iter().enumerate() {
            let vals: Vec<CycNum> = (0..r).map(|c| supercharacter_value(t, part, c)).collect();
            if integrality.is_none() {
                if let Some(c) = vals.iter().position(|v| v.as_integer().is_none()) {
                    integrality = Some(format!(
                        "part {} at element {} has value {}",
                        pi + 1,
                        cl.reps[c],
                        vals[c]
                    ));
                }
            }
            for (si, s) in superclasses.iter().enumerate() {
                let first = &vals[cl.class_of[s[0]]];
                if let Some(&x) = s.iter().find(|&&x| &vals[cl.class_of[x]] != first) {
                    constancy = Some(format!(
                        "part {} takes {} at element {} but {} at element {} (superclass {})",
                        pi + 1,
                        first,
                        s[0],
                        vals[cl.class_of[x]],
                        x,
                        si + 1
                    ));
                    break 'outer;
                }
            }
        }
    } else {
        let w = Some("skipped: partitions invalid".to_string());
        constancy = w.clone();
        integrality = w;
    }
    push("supercharacters constant on superclasses", constancy);
    push("integral values", integrality);
    push("partitions of G and Irr(G)", elem_w.or(irr_w));
    VerificationReport { checks }
}

/// Fibres of `g ↦ normal closure of {g}`.
pub fn finest_by_closure(g: &Group) -> Partition {
    let classes = g.conjugacy_classes();
    let keys: Vec<ElementSet> = classes
        .reps
        .iter()
        .map(|&x| {
            g.normal_closure(&[x])
                .expect("closure is normal")
                .members()
                .clone()
        })
        .collect();
    Partition::by_key(classes.class_of.iter().map(|&c| keys[c].clone()))
}

/// Elements grouped by equal idempotent support.
pub fn finest_by_idempotents(t: &CharacterTable) -> Partition {
    t.k_classes()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGrouping {
    pub characters: Partition,
    /// Class indices grouped by their set of rows with normalised value 1.
    pub classes: Partition,
    /// The same grouping expanded to elements.
    pub elements: Partition,
}

/// Divide each row by its degree; group columns by the rows equal to 1
/// there, and rows by the columns where they equal 1.
pub fn finest_by_table_grouping(t: &CharacterTable) -> TableGrouping {
    let r = t.num_classes();
    let ones: Vec<Vec<bool>> = (0..r)
        .map(|i| (0..r).map(|c| t.value(i, c) == t.value(i, 0)).collect())
        .collect();
    let col_keys = (0..r).map(|c| (0..r).map(|i| ones[i][c]).collect::<Vec<_>>());
    let classes = Partition::by_key(col_keys);
    let characters = Partition::by_key(ones.iter().cloned());
    let elements = classes.expand(&t.classes().members);
    TableGrouping {
        characters,
        classes,
        elements,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulPart {
    pub kernel: NormalSubgroup,
    pub irreducibles: Vec<usize>,
}

/// Irreducibles grouped by kernel, ordered by kernel.
pub fn faithful_partition(g: &Group, t: &CharacterTable) -> Result<Vec<FaithfulPart>, GroupError> {
    let mut out: Vec<FaithfulPart> = Vec::new();
    for i in 0..t.num_classes() {
        let k = t.kernel(g, i)?;
        match out.iter_mut().find(|p| p.kernel == k) {
            Some(p) => p.irreducibles.push(i),
            None => out.push(FaithfulPart {
                kernel: k,
                irreducibles: vec![i],
            }),
        }
    }
    out.sort_by(|a, b| a.kernel.cmp(&b.kernel));
    Ok(out)
}

/// The theory generated by every normal subgroup.
pub fn finest_theory(
    g: &Group,
    t: Option<&CharacterTable>,
    max_subgroups: usize,
    max_nodes: usize,
) -> Result<SupercharacterTheory, NsctError> {
    let all = g.all_normal_subgroups(max_subgroups)?;
    build_nsct(g, &all, t, max_nodes)
}
