//! Finite groups given by multiplication tables.
//!
//! Every [`Group`] uses element index 0 for the identity. Groups can be built
//! from a Cayley table, from permutation generators, or as the unitriangular
//! group `UT_n(F_p)`; subgroup machinery (conjugacy classes, normal closures,
//! products, intersections, the list of all normal subgroups) works on the
//! table alone.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elements::ElementSet;

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;
pub const DEFAULT_MAX_NORMAL_SUBGROUPS: usize = 10_000;
/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    Empty,
    NotSquare {
        row: usize,
        len: usize,
    },
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    NoIdentity,
    NoInverse {
        element: usize,
    },
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Empty => write!(f, "empty table"),
            AxiomFailure::NotSquare { row, len } => {
                write!(f, "row {row} has {len} entries, table is not square")
            }
            AxiomFailure::EntryOutOfRange { row, col, value } => {
                write!(f, "entry [{row}][{col}] = {value} is out of range")
            }
            AxiomFailure::NoIdentity => write!(f, "no two-sided identity"),
            AxiomFailure::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            AxiomFailure::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(AxiomFailure),
    #[error("generator {generator} is not a bijection on 0..{degree}")]
    NotABijection { generator: usize, degree: usize },
    #[error("group exceeds the cap of {limit} {what}")]
    GroupTooLarge { limit: usize, what: &'static str },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("unitriangular matrix size {0} outside 2..=5")]
    UnsupportedSize(usize),
    #[error("pattern subgroups need a group built as UT_n(F_p)")]
    NotUnitriangular,
    #[error("position ({0},{1}) is not strictly above the diagonal")]
    InvalidPosition(usize, usize),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("not a subgroup: {a}*{b} = {product} escapes the set")]
    NotASubgroup { a: usize, b: usize, product: usize },
    #[error("not normal: {g}*{h}*{g}^-1 = {conjugate} escapes the set")]
    NotNormal {
        g: usize,
        h: usize,
        conjugate: usize,
    },
}

/// Coordinates of `UT_n(F_p)` elements: the strictly-upper entries read
/// row-major. Positions are 1-based `(i, j)` with `i < j`.
#[derive(Debug, Clone)]
pub struct Unitriangular {
    pub size: usize,
    pub prime: u32,
    pub positions: Vec<(usize, usize)>,
    entries: Vec<Vec<u32>>,
}

impl Unitriangular {
    pub fn entries(&self, g: usize) -> &[u32] {
        &self.entries[g]
    }

    pub fn slot(&self, pos: (usize, usize)) -> Option<usize> {
        self.positions.iter().position(|&p| p == pos)
    }

    /// Positions at which some member of `set` has a nonzero entry.
    pub fn support(&self, set: &ElementSet) -> Vec<(usize, usize)> {
        (0..self.positions.len())
            .filter(|&t| set.iter().any(|g| self.entries[g][t] != 0))
            .map(|t| self.positions[t])
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
    unitriangular: Option<Unitriangular>,
}

/// Result of [`Group::from_cayley`]: the group plus the relabeling applied to
/// move the identity to index 0 (`relabeling[old] = new`).
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    pub group: Group,
    pub relabeling: Vec<usize>,
}

impl CayleyGroup {
    pub fn is_identity_relabeling(&self) -> bool {
        self.relabeling.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// A normal subgroup given by its membership mask.
///
/// Ordered by `(order, member list)`, the canonical order used for lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    members: ElementSet,
}

impl NormalSubgroup {
    /// Validates that `members` is a subgroup of `g` closed under conjugation.
    pub fn new(g: &Group, members: ElementSet) -> Result<Self, GroupError> {
        g.check_subgroup(&members)?;
        g.check_normal(&members)?;
        Ok(NormalSubgroup { members })
    }

    pub(crate) fn new_unchecked(members: ElementSet) -> Self {
        NormalSubgroup { members }
    }

    pub fn trivial(g: &Group) -> Self {
        NormalSubgroup {
            members: ElementSet::from_indices(g.order(), [0]),
        }
    }

    pub fn whole(g: &Group) -> Self {
        NormalSubgroup {
            members: ElementSet::full(g.order()),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl Ord for NormalSubgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for NormalSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Conjugacy classes, ordered by `(size, least member)`; class 0 is `{1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Group {
    /// Validates a Cayley table. If the identity is not at index 0 it is
    /// swapped there and the swap is reported in `relabeling`.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<CayleyGroup, GroupError> {
        Self::from_cayley_seeded(table, 0)
    }

    /// As [`Group::from_cayley`]; `seed` drives the sampled associativity check
    /// used above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`] elements.
    pub fn from_cayley_seeded(table: &[Vec<usize>], seed: u64) -> Result<CayleyGroup, GroupError> {
        let n = table.len();
        let fail = |f| Err(GroupError::NotAGroup(f));
        if n == 0 {
            return fail(AxiomFailure::Empty);
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return fail(AxiomFailure::NotSquare {
                    row: r,
                    len: row.len(),
                });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return fail(AxiomFailure::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g));
        let Some(e) = identity else {
            return fail(AxiomFailure::NoIdentity);
        };
        let mut relabeling: Vec<usize> = (0..n).collect();
        relabeling.swap(0, e);
        // relabeling is an involution, so it is its own inverse
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = table[relabeling[a]][relabeling[b]];
                mul[a * n + b] = relabeling[v] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let h = (0..n).find(|&h| mul[g * n + h] == 0);
            match h {
                Some(h) if mul[h * n + g] == 0 => inv[g] = h as u32,
                _ => {
                    return fail(AxiomFailure::NoInverse {
                        element: relabeling[g],
                    })
                }
            }
        }
        let group = Group {
            order: n,
            mul,
            inv,
            labels: None,
            unitriangular: None,
        };
        if let Some((a, b, c)) = group.associativity_witness(seed) {
            return fail(AxiomFailure::NotAssociative {
                a: relabeling[a],
                b: relabeling[b],
                c: relabeling[c],
            });
        }
        Ok(CayleyGroup { group, relabeling })
    }

    fn associativity_witness(&self, seed: u64) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let fails = |a, b, c| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..SAMPLED_ASSOCIATIVITY_TRIPLES)
                .map(|_| {
                    (
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                    )
                })
                .find(|&(a, b, c)| fails(a, b, c))
        }
    }

    /// Closure of permutation generators (0-based image lists).
    ///
    /// Products are "apply left factor first": `(g*h)(x) = h(g(x))`.
    /// Elements are numbered in breadth-first discovery order from the
    /// identity, extending each element by the generators in the given order.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        max_elements: usize,
    ) -> Result<Group, GroupError> {
        for (i, gen) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = gen.len() == degree
                && gen
                    .iter()
                    .all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(GroupError::NotABijection {
                    generator: i,
                    degree,
                });
            }
        }
        let compose =
            |g: &[u32], h: &[u32]| -> Vec<u32> { g.iter().map(|&x| h[x as usize]).collect() };
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as u32).collect())
            .collect();
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for gen in &gens {
                let p = compose(&elements[i], gen);
                if !index.contains_key(&p) {
                    if elements.len() >= max_elements {
                        return Err(GroupError::GroupTooLarge {
                            limit: max_elements,
                            what: "elements",
                        });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose(&elements[a], &elements[b])] as u32;
            }
        }
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u32)
            .collect();
        let labels = elements
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(u32::to_string).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        Ok(Group {
            order: n,
            mul,
            inv,
            labels: Some(labels),
            unitriangular: None,
        })
    }

    /// `UT_n(F_p)`: upper unitriangular `n × n` matrices over the prime field.
    ///
    /// Element indices follow the lexicographic order of the strictly-upper
    /// entry vector read row-major, so index 0 is the identity matrix.
    pub fn unitriangular(n: usize, p: u32, max_elements: usize) -> Result<Group, GroupError> {
        if !(2..=5).contains(&n) {
            return Err(GroupError::UnsupportedSize(n));
        }
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let positions: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        let k = positions.len();
        let order = (p as u128).checked_pow(k as u32);
        let order = match order {
            Some(o) if o <= max_elements as u128 => o as usize,
            _ => {
                return Err(GroupError::GroupTooLarge {
                    limit: max_elements,
                    what: "elements",
                })
            }
        };
        let decode = |mut idx: usize| -> Vec<u32> {
            let mut e = vec![0u32; k];
            for t in (0..k).rev() {
                e[t] = (idx % p as usize) as u32;
                idx /= p as usize;
            }
            e
        };
        let encode =
            |e: &[u32]| -> usize { e.iter().fold(0, |acc, &x| acc * p as usize + x as usize) };
        let slot =
            |i: usize, j: usize| -> usize { positions.iter().position(|&q| q == (i, j)).unwrap() };
        let slots: Vec<Vec<usize>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| if i < j { slot(i, j) } else { usize::MAX })
                    .collect()
            })
            .collect();
        let entries: Vec<Vec<u32>> = (0..order).map(decode).collect();
        let at = |e: &[u32], i: usize, j: usize| -> u64 {
            match i.cmp(&j) {
                Ordering::Equal => 1,
                Ordering::Greater => 0,
                Ordering::Less => e[slots[i - 1][j - 1]] as u64,
            }
        };
        let mut mul = vec![0u32; order * order];
        let mut prod = vec![0u32; k];
        for a in 0..order {
            for b in 0..order {
                for (t, &(i, j)) in positions.iter().enumerate() {
                    let s: u64 = (i..=j)
                        .map(|l| at(&entries[a], i, l) * at(&entries[b], l, j))
                        .sum();
                    prod[t] = (s % p as u64) as u32;
                }
                mul[a * order + b] = encode(&prod) as u32;
            }
        }
        let inv = (0..order)
            .map(|a| (0..order).find(|&b| mul[a * order + b] == 0).unwrap() as u32)
            .collect();
        let labels = entries
            .iter()
            .map(|e| {
                let parts: Vec<String> = e.iter().map(u32::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Ok(Group {
            order,
            mul,
            inv,
            labels: Some(labels),
            unitriangular: Some(Unitriangular {
                size: n,
                prime: p,
                positions,
                entries,
            }),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g h g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn unitriangular_info(&self) -> Option<&Unitriangular> {
        self.unitriangular.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_subgroup(&self, set: &ElementSet) -> Result<(), GroupError> {
        if !set.contains(0) {
            return Err(GroupError::NotASubgroup {
                a: 0,
                b: 0,
                product: 0,
            });
        }
        let members = set.to_vec();
        for &a in &members {
            for &b in &members {
                let p = self.mul(a, b);
                if !set.contains(p) {
                    return Err(GroupError::NotASubgroup { a, b, product: p });
                }
            }
        }
        Ok(())
    }

    pub fn check_normal(&self, set: &ElementSet) -> Result<(), GroupError> {
        for g in 0..self.order {
            for h in set.iter() {
                let c = self.conjugate(g, h);
                if !set.contains(c) {
                    return Err(GroupError::NotNormal { g, h, conjugate: c });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal_subgroup(&self, set: &ElementSet) -> bool {
        set.universe() == self.order
            && self.check_subgroup(set).is_ok()
            && self.check_normal(set).is_ok()
    }

    /// Orbits under conjugation, ordered by `(size, least member)`.
    pub fn conjugacy_classes(&self) -> ClassPartition {
        let n = self.order;
        let mut assigned = vec![false; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                assigned[y] = true;
            }
            classes.push(orbit);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &y in c {
                class_of[y] = i;
            }
        }
        ClassPartition {
            class_of,
            reps: classes.iter().map(|c| c[0]).collect(),
            sizes: classes.iter().map(Vec::len).collect(),
            members: classes,
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::from_indices(self.order, [0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Smallest normal subgroup containing `seed`: the subgroup generated by
    /// all conjugates of the seed elements.
    pub fn normal_closure(&self, seed: &[usize]) -> Result<NormalSubgroup, GroupError> {
        let mut conjugates = ElementSet::empty(self.order);
        for &s in seed {
            if s >= self.order {
                return Err(GroupError::ElementOutOfRange(s));
            }
            for g in 0..self.order {
                conjugates.insert(self.conjugate(g, s));
            }
        }
        let gens = conjugates.to_vec();
        Ok(NormalSubgroup::new_unchecked(
            self.generated_subgroup(&gens),
        ))
    }

    /// `NH`, the join in the normal subgroup lattice.
    pub fn product(&self, n: &NormalSubgroup, h: &NormalSubgroup) -> NormalSubgroup {
        if n.is_subgroup_of(h) {
            return h.clone();
        }
        if h.is_subgroup_of(n) {
            return n.clone();
        }
        let mut set = ElementSet::empty(self.order);
        let hs = h.members().to_vec();
        for a in n.members().iter() {
            for &b in &hs {
                set.insert(self.mul(a, b));
            }
        }
        NormalSubgroup::new_unchecked(set)
    }

    pub fn intersection(&self, n: &NormalSubgroup, h: &NormalSubgroup) -> NormalSubgroup {
        NormalSubgroup::new_unchecked(n.members().intersection(h.members()))
    }

    /// Every normal subgroup exactly once, sorted by `(order, member list)`.
    ///
    /// Each normal subgroup is the join of the normal closures of the classes
    /// it contains, so the join-closure of the class closures is complete.
    pub fn all_normal_subgroups(&self, cap: usize) -> Result<Vec<NormalSubgroup>, GroupError> {
        let classes = self.conjugacy_classes();
        let mut found: Vec<NormalSubgroup> = vec![NormalSubgroup::trivial(self)];
        let mut seen: HashSet<ElementSet> = found.iter().map(|n| n.members().clone()).collect();
        let too_large = || GroupError::GroupTooLarge {
            limit: cap,
            what: "normal subgroups",
        };
        for &rep in &classes.reps[1..] {
            let c = self.normal_closure(&[rep])?;
            if seen.insert(c.members().clone()) {
                found.push(c);
            }
        }
        if found.len() > cap {
            return Err(too_large());
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let p = self.product(&found[i], &found[j]);
                if seen.insert(p.members().clone()) {
                    found.push(p);
                    if found.len() > cap {
                        return Err(too_large());
                    }
                }
            }
            i += 1;
        }
        found.sort();
        Ok(found)
    }

    /// The pattern subgroup of `UT_n(F_p)` supported on `positions`
    /// (1-based, `i < j`), validated to be a normal subgroup.
    pub fn pattern_subgroup(
        &self,
        positions: &[(usize, usize)],
    ) -> Result<NormalSubgroup, GroupError> {
        let ut = self
            .unitriangular
            .as_ref()
            .ok_or(GroupError::NotUnitriangular)?;
        let mut allowed = vec![false; ut.positions.len()];
        for &(i, j) in positions {
            let slot = ut.slot((i, j)).ok_or(GroupError::InvalidPosition(i, j))?;
            allowed[slot] = true;
        }
        let members = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&g| {
                ut.entries[g]
                    .iter()
                    .zip(&allowed)
                    .all(|(&e, &ok)| ok || e == 0)
            }),
        );
        NormalSubgroup::new(self, members)
    }
}
