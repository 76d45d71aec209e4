//! Normal supercharacter theories of finite groups.

pub mod catalog;
pub mod chartab;
pub mod cyclotomic;
pub mod elements;
pub mod group;
pub mod lattice;
pub mod nsct;

pub use chartab::{CharacterTable, ChartabError};
pub use cyclotomic::{format_cyc, parse_cyc, CycNum};
pub use elements::{ElementSet, Partition};
pub use group::{ClassPartition, Group, GroupError, NormalSubgroup};
pub use lattice::{LatticeError, NormalLattice};
pub use nsct::{build_nsct, NsctError, SupercharacterTheory};
