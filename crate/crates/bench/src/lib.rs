//! Benchmark fixtures.

use nsct_core::catalog;
use nsct_core::group::{Group, NormalSubgroup};
use nsct_core::CycNum;

/// UT4(2) with its fourteen normal pattern subgroups.
pub fn ut4_with_patterns() -> (Group, Vec<NormalSubgroup>) {
    let g = catalog::unitriangular(4, 2);
    let pats = catalog::UT4_PATTERNS
        .iter()
        .map(|p| g.pattern_subgroup(p).unwrap())
        .collect();
    (g, pats)
}

/// A dense element of Q(ζ_m): Σ (k + 1) ζ_m^k.
pub fn dense_cyc(m: u32) -> CycNum {
    (0..i64::from(m)).fold(CycNum::zero(m), |acc, k| {
        acc + CycNum::root_of_unity(m, k) * CycNum::from_int(k + 1)
    })
}
