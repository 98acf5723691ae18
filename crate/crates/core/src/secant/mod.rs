//! Dimensions of secant varieties σ_r of the moment varieties: numeric
//! Jacobian ranks, the cone bound, the integer program and its greedy
//! solution, and the packing criterion for hypersimplices.

mod ilp;
mod numeric;
mod tropical;

pub use ilp::{
    bound_expected, bound_ilp_exhaustive, certify_greedy, greedy_ilp, mask_elements,
    solve_exhaustive, solve_greedy, DualCertificate, DualEntry, IlpInstance, IlpSolution,
    MAX_ILP_DEGREE,
};
pub use numeric::{dim_secant_numeric, jacobian_rank_mod_p, NumericOptions, SecantDimension};
pub use tropical::{
    affine_span_dim, ball_size, ball_size_brute, greedy_packing, hamming, hypersimplex_vertices,
    tropical_guarantee, vertex_neighbourhood,
};

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::moments::{binomial, Partition, VarietySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    FullDegree,
    Hypersimplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRanges {
    pub n: RangeInclusive<usize>,
    pub d: RangeInclusive<usize>,
    pub r: RangeInclusive<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub dim_numeric: usize,
    pub ilp_bound: Option<i128>,
    pub expected_bound: i128,
    pub tropical_ok: Option<bool>,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Expected dimension of σ_r(M_{n,(1^d)}): nr - 1, capped by the ambient
/// projective dimension.
pub fn hypersimplex_expected(n: usize, d: usize, r: usize) -> i128 {
    let ambient = binomial(n as u64, d as u64) as i128 - 1;
    ((n * r) as i128 - 1).min(ambient)
}

/// Compares numeric dimensions with the integer-program value (full degree)
/// or with the expected dimension (hypersimplex, only 3 ≤ d ≤ n - 3).
/// Rows are ordered by (n, d, r).
pub fn conjecture_sweep(
    kind: SweepKind,
    ranges: &SweepRanges,
    opts: &NumericOptions,
) -> Result<Vec<SweepRow>> {
    let mut cases = Vec::new();
    for n in ranges.n.clone() {
        for d in ranges.d.clone() {
            if d == 0 || (kind == SweepKind::Hypersimplex && (d < 3 || d + 3 > n)) {
                continue;
            }
            for r in ranges.r.clone().filter(|&r| r >= 1) {
                cases.push((n, d, r));
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(n, d, r)| {
            let spec = match kind {
                SweepKind::FullDegree => VarietySpec::full(n, d),
                SweepKind::Hypersimplex => {
                    VarietySpec::stratum(n, Partition::new(vec![1; d]))
                }
            }
            .with_rank(r);
            let dim = dim_secant_numeric(&spec, opts)?.dim;
            Ok(match kind {
                SweepKind::FullDegree => {
                    let ilp = greedy_ilp(n, d, r)?.value;
                    SweepRow {
                        n,
                        d,
                        r,
                        dim_numeric: dim,
                        ilp_bound: Some(ilp),
                        expected_bound: bound_expected(n, d, r),
                        tropical_ok: None,
                        matches: dim as i128 == ilp,
                    }
                }
                SweepKind::Hypersimplex => {
                    let expected = hypersimplex_expected(n, d, r);
                    SweepRow {
                        n,
                        d,
                        r,
                        dim_numeric: dim,
                        ilp_bound: None,
                        expected_bound: expected,
                        tropical_ok: Some(tropical_guarantee(n, d, r)?),
                        matches: dim as i128 == expected,
                    }
                }
            })
        })
        .collect()
}
