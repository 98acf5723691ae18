//! Dimensions, degrees and binomial ideals of the toric moment varieties.

mod binomial;
mod fiber;
mod lift;

pub use binomial::{binomial_in_ideal, GradedBinomial};
pub use fiber::{
    all_in_ideal, default_max_degree, ideal_generators_up_to, ideal_generators_with_cap, minimal_subset,
    moves_connect_fibers, GeneratorReport, DEFAULT_FIBER_CAP,
};
pub use lift::{lift_binomial_phi, orbit_lift, phi_binomial, phi_index, staircase};

use crate::error::{Error, Result};
use crate::linalg::rank_rational;
use crate::moments::{moment_count, reduce_partition, AMatrix, Partition, VarietySpec};

/// dim M_{n,d} = min(nd - 1, binom(n+d-1, d) - 1).
pub fn dim_toric(n: usize, d: usize) -> u128 {
    let nd = (n * d) as u128;
    (nd.saturating_sub(1)).min(moment_count(n, d).saturating_sub(1))
}

/// dim M_{n,λ} = (n - 1) s, where s + 1 is the number of distinct values of
/// λ padded with zeros to n slots.
pub fn dim_toric_stratum(n: usize, lam: &Partition) -> Result<u128> {
    let red = reduce_partition(n, lam)?;
    Ok((n as u128 - 1) * red.s as u128)
}

/// Dimension as rank(A) - 1, computed from the A-matrix.
pub fn dim_from_a_matrix(spec: &VarietySpec) -> Result<usize> {
    let a = AMatrix::new(spec)?;
    Ok(rank_rational(&a.to_rational()).saturating_sub(1))
}

/// Eulerian number: permutations of [m] with exactly k descents.
pub fn eulerian(m: usize, k: usize) -> Result<u128> {
    if m == 0 {
        return Ok(u128::from(k == 0));
    }
    if k >= m {
        return Ok(0);
    }
    let mut row: Vec<u128> = vec![1];
    for len in 2..=m {
        let mut next = vec![0u128; len];
        for (j, slot) in next.iter_mut().enumerate() {
            let keep = row.get(j).copied().unwrap_or(0);
            let grow = if j > 0 { row.get(j - 1).copied().unwrap_or(0) } else { 0 };
            let a = keep
                .checked_mul((j + 1) as u128)
                .ok_or(Error::Overflow("eulerian"))?;
            let b = grow
                .checked_mul((len - j) as u128)
                .ok_or(Error::Overflow("eulerian"))?;
            *slot = a.checked_add(b).ok_or(Error::Overflow("eulerian"))?;
        }
        row = next;
    }
    Ok(row[k])
}

/// Degree of M_{n,(1^d)}, the normalized volume of the hypersimplex Δ(n,d).
/// This counts permutations of [n-1] with d-1 descents.
pub fn hypersimplex_degree(n: usize, d: usize) -> Result<u128> {
    if d == 0 || d >= n {
        return Err(Error::DegreeOutOfRange { n, d });
    }
    eulerian(n - 1, d - 1)
}
