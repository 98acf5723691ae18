//! Lifting binomials of a stratum with partition λ to the stratum of
//! η = (e, e-1, ..., 1), where e is the length of λ, and transporting
//! binomials between strata of different n by symmetry.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::binomial::{binomial_in_ideal, GradedBinomial};
use crate::error::{Error, Result};
use crate::moments::{MomentIndex, Partition, VarietySpec};

/// η = (e, e-1, ..., 1) for a partition of length e.
pub fn staircase(lam: &Partition) -> Partition {
    Partition::new((1..=lam.len() as u32).rev().collect::<Vec<_>>())
}

/// The label in η that replaces the part at `pos` (0-based) of λ.
fn label_of(lam: &Partition, pos: usize) -> u32 {
    (lam.len() - pos) as u32
}

/// φ: relabels an η-index to a λ-index, e ↦ λ_1, e-1 ↦ λ_2, ...
pub fn phi_index(lam: &Partition, idx: &MomentIndex) -> MomentIndex {
    let e = lam.len() as u32;
    let parts = lam.parts();
    MomentIndex::new(
        idx.exponents()
            .iter()
            .map(|&j| if j == 0 { 0 } else { parts[(e - j) as usize] })
            .collect(),
    )
}

pub fn phi_binomial(lam: &Partition, b: &GradedBinomial) -> GradedBinomial {
    b.map_indices(|m| phi_index(lam, m))
}

/// Bipartite matching between plus rows and minus rows where edge (α, β, c)
/// exists when both rows still hold an unassigned `value` in column c.
/// Returns, for each plus row α, the matched (β, c).
fn perfect_matching(adj: &[Vec<(usize, usize)>], right: usize) -> Option<Vec<(usize, usize)>> {
    fn augment(
        a: usize,
        adj: &[Vec<(usize, usize)>],
        seen: &mut [bool],
        owner: &mut [Option<(usize, usize)>],
    ) -> bool {
        for &(b, col) in &adj[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            let free = match owner[b] {
                None => true,
                Some((a2, _)) => augment(a2, adj, seen, owner),
            };
            if free {
                owner[b] = Some((a, col));
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; right];
    for a in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(a, adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![(0, 0); adj.len()];
    for (b, slot) in owner.iter().enumerate() {
        let (a, col) = slot.expect("perfect matching");
        out[a] = (b, col);
    }
    Some(out)
}

/// Constructs a binomial d in the ideal of M_{n,η} with φ(d) = b, for a
/// binomial b in the ideal of M_{n,λ}.
///
/// The distinct values of λ are handled one at a time. For the t-th copy of
/// a value, a perfect matching between plus and minus rows over columns where
/// both still carry that value decides where the corresponding η label goes.
pub fn lift_binomial_phi(n: usize, lam: &Partition, b: &GradedBinomial) -> Result<GradedBinomial> {
    let spec = VarietySpec::stratum(n, lam.clone());
    spec.validate()?;
    if !binomial_in_ideal(&spec, b) {
        return Err(Error::NotInIdeal);
    }
    let rows = b.degree();
    let plus: Vec<&[u32]> = b.plus.iter().map(MomentIndex::exponents).collect();
    let minus: Vec<&[u32]> = b.minus.iter().map(MomentIndex::exponents).collect();
    let mut out_plus = vec![vec![0u32; n]; rows];
    let mut out_minus = vec![vec![0u32; n]; rows];

    for (pos, &value) in lam.parts().iter().enumerate() {
        let label = label_of(lam, pos);
        let adj: Vec<Vec<(usize, usize)>> = (0..rows)
            .map(|a| {
                let mut edges = Vec::new();
                for col in 0..n {
                    if plus[a][col] != value || out_plus[a][col] != 0 {
                        continue;
                    }
                    for bb in 0..rows {
                        if minus[bb][col] == value && out_minus[bb][col] == 0 {
                            edges.push((bb, col));
                        }
                    }
                }
                edges
            })
            .collect();
        let matching = perfect_matching(&adj, rows).ok_or(Error::MatchingFailure)?;
        for (a, &(bb, col)) in matching.iter().enumerate() {
            out_plus[a][col] = label;
            out_minus[bb][col] = label;
        }
    }
    let lifted = GradedBinomial {
        plus: sorted(out_plus),
        minus: sorted(out_minus),
    };
    let eta_spec = VarietySpec::stratum(n, staircase(lam));
    if !binomial_in_ideal(&eta_spec, &lifted) || phi_binomial(lam, &lifted).unsigned() != b.unsigned() {
        return Err(Error::MatchingFailure);
    }
    Ok(lifted)
}

fn sorted(rows: Vec<Vec<u32>>) -> Vec<MomentIndex> {
    let mut v: Vec<MomentIndex> = rows.into_iter().map(MomentIndex::new).collect();
    v.sort();
    v
}

/// Pads every binomial to n slots and applies all permutations of the slots.
/// The result is deduplicated up to sign and sorted.
pub fn orbit_lift(gens: &[GradedBinomial], n: usize) -> Result<Vec<GradedBinomial>> {
    let mut out = BTreeSet::new();
    for g in gens {
        let n0 = g.plus[0].n();
        if n0 > n {
            return Err(Error::PreconditionFailed(format!(
                "cannot lift a binomial in {n0} slots to {n} slots"
            )));
        }
        let padded = g.map_indices(|m| m.pad(n - n0));
        for perm in (0..n).permutations(n) {
            let moved = padded.map_indices(|m| m.permuted(&perm));
            if moved.plus != moved.minus {
                out.insert(moved.unsigned());
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn phi_relabels() {
        let lam = p("8,5,5,4");
        let idx: MomentIndex = "4310200".parse().unwrap();
        assert_eq!(phi_index(&lam, &idx).exponents(), &[8, 5, 4, 0, 5, 0, 0]);
    }

    #[test]
    fn lift_of_hypersimplex_quadric() {
        let lam = p("11");
        let b = GradedBinomial::parse("1100 0011 - 1010 0101").unwrap();
        let d = lift_binomial_phi(4, &lam, &b).unwrap();
        assert!(binomial_in_ideal(&VarietySpec::stratum(4, p("21")), &d));
        assert_eq!(phi_binomial(&lam, &d).unsigned(), b.unsigned());
    }

    #[test]
    fn lift_rejects_non_members() {
        let b = GradedBinomial::parse("1100 0011 - 1100 0101").unwrap();
        assert_eq!(lift_binomial_phi(4, &p("11"), &b), Err(Error::NotInIdeal));
    }

    #[test]
    fn matching_handles_repeated_columns() {
        // two plus rows and two minus rows share both columns
        let adj = vec![vec![(0, 0), (1, 0)], vec![(0, 1)]];
        let m = perfect_matching(&adj, 2).unwrap();
        assert_eq!(m[1], (0, 1));
        assert_eq!(m[0], (1, 0));
    }

    #[test]
    fn orbit_of_m33_cubic() {
        let g = GradedBinomial::parse("012 120 201 - 021 210 102").unwrap();
        // the cubic is invariant up to sign under all of S_3
        assert_eq!(orbit_lift(&[g], 3).unwrap().len(), 1);
    }
}
