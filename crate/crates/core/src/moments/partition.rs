use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::index::{enumerate_moments, MomentIndex};
use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Zero parts are dropped and the rest sorted decreasingly, so
    /// `(7,7,3,0)` and `(3,7,7)` give the same partition.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut p: Vec<u32> = parts.into().into_iter().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition(p)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Distinct parts, increasing.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn of_index(idx: &MomentIndex) -> Self {
        Partition(idx.nonzero_parts())
    }

    pub fn check_fits(&self, n: usize) -> Result<()> {
        if self.len() > n {
            Err(Error::PartitionTooLong { len: self.len(), n })
        } else {
            Ok(())
        }
    }

    /// Multiplicities of the distinct values of the partition padded with
    /// zeros to length n, keyed by value (zero included when present).
    fn padded_multiplicities(&self, n: usize) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_insert(0) += 1;
        }
        if n > self.len() {
            counts.insert(0, n - self.len());
        }
        counts
    }

    /// |N_λ| = n! / (k_0! k_1! ... k_s!).
    pub fn stratum_size(&self, n: usize) -> Result<u128> {
        self.check_fits(n)?;
        let mut size: u128 = 1;
        let mut placed = 0u128;
        for (_, k) in self.padded_multiplicities(n) {
            // multiply by binom(placed + k, k) incrementally, staying exact
            for t in 1..=k as u128 {
                placed += 1;
                size = size
                    .checked_mul(placed)
                    .ok_or(Error::Overflow("stratum size"))?
                    / t;
            }
        }
        Ok(size)
    }

    pub fn label(&self) -> String {
        if self.0.iter().all(|&p| p <= 9) {
            self.0.iter().map(u32::to_string).collect()
        } else {
            self.0
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts "321", "3,2,1" or "(3,2,1)".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = |message: String| Error::ParseError { line: 0, message };
        let parts = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("bad digit {c:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        let p = Partition::new(parts);
        if p.is_empty() {
            return Err(bad("partition must have a positive part".into()));
        }
        Ok(p)
    }
}

/// All partitions of d, in reverse lexicographic order: (d), (d-1,1), ...
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of d with at most n parts.
pub fn partitions_fitting(d: u32, n: usize) -> Vec<Partition> {
    partitions_of(d).into_iter().filter(|p| p.len() <= n).collect()
}

/// The set N_λ of moment indices whose nonzero exponents equal λ as a
/// multiset, in canonical order.
pub fn enumerate_stratum(n: usize, lam: &Partition) -> Result<Vec<MomentIndex>> {
    lam.check_fits(n)?;
    let mut values: Vec<u32> = lam.parts().to_vec();
    values.resize(n, 0);
    values.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(MomentIndex::new(values.clone()));
        if !next_permutation(&mut values) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The reduction ν of a partition λ padded to n slots.
///
/// The distinct values of the padded λ (zero included) are ranked by
/// multiplicity, largest first; the value with the largest multiplicity goes
/// to level 0, the next to level 1, and so on up to level s. Ties are broken
/// by giving the smaller original value the lower level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// ν as a weakly decreasing vector of length n.
    pub nu: Vec<u32>,
    pub s: u32,
    /// k_0 ≥ k_1 ≥ ... ≥ k_s.
    pub multiplicities: Vec<usize>,
    /// Original value → level.
    pub levels: BTreeMap<u32, u32>,
}

impl Reduction {
    /// ν as a partition (its nonzero parts).
    pub fn nu_partition(&self) -> Partition {
        Partition::new(self.nu.clone())
    }

    /// Relabels a λ-index into the corresponding ν-index.
    pub fn map_index(&self, idx: &MomentIndex) -> MomentIndex {
        MomentIndex::new(idx.exponents().iter().map(|v| self.levels[v]).collect())
    }
}

pub fn reduce_partition(n: usize, lam: &Partition) -> Result<Reduction> {
    lam.check_fits(n)?;
    let mut by_mult: Vec<(u32, usize)> = lam.padded_multiplicities(n).into_iter().collect();
    by_mult.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let s = by_mult.len().saturating_sub(1) as u32;
    let mut levels = BTreeMap::new();
    let mut nu = Vec::with_capacity(n);
    for (level, &(value, mult)) in by_mult.iter().enumerate() {
        levels.insert(value, level as u32);
        nu.extend(std::iter::repeat(level as u32).take(mult));
    }
    nu.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Reduction {
        nu,
        s,
        multiplicities: by_mult.iter().map(|&(_, k)| k).collect(),
        levels,
    })
}

/// Number of moment coordinates, binom(n + d - 1, d).
pub fn moment_count(n: usize, d: usize) -> u128 {
    binomial((n + d).saturating_sub(1) as u64, d as u64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Checks that a stratum enumeration agrees with filtering the full list.
pub fn stratum_by_filter(n: usize, lam: &Partition) -> Vec<MomentIndex> {
    enumerate_moments(n, lam.sum() as usize)
        .into_iter()
        .filter(|m| &Partition::of_index(m) == lam)
        .collect()
}
