use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The exponent vector (i_1, ..., i_n) labelling one moment coordinate.
///
/// Ordering is the canonical order of the toolkit: by total degree, then
/// graded reverse lexicographic with the grevlex-largest index first. For a
/// fixed degree this is lexicographic order on the reversed vector, so for
/// n = 3, d = 3 the list starts 300, 210, 120, 030, 201, ...
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MomentIndex(Vec<u32>);

impl MomentIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MomentIndex(exponents)
    }

    /// The index with value `value` in each of the given 0-based slots.
    pub fn with_slots(n: usize, slots: &[(usize, u32)]) -> Self {
        let mut e = vec![0; n];
        for &(k, v) in slots {
            e[k] = v;
        }
        MomentIndex(e)
    }

    /// A squarefree index with ones at the given 1-based labels, e.g.
    /// `ones(6, &[1, 2, 3])` is m_{111000}.
    pub fn ones(n: usize, labels: &[usize]) -> Self {
        let mut e = vec![0; n];
        for &l in labels {
            e[l - 1] = 1;
        }
        MomentIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Slots holding a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(k, _)| k)
    }

    /// The nonzero exponents sorted decreasingly.
    pub fn nonzero_parts(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.0.iter().copied().filter(|&e| e > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// Appends `extra` zero slots.
    pub fn pad(&self, extra: usize) -> Self {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat(0).take(extra));
        MomentIndex(e)
    }

    /// The index with slot `k` moved to slot `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut e = vec![0; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            e[perm[k]] = v;
        }
        MomentIndex(e)
    }
}

impl Ord for MomentIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for MomentIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MomentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&e| e <= 9) {
            for e in &self.0 {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))?;
            // a lone multi-digit exponent would read back as several digits
            if parts.len() == 1 {
                f.write_str(",")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for MomentIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{self}")
    }
}

impl FromStr for MomentIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |message: String| Error::ParseError { line: 0, message };
        let s = s.trim();
        if s.is_empty() {
            return Err(bad("empty moment index".into()));
        }
        let exps = if s.contains(',') {
            s.strip_suffix(',')
                .unwrap_or(s)
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| bad(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("bad digit {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(MomentIndex(exps))
    }
}

impl Serialize for MomentIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MomentIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All moment indices with n slots and total degree d, in canonical order.
pub fn enumerate_moments(n: usize, d: usize) -> Vec<MomentIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, d as u32, &mut out);
    out.sort();
    out
}

fn fill(current: &mut Vec<u32>, slot: usize, remaining: u32, out: &mut Vec<MomentIndex>) {
    let n = current.len();
    if n == 0 {
        return;
    }
    if slot == n - 1 {
        current[slot] = remaining;
        out.push(MomentIndex(current.clone()));
        return;
    }
    for v in 0..=remaining {
        current[slot] = v;
        fill(current, slot + 1, remaining - v, out);
    }
    current[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> MomentIndex {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_moments(3, 3).len(), 10);
        assert_eq!(enumerate_moments(5, 3).len(), 35);
        assert_eq!(enumerate_moments(1, 7), vec![MomentIndex::new(vec![7])]);
    }

    #[test]
    fn canonical_order_is_grevlex_descending() {
        let got: Vec<String> = enumerate_moments(3, 3).iter().map(|m| m.to_string()).collect();
        assert_eq!(
            got,
            ["300", "210", "120", "030", "201", "111", "021", "102", "012", "003"]
        );
    }

    #[test]
    fn string_format() {
        assert_eq!(idx("11100").to_string(), "11100");
        let big = MomentIndex::new(vec![12, 0, 3]);
        assert_eq!(big.to_string(), "12,0,3");
        assert_eq!(idx("12,0,3"), big);
        assert!("1a".parse::<MomentIndex>().is_err());
    }

    #[test]
    fn parts_and_support() {
        let m = idx("20110");
        assert_eq!(m.nonzero_parts(), vec![2, 1, 1]);
        assert_eq!(m.support().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(m.pad(2).to_string(), "2011000");
        assert_eq!(idx("210").permuted(&[2, 0, 1]).to_string(), "102");
    }
}
