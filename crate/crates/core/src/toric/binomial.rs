use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{MomentIndex, VarietySpec};

/// A binomial plus - minus between two monomials of equal degree in the
/// moment coordinates. Each monomial is a sorted multiset of indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedBinomial {
    pub plus: Vec<MomentIndex>,
    pub minus: Vec<MomentIndex>,
}

impl GradedBinomial {
    pub fn new(mut plus: Vec<MomentIndex>, mut minus: Vec<MomentIndex>) -> Result<Self> {
        plus.sort();
        minus.sort();
        if plus.len() != minus.len() || plus.is_empty() {
            return Err(Error::PreconditionFailed(
                "binomial monomials must have equal positive degree".into(),
            ));
        }
        if plus == minus {
            return Err(Error::PreconditionFailed("binomial is zero".into()));
        }
        Ok(GradedBinomial { plus, minus })
    }

    /// Parses "m12 m34 - m13 m24" style input: whitespace separated index
    /// strings on each side of a '-'. A leading 'm' is optional.
    pub fn parse(s: &str) -> Result<Self> {
        let (l, r) = s.split_once('-').ok_or_else(|| Error::ParseError {
            line: 0,
            message: "expected 'plus - minus'".into(),
        })?;
        let side = |t: &str| -> Result<Vec<MomentIndex>> {
            t.split_whitespace()
                .map(|w| w.trim_start_matches('m').parse())
                .collect()
        };
        GradedBinomial::new(side(l)?, side(r)?)
    }

    pub fn degree(&self) -> usize {
        self.plus.len()
    }

    /// The same binomial with plus and minus in a fixed order, so that a
    /// binomial and its negative compare equal.
    pub fn unsigned(&self) -> Self {
        if self.plus <= self.minus {
            self.clone()
        } else {
            GradedBinomial {
                plus: self.minus.clone(),
                minus: self.plus.clone(),
            }
        }
    }

    pub fn map_indices(&self, f: impl Fn(&MomentIndex) -> MomentIndex) -> Self {
        let mut plus: Vec<_> = self.plus.iter().map(&f).collect();
        let mut minus: Vec<_> = self.minus.iter().map(&f).collect();
        plus.sort();
        minus.sort();
        GradedBinomial { plus, minus }
    }

    /// Slots that carry a nonzero exponent in some factor.
    pub fn touched_slots(&self) -> usize {
        let n = self.plus[0].n();
        (0..n)
            .filter(|&k| {
                self.plus
                    .iter()
                    .chain(&self.minus)
                    .any(|m| m.exponents()[k] > 0)
            })
            .count()
    }
}

impl fmt::Display for GradedBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &[MomentIndex]| {
            m.iter()
                .map(|i| format!("m{i}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{} - {}", side(&self.plus), side(&self.minus))
    }
}

/// Per-slot multisets of exponents: entry [k] is the sorted column k of the
/// index matrix of a monomial.
fn column_multisets(monomial: &[MomentIndex]) -> Vec<Vec<u32>> {
    let n = monomial.first().map_or(0, MomentIndex::n);
    (0..n)
        .map(|k| {
            let mut col: Vec<u32> = monomial.iter().map(|m| m.exponents()[k]).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Membership of a binomial in the toric ideal: both monomials use indices
/// of the variety and have equal A-degree, i.e. corresponding columns of the
/// two index matrices carry the same multiset of entries.
pub fn binomial_in_ideal(spec: &VarietySpec, b: &GradedBinomial) -> bool {
    if b.plus.len() != b.minus.len() {
        return false;
    }
    if !b.plus.iter().chain(&b.minus).all(|m| spec.contains(m)) {
        return false;
    }
    column_multisets(&b.plus) == column_multisets(&b.minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::Partition;

    fn stratum(n: usize, l: &str) -> VarietySpec {
        VarietySpec::stratum(n, l.parse::<Partition>().unwrap())
    }

    #[test]
    fn hypersimplex_quadric() {
        let spec = stratum(5, "11");
        let b = GradedBinomial::parse("m11000 m00110 - m10100 m01010").unwrap();
        assert!(binomial_in_ideal(&spec, &b));
        let bad = GradedBinomial::parse("m11000 m00110 - m11000 m00101").unwrap();
        assert!(!binomial_in_ideal(&spec, &bad));
    }

    #[test]
    fn birkhoff_cubic() {
        let spec = stratum(4, "321");
        let b = GradedBinomial::parse("0123 1203 2013 - 0213 2103 1023").unwrap();
        assert!(binomial_in_ideal(&spec, &b));
        let q = GradedBinomial::parse("0123 1032 - 0132 1023").unwrap();
        assert!(binomial_in_ideal(&spec, &q));
    }

    #[test]
    fn m33_cubic_is_in_ideal() {
        let spec = VarietySpec::full(3, 3);
        let b = GradedBinomial::parse("012 120 201 - 021 210 102").unwrap();
        assert!(binomial_in_ideal(&spec, &b));
    }

    #[test]
    fn foreign_indices_are_rejected() {
        let spec = stratum(5, "11");
        let b = GradedBinomial::parse("m20000 m00110 - m10100 m10010").unwrap();
        assert!(!binomial_in_ideal(&spec, &b));
    }

    #[test]
    fn zero_binomial_is_an_error() {
        assert!(GradedBinomial::parse("11 - 11").is_err());
        assert!(GradedBinomial::parse("110 011 - 101").is_err());
    }
}
