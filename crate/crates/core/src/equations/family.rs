use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use super::catalog::*;
use super::masked::visible_minors;
use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::moments::{Partition, VarietySpec};

/// Named families of equations, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationFamily {
    Pentad,
    Quartic,
    M33,
    M44,
    Minors63,
    Minors53,
    Quintic53,
}

impl EquationFamily {
    pub const ALL: [EquationFamily; 7] = [
        EquationFamily::Pentad,
        EquationFamily::Quartic,
        EquationFamily::M33,
        EquationFamily::M44,
        EquationFamily::Minors63,
        EquationFamily::Minors53,
        EquationFamily::Quintic53,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationFamily::Pentad => "pentad",
            EquationFamily::Quartic => "quartic",
            EquationFamily::M33 => "m33",
            EquationFamily::M44 => "m44",
            EquationFamily::Minors63 => "minors63",
            EquationFamily::Minors53 => "minors53",
            EquationFamily::Quintic53 => "quintic53",
        }
    }

    /// The variety whose ideal contains the family. `n` only matters for
    /// pentads, which exist for every n ≥ 5.
    pub fn variety(self, n: usize) -> VarietySpec {
        match self {
            EquationFamily::Pentad => VarietySpec::stratum(n, Partition::new(vec![1, 1])).with_rank(2),
            EquationFamily::Quartic => VarietySpec::stratum(6, Partition::new(vec![1, 1, 1])).with_rank(3),
            EquationFamily::M33 => VarietySpec::full(3, 3),
            EquationFamily::M44 => VarietySpec::full(4, 4).with_rank(2),
            EquationFamily::Minors63 => VarietySpec::stratum(6, Partition::new(vec![1, 1, 1])).with_rank(2),
            EquationFamily::Minors53 | EquationFamily::Quintic53 => VarietySpec::full(5, 3).with_rank(2),
        }
    }

    /// Named polynomials of the family.
    pub fn polynomials(self, n: usize) -> Result<Vec<(String, SparsePolynomial)>> {
        let numbered = |prefix: &str, ps: Vec<SparsePolynomial>| {
            ps.into_iter()
                .enumerate()
                .map(|(i, p)| (format!("{prefix}[{}]", i + 1), p))
                .collect()
        };
        Ok(match self {
            EquationFamily::Pentad => {
                let family = pentad_family(n)?;
                (1..=n)
                    .combinations(5)
                    .zip(family)
                    .map(|(s, p)| (format!("pentad[{}]", s.iter().join("")), p))
                    .collect()
            }
            EquationFamily::Quartic => vec![("quartic".into(), quadrilateral_set_quartic())],
            EquationFamily::M33 => vec![("m33".into(), m33_cubic())],
            EquationFamily::M44 => numbered("m44", sigma2_m44_cubics()),
            EquationFamily::Minors63 => numbered("minors63", visible_minors(&masked_hankel_63(), 3)?),
            EquationFamily::Minors53 => numbered("minors53", visible_minors(&masked_matrix_53(), 3)?),
            EquationFamily::Quintic53 => vec![("quintic53".into(), quintic_53())],
        })
    }
}

impl fmt::Display for EquationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EquationFamily::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::ParseError {
                line: 0,
                message: format!("unknown equation family {s:?}"),
            })
    }
}
