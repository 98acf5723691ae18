use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::moments::MomentIndex;

/// A matrix whose cells are moment coordinates or stars (unknowns that are
/// eliminated, so they must not enter any minor).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskedMatrix {
    pub rows: usize,
    pub cols: usize,
    cells: Vec<Option<MomentIndex>>,
}

impl MaskedMatrix {
    pub fn new(rows: usize, cols: usize, cells: Vec<Option<MomentIndex>>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::PreconditionFailed(format!(
                "{} cells for a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        Ok(MaskedMatrix { rows, cols, cells })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&MomentIndex> {
        self.cells[i * self.cols + j].as_ref()
    }

    pub fn star_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    pub fn visible_count(&self) -> usize {
        self.cells.len() - self.star_count()
    }

    pub fn distinct_moments(&self) -> BTreeSet<MomentIndex> {
        self.cells.iter().flatten().cloned().collect()
    }

    /// Row and column sets of the k×k submatrices without stars.
    pub fn star_free_submatrices(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for rows in (0..self.rows).combinations(k) {
            let cols: Vec<usize> = (0..self.cols)
                .filter(|&j| rows.iter().all(|&i| self.get(i, j).is_some()))
                .collect();
            for cs in cols.into_iter().combinations(k) {
                out.push((rows.clone(), cs));
            }
        }
        out
    }

    /// Determinant of a star-free submatrix, fully expanded.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> SparsePolynomial {
        let k = rows.len();
        let mut p = SparsePolynomial::zero();
        for perm in (0..k).permutations(k) {
            let inversions = (0..k)
                .tuple_combinations()
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let sign = if inversions % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let mono = (0..k)
                .map(|t| {
                    self.get(rows[t], cols[perm[t]])
                        .cloned()
                        .expect("star-free submatrix")
                })
                .collect();
            p.add_term(sign, mono);
        }
        p
    }
}

/// All distinct nonzero k×k minors without stars, each with its sign
/// normalized, in order of first appearance.
pub fn visible_minors(m: &MaskedMatrix, k: usize) -> Result<Vec<SparsePolynomial>> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(Error::PreconditionFailed(format!(
            "minor size {k} for a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (rows, cols) in m.star_free_submatrices(k) {
        let p = m.minor(&rows, &cols).normalized_sign();
        if !p.is_zero() && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}
