//! Explicit polynomials and masked matrices for small moment varieties.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use super::masked::MaskedMatrix;
use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::moments::MomentIndex;

/// Builds a ±1 polynomial from rows like "+ 12 13 24 35 45", each token
/// naming a coordinate through `coord`.
fn signed_terms(rows: &[&str], coord: impl Fn(&str) -> MomentIndex) -> SparsePolynomial {
    SparsePolynomial::from_terms(rows.iter().map(|row| {
        let mut tokens = row.split_whitespace();
        let sign = match tokens.next() {
            Some("+") => BigRational::one(),
            Some("-") => -BigRational::one(),
            other => panic!("bad sign {other:?} in {row:?}"),
        };
        (sign, tokens.map(&coord).collect())
    }))
}

/// m_{S} with ones at the 1-based labels written as digits in `s`.
fn ones(n: usize, s: &str) -> MomentIndex {
    let labels: Vec<usize> = s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
    MomentIndex::ones(n, &labels)
}

pub fn m33_cubic() -> SparsePolynomial {
    signed_terms(&["+ 012 120 201", "- 021 210 102"], |t| t.parse().unwrap())
}

const PENTAD: [&str; 12] = [
    "+ 12 13 24 35 45",
    "- 12 13 25 34 45",
    "- 12 14 23 35 45",
    "+ 12 14 25 34 35",
    "+ 12 15 23 34 45",
    "- 12 15 24 34 35",
    "+ 13 14 23 25 45",
    "- 13 14 24 25 35",
    "- 13 15 23 24 45",
    "+ 13 15 24 25 34",
    "+ 14 15 23 24 35",
    "- 14 15 23 25 34",
];

/// The pentad on the off-diagonal coordinates m_{ij} of an n-slot variety,
/// with 1..5 relabelled to `labels` (1-based).
pub fn pentad(n: usize, labels: [usize; 5]) -> Result<SparsePolynomial> {
    if labels.iter().unique().count() < 5 {
        return Err(Error::DuplicateLabels);
    }
    if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > n) {
        return Err(Error::PreconditionFailed(format!("label {bad} outside 1..={n}")));
    }
    Ok(signed_terms(&PENTAD, |t| {
        let pair: Vec<usize> = t
            .chars()
            .map(|c| labels[c.to_digit(10).unwrap() as usize - 1])
            .collect();
        MomentIndex::ones(n, &pair)
    }))
}

/// The binom(n,5) pentads of σ₂(M_{n,(11)}), one per 5-subset of [n].
pub fn pentad_family(n: usize) -> Result<Vec<SparsePolynomial>> {
    if n < 5 {
        return Err(Error::PreconditionFailed("pentads need n >= 5".into()));
    }
    (1..=n)
        .combinations(5)
        .map(|s| pentad(n, [s[0], s[1], s[2], s[3], s[4]]))
        .collect()
}

/// Pentads on the coordinates m_{ijk} of Δ(6,3), one per facet. On the facet
/// x_i = 1 the pair {p,q} stands for m_{ipq}; on x_i = 0 it stands for the
/// triple completing {p,q} inside [6] \ {i}.
pub fn pentad_facets_63() -> Vec<SparsePolynomial> {
    let base = pentad(5, [1, 2, 3, 4, 5]).expect("distinct labels");
    let mut out = Vec::new();
    for i in 1..=6usize {
        let rest: Vec<usize> = (1..=6).filter(|&l| l != i).collect();
        let pair_of = |m: &MomentIndex| -> Vec<usize> {
            m.support().map(|k| rest[k]).collect()
        };
        out.push(base.map_indices(|m| {
            let mut labels = pair_of(m);
            labels.push(i);
            MomentIndex::ones(6, &labels)
        }));
        out.push(base.map_indices(|m| {
            let pair = pair_of(m);
            let triple: Vec<usize> = rest.iter().copied().filter(|l| !pair.contains(l)).collect();
            MomentIndex::ones(6, &triple)
        }));
    }
    out
}

const QUADRILATERAL: [&str; 30] = [
    "+ 123 145 246 356",
    "- 123 145 256 346",
    "- 123 146 245 356",
    "+ 123 146 256 345",
    "+ 123 156 245 346",
    "- 123 156 246 345",
    "- 124 135 236 456",
    "+ 124 135 256 346",
    "+ 124 136 235 456",
    "- 124 136 256 345",
    "- 124 156 235 346",
    "+ 124 156 236 345",
    "+ 125 134 236 456",
    "- 125 134 246 356",
    "- 125 136 234 456",
    "+ 125 136 246 345",
    "+ 125 146 234 356",
    "- 125 146 236 345",
    "- 126 134 235 456",
    "+ 126 134 245 356",
    "+ 126 135 234 456",
    "- 126 135 245 346",
    "- 126 145 234 356",
    "+ 126 145 235 346",
    "+ 134 156 235 246",
    "- 134 156 236 245",
    "- 135 146 234 256",
    "+ 135 146 236 245",
    "+ 136 145 234 256",
    "- 136 145 235 246",
];

/// The quartic on Δ(6,3) coordinates m_{ijk} vanishing on σ₃(M_{6,(111)}).
pub fn quadrilateral_set_quartic() -> SparsePolynomial {
    signed_terms(&QUADRILATERAL, |t| ones(6, t))
}

/// The 6×15 matrix with rows i ∈ [6], columns the pairs {j,k} in
/// lexicographic order, and entry m_{ijk} when i ∉ {j,k}.
pub fn masked_hankel_63() -> MaskedMatrix {
    let pairs: Vec<(usize, usize)> = (1..=6).tuple_combinations().collect();
    let mut cells = Vec::with_capacity(6 * pairs.len());
    for i in 1..=6 {
        for &(j, k) in &pairs {
            cells.push((i != j && i != k).then(|| MomentIndex::ones(6, &[i, j, k])));
        }
    }
    MaskedMatrix::new(6, pairs.len(), cells).expect("shape")
}

/// Coordinates of M_{5,3} written a_{ij} (zeros at i and j, ones elsewhere)
/// and b_{ij} (2 at i, 1 at j).
pub fn coordinate_53(name: &str) -> Result<MomentIndex> {
    let bad = || Error::ParseError {
        line: 0,
        message: format!("unknown coordinate {name:?}"),
    };
    let mut chars = name.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let digits: Vec<usize> = chars
        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
        .collect::<Result<_>>()?;
    let [i, j] = digits[..] else { return Err(bad()) };
    if i == j || !(1..=5).contains(&i) || !(1..=5).contains(&j) {
        return Err(bad());
    }
    let mut e = vec![0u32; 5];
    match kind {
        'a' => {
            e.iter_mut().for_each(|x| *x = 1);
            e[i - 1] = 0;
            e[j - 1] = 0;
        }
        'b' => {
            e[i - 1] = 2;
            e[j - 1] = 1;
        }
        _ => return Err(bad()),
    }
    Ok(MomentIndex::new(e))
}

const MATRIX_53: [&str; 5] = [
    "a23 a24 a25 a34 a35 a45 * * * * * b21 b31 b41 b51",
    "a13 a14 a15 * * * a34 a35 a45 * b12 * b32 b42 b52",
    "a12 * * a14 a15 * a24 a25 * a45 b13 b23 * b43 b53",
    "* a12 * a13 * a15 a23 * a25 a35 b14 b24 b34 * b54",
    "* * a12 * a13 a14 * a23 a24 a34 b15 b25 b35 b45 *",
];

/// The 5×15 masked matrix for σ₂(M_{5,3}).
pub fn masked_matrix_53() -> MaskedMatrix {
    let cells = MATRIX_53
        .iter()
        .flat_map(|row| row.split_whitespace())
        .map(|t| (t != "*").then(|| coordinate_53(t).expect("valid coordinate")))
        .collect();
    MaskedMatrix::new(5, 15, cells).expect("shape")
}

/// (a-degree, b-degree) of a monomial in M_{5,3} coordinates, or None if it
/// uses a coordinate of neither kind.
pub fn bidegree_53(monomial: &[MomentIndex]) -> Option<(usize, usize)> {
    let mut a = 0;
    let mut b = 0;
    for m in monomial {
        let mut parts = m.nonzero_parts();
        parts.sort_unstable();
        match parts.as_slice() {
            [1, 1, 1] => a += 1,
            [1, 2] => b += 1,
            _ => return None,
        }
    }
    Some((a, b))
}

const QUINTIC_53: [&str; 12] = [
    "+ a13 a45 b25 b41 b53",
    "- a13 a45 b25 b43 b51",
    "- a14 a34 b21 b43 b54",
    "+ a14 a34 b23 b41 b54",
    "- a14 a35 b23 b45 b51",
    "+ a14 a35 b25 b43 b51",
    "+ a14 a45 b24 b45 b51",
    "- a14 a45 b25 b41 b54",
    "+ a15 a34 b21 b45 b53",
    "- a15 a34 b25 b41 b53",
    "- a34 a45 b24 b45 b53",
    "+ a34 a45 b25 b43 b54",
];

/// A quintic of bidegree (2,3) in the ideal of σ₂(M_{5,3}).
pub fn quintic_53() -> SparsePolynomial {
    signed_terms(&QUINTIC_53, |t| coordinate_53(t).expect("valid coordinate"))
}

fn det3(rows: [[&str; 3]; 3]) -> SparsePolynomial {
    let cells = rows
        .iter()
        .flatten()
        .map(|t| Some(t.parse::<MomentIndex>().expect("index")))
        .collect();
    let m = MaskedMatrix::new(3, 3, cells).expect("shape");
    m.minor(&[0, 1, 2], &[0, 1, 2])
}

/// The three determinantal cubics vanishing on σ₂(M_{4,4}).
pub fn sigma2_m44_cubics() -> Vec<SparsePolynomial> {
    vec![
        det3([
            ["2200", "2110", "2020"],
            ["1201", "1111", "1021"],
            ["0202", "0112", "0022"],
        ]),
        det3([
            ["2200", "2101", "2002"],
            ["1210", "1111", "1012"],
            ["0220", "0121", "0022"],
        ]),
        det3([
            ["2020", "2011", "2002"],
            ["1120", "1111", "1102"],
            ["0220", "0211", "0202"],
        ]),
    ]
}
