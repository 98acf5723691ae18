//! Packings of hypersimplex vertices guaranteeing that σ_r(M_{n,(1^d)})
//! has the expected dimension nr - 1.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{rank_rational, Matrix};
use crate::moments::binomial;

/// 1 + d(n-d) + binom(d,2) binom(n-d,2): vertices within ℓ2 distance 2
/// (Hamming distance 4) of a fixed vertex of Δ(n,d).
pub fn ball_size(n: usize, d: usize) -> u128 {
    let (n64, d64) = (n as u64, d as u64);
    1 + (d * (n - d)) as u128 + binomial(d64, 2) * binomial(n64 - d64, 2)
}

fn check_range(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        Err(Error::DegreeOutOfRange { n, d })
    } else {
        Ok(())
    }
}

/// ball_size(n,d) · r ≤ binom(n,d).
pub fn tropical_guarantee(n: usize, d: usize, r: usize) -> Result<bool> {
    check_range(n, d)?;
    Ok(ball_size(n, d) * r as u128 <= binomial(n as u64, d as u64))
}

/// Vertices of Δ(n,d) as 0/1 vectors, lexicographic in their supports.
pub fn hypersimplex_vertices(n: usize, d: usize) -> Vec<Vec<u8>> {
    (0..n)
        .combinations(d)
        .map(|support| {
            let mut v = vec![0u8; n];
            for i in support {
                v[i] = 1;
            }
            v
        })
        .collect()
}

pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Vertices chosen in lexicographic order, each one outside the Hamming-4
/// balls of all earlier choices, until the balls cover Δ(n,d).
pub fn greedy_packing(n: usize, d: usize, r: usize) -> Result<Vec<Vec<u8>>> {
    if !tropical_guarantee(n, d, r)? {
        return Err(Error::PreconditionFailed(format!(
            "({}) * {r} exceeds binom({n},{d})",
            ball_size(n, d)
        )));
    }
    let vertices = hypersimplex_vertices(n, d);
    let mut covered = vec![false; vertices.len()];
    let mut chosen = Vec::new();
    while let Some(next) = covered.iter().position(|&c| !c) {
        let v = vertices[next].clone();
        for (i, w) in vertices.iter().enumerate() {
            if !covered[i] && hamming(&v, w) <= 4 {
                covered[i] = true;
            }
        }
        chosen.push(v);
    }
    Ok(chosen)
}

/// Brute-force count of vertices within Hamming distance 4 of the first one.
pub fn ball_size_brute(n: usize, d: usize) -> usize {
    let vertices = hypersimplex_vertices(n, d);
    vertices.iter().filter(|w| hamming(&vertices[0], w) <= 4).count()
}

/// Dimension of the affine span of a point set, by exact rank of the
/// differences to the first point.
pub fn affine_span_dim(points: &[Vec<u8>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let rows: Vec<Vec<BigRational>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(&a, &b)| BigRational::from_integer(BigInt::from(a as i64 - b as i64)))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rank_rational(&Matrix::from_rows(rows))
}

/// A vertex together with all vertices adjacent to it (Hamming distance 2).
pub fn vertex_neighbourhood(v: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![v.to_vec()];
    for i in 0..v.len() {
        for j in 0..v.len() {
            if v[i] == 1 && v[j] == 0 {
                let mut w = v.to_vec();
                w[i] = 0;
                w[j] = 1;
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guarantee_values() {
        assert_eq!(ball_size(20, 3), 460);
        assert_eq!(ball_size(10, 3), 85);
        assert!(tropical_guarantee(20, 3, 2).unwrap());
        assert!(!tropical_guarantee(10, 3, 2).unwrap());
        assert!(tropical_guarantee(10, 3, 0).unwrap());
        assert!(tropical_guarantee(5, 5, 1).is_err());
    }

    #[test]
    fn ball_matches_brute_force() {
        for (n, d) in [(10, 3), (20, 3), (12, 4), (8, 2), (9, 5)] {
            assert_eq!(ball_size(n, d), ball_size_brute(n, d) as u128, "({n},{d})");
        }
    }

    #[test]
    fn packing_is_separated_and_spanning() {
        let pts = greedy_packing(20, 3, 2).unwrap();
        assert!(pts.len() >= 2);
        for (a, b) in pts.iter().tuple_combinations() {
            assert!(hamming(a, b) >= 6);
        }
        for v in pts.iter().take(5) {
            assert_eq!(affine_span_dim(&vertex_neighbourhood(v)), 19);
        }
    }

    #[test]
    fn packing_requires_guarantee() {
        assert!(matches!(greedy_packing(10, 3, 2), Err(Error::PreconditionFailed(_))));
    }
}
