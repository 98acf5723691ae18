use itertools::Itertools;
use serde::Serialize;

use super::samples::SampleMatrix;
use crate::error::{Error, Result};

/// Relative tolerance for principal minors.
pub const PSD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HankelVerdict {
    /// 0-based coordinate, absent for a bare moment sequence.
    pub coordinate: Option<usize>,
    pub moments: Vec<f64>,
    pub min_principal_minor: f64,
    pub pass: bool,
}

/// The (q+1)×(q+1) Hankel matrix (μ_{i+j}).
pub fn hankel(mu: &[f64], q: usize) -> Result<Vec<Vec<f64>>> {
    if mu.len() < 2 * q + 1 {
        return Err(Error::PreconditionFailed(format!(
            "order {q} needs {} moments, got {}",
            2 * q + 1,
            mu.len()
        )));
    }
    Ok((0..=q).map(|i| mu[i..=i + q].to_vec()).collect())
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let k = a.len();
    let mut d = 1.0;
    for c in 0..k {
        let p = (c..k)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .expect("nonempty");
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for i in c + 1..k {
            let f = a[i][c] / a[c][c];
            for j in c..k {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    d
}

/// Tests PSD of the Hankel matrix of `mu` truncated at order q. Every
/// principal minor of size k must be at least -tol·scale^k, where scale is
/// the largest absolute entry.
pub fn hamburger_sequence(mu: &[f64], q: usize) -> Result<HankelVerdict> {
    let h = hankel(mu, q)?;
    let scale = h.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut min_minor = f64::INFINITY;
    let mut pass = true;
    for size in 1..=q + 1 {
        for set in (0..=q).combinations(size) {
            let sub = set.iter().map(|&i| set.iter().map(|&j| h[i][j]).collect()).collect();
            let m = det(sub);
            min_minor = min_minor.min(m);
            if m < -PSD_TOLERANCE * scale.powi(size as i32) {
                pass = false;
            }
        }
    }
    Ok(HankelVerdict {
        coordinate: None,
        moments: mu[..=2 * q].to_vec(),
        min_principal_minor: min_minor,
        pass,
    })
}

/// Per-coordinate Hamburger check on the empirical moments 1, μ̂_1, …, μ̂_{2q}.
pub fn hamburger_check(data: &SampleMatrix, q: usize) -> Result<Vec<HankelVerdict>> {
    let t = data.t as f64;
    (0..data.n)
        .map(|k| {
            let mut mu = vec![0.0; 2 * q + 1];
            for x in data.rows() {
                let mut p = 1.0;
                for m in mu.iter_mut() {
                    *m += p;
                    p *= x[k];
                }
            }
            mu.iter_mut().for_each(|m| *m /= t);
            let mut v = hamburger_sequence(&mu, q)?;
            v.coordinate = Some(k);
            Ok(v)
        })
        .collect()
}
