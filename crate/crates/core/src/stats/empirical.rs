use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::samples::SampleMatrix;
use crate::equations::EquationFamily;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::moments::{eval_all, MixtureParams, MomentIndex, Scope, VarietySpec};

/// Moment values over one scope, keyed by index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentTable<T> {
    pub n: usize,
    pub scope: Scope,
    /// Number of samples behind the estimates; `None` for exact moments.
    pub samples: Option<usize>,
    pub values: BTreeMap<MomentIndex, T>,
}

pub type EmpiricalMoments = MomentTable<f64>;

impl<T: Scalar> MomentTable<T> {
    /// Exact moments of a mixture, straight from the parametrization.
    pub fn from_parametrization(spec: &VarietySpec, params: &MixtureParams<T>) -> Result<Self> {
        Ok(MomentTable {
            n: spec.n,
            scope: spec.scope.clone(),
            samples: None,
            values: eval_all(spec, params)?.into_iter().collect(),
        })
    }

    /// Moments Σ_t w_t Π_k x_{t,k}^{i_k} of a finitely supported distribution
    /// given as (weight, point) atoms.
    pub fn from_atoms(n: usize, scope: Scope, atoms: &[(T, Vec<T>)]) -> Result<Self> {
        let spec = VarietySpec { n, scope, r: 1 };
        spec.validate()?;
        let (w0, _) = atoms
            .first()
            .ok_or_else(|| Error::PreconditionFailed("empty distribution".into()))?;
        if let Some((_, x)) = atoms.iter().find(|(_, x)| x.len() != n) {
            return Err(Error::PreconditionFailed(format!(
                "atom of dimension {}, expected {n}",
                x.len()
            )));
        }
        let values = spec
            .indices()?
            .into_iter()
            .map(|idx| {
                let m = atoms.iter().fold(w0.zero_like(), |acc, (w, x)| {
                    acc.add(&w.mul(&monomial_value(&idx, x, &w0.one_like())))
                });
                (idx, m)
            })
            .collect();
        Ok(MomentTable {
            n,
            scope: spec.scope,
            samples: None,
            values,
        })
    }

    pub fn get(&self, idx: &MomentIndex) -> Option<&T> {
        self.values.get(idx)
    }

    fn as_hash_map(&self) -> HashMap<MomentIndex, T> {
        self.values.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

fn monomial_value<T: Scalar>(idx: &MomentIndex, x: &[T], one: &T) -> T {
    idx.exponents()
        .iter()
        .zip(x)
        .fold(one.clone(), |acc, (&e, xk)| (0..e).fold(acc, |a, _| a.mul(xk)))
}

/// Sample averages (1/T) Σ_t Π_k x_{t,k}^{i_k} over the moments of `scope`.
pub fn empirical_moments(data: &SampleMatrix, scope: Scope) -> Result<EmpiricalMoments> {
    let spec = VarietySpec {
        n: data.n,
        scope,
        r: 1,
    };
    spec.validate()?;
    let t = data.t as f64;
    let values = spec
        .indices()?
        .into_iter()
        .map(|idx| {
            let sum: f64 = data.rows().map(|x| monomial_value(&idx, x, &1.0)).sum();
            (idx, sum / t)
        })
        .collect();
    Ok(MomentTable {
        n: data.n,
        scope: spec.scope,
        samples: Some(data.t),
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistic<T> {
    pub name: String,
    pub value: T,
}

/// Evaluates the selected equation families at the given moments. Values are
/// reported raw.
pub fn test_statistics<T: Scalar>(
    moments: &MomentTable<T>,
    which: &[EquationFamily],
) -> Result<Vec<Statistic<T>>> {
    let values = moments.as_hash_map();
    let zero = match values.values().next() {
        Some(v) => v.zero_like(),
        None => return Err(Error::PreconditionFailed("empty moment table".into())),
    };
    let mut out = Vec::new();
    for family in which {
        for (name, p) in family.polynomials(moments.n)? {
            out.push(Statistic {
                name,
                value: p.evaluate(&values, &zero)?,
            });
        }
    }
    Ok(out)
}
