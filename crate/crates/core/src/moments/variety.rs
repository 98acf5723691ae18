use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::index::{enumerate_moments, MomentIndex};
use super::partition::{enumerate_stratum, moment_count, Partition};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField, Scalar};
use crate::linalg::{Matrix, RationalMatrix};

/// Which moments a variety uses: all moments of degree d, or one stratum N_λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Scope {
    Full(usize),
    Stratum(Partition),
}

impl Scope {
    pub fn degree(&self) -> usize {
        match self {
            Scope::Full(d) => *d,
            Scope::Stratum(lam) => lam.sum() as usize,
        }
    }
}

/// M_{n,d}, M_{n,λ} and their secant varieties σ_r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VarietySpec {
    pub n: usize,
    pub scope: Scope,
    pub r: usize,
}

impl VarietySpec {
    pub fn full(n: usize, d: usize) -> Self {
        VarietySpec {
            n,
            scope: Scope::Full(d),
            r: 1,
        }
    }

    pub fn stratum(n: usize, lam: Partition) -> Self {
        VarietySpec {
            n,
            scope: Scope::Stratum(lam),
            r: 1,
        }
    }

    pub fn with_rank(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn toric(&self) -> Self {
        self.clone().with_rank(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::PreconditionFailed("n must be at least 1".into()));
        }
        match &self.scope {
            Scope::Full(0) => Err(Error::PreconditionFailed("d must be at least 1".into())),
            Scope::Full(_) => Ok(()),
            Scope::Stratum(lam) => {
                if lam.is_empty() {
                    return Err(Error::PreconditionFailed("empty partition".into()));
                }
                lam.check_fits(self.n)
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.scope.degree()
    }

    /// The moment coordinates of the variety, in canonical order.
    pub fn indices(&self) -> Result<Vec<MomentIndex>> {
        self.validate()?;
        match &self.scope {
            Scope::Full(d) => Ok(enumerate_moments(self.n, *d)),
            Scope::Stratum(lam) => enumerate_stratum(self.n, lam),
        }
    }

    pub fn coordinate_count(&self) -> Result<u128> {
        self.validate()?;
        match &self.scope {
            Scope::Full(d) => Ok(moment_count(self.n, *d)),
            Scope::Stratum(lam) => lam.stratum_size(self.n),
        }
    }

    /// The parameter levels i of μ_{k,i}: 1..=d, or the distinct parts of λ.
    pub fn levels(&self) -> Vec<u32> {
        match &self.scope {
            Scope::Full(d) => (1..=*d as u32).collect(),
            Scope::Stratum(lam) => lam.distinct_parts(),
        }
    }

    pub fn contains(&self, idx: &MomentIndex) -> bool {
        if idx.n() != self.n || idx.degree() as usize != self.degree() {
            return false;
        }
        match &self.scope {
            Scope::Full(_) => true,
            Scope::Stratum(lam) => &Partition::of_index(idx) == lam,
        }
    }

    pub fn label(&self) -> String {
        let base = match &self.scope {
            Scope::Full(d) => format!("M_{{{},{}}}", self.n, d),
            Scope::Stratum(lam) => format!("M_{{{},{}}}", self.n, lam),
        };
        if self.r == 1 {
            base
        } else {
            format!("sigma_{}({})", self.r, base)
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The 0-1 matrix of the monomial parametrization, with helpers to compute
/// A-degrees without materializing rationals.
#[derive(Debug, Clone)]
pub struct AMatrix {
    pub n: usize,
    pub levels: Vec<u32>,
    pub columns: Vec<MomentIndex>,
}

impl AMatrix {
    pub fn new(spec: &VarietySpec) -> Result<Self> {
        Ok(AMatrix {
            n: spec.n,
            levels: spec.levels(),
            columns: spec.indices()?,
        })
    }

    pub fn row_count(&self) -> usize {
        self.n * self.levels.len()
    }

    /// Row of μ_{k,i}: rows are ordered by k, then by level.
    pub fn row_of(&self, k: usize, level: u32) -> Option<usize> {
        self.levels
            .iter()
            .position(|&l| l == level)
            .map(|p| k * self.levels.len() + p)
    }

    /// Rows holding a 1 in the column of `idx`.
    pub fn column_support(&self, idx: &MomentIndex) -> Vec<usize> {
        idx.exponents()
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(k, &e)| self.row_of(k, e).expect("exponent is a level of the variety"))
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let rows = self.row_count();
        let cols = self.columns.len();
        let mut m = Matrix::filled(rows, cols, BigRational::zero());
        for (c, idx) in self.columns.iter().enumerate() {
            for r in self.column_support(idx) {
                m.set(r, c, BigRational::one());
            }
        }
        m
    }
}

/// The A-matrix of an r = 1 variety.
pub fn build_a_matrix(spec: &VarietySpec) -> Result<RationalMatrix> {
    if spec.r != 1 {
        return Err(Error::PreconditionFailed(
            "the A-matrix is defined for r = 1".into(),
        ));
    }
    Ok(AMatrix::new(spec)?.to_rational())
}

/// Parameters μ^{(j)}_{k,i} of an r-component mixture; μ^{(j)}_{k,0} is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureParams<T> {
    n: usize,
    r: usize,
    levels: Vec<u32>,
    /// values[(j * n + k) * levels.len() + level_position]
    values: Vec<T>,
}

impl<T: Scalar> MixtureParams<T> {
    pub fn from_fn(spec: &VarietySpec, mut f: impl FnMut(usize, usize, u32) -> T) -> Self {
        let levels = spec.levels();
        let mut values = Vec::with_capacity(spec.r * spec.n * levels.len());
        for j in 0..spec.r {
            for k in 0..spec.n {
                for &i in &levels {
                    values.push(f(j, k, i));
                }
            }
        }
        MixtureParams {
            n: spec.n,
            r: spec.r,
            levels,
            values,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    fn slot(&self, j: usize, k: usize, level: u32) -> Option<usize> {
        self.levels
            .iter()
            .position(|&l| l == level)
            .map(|p| (j * self.n + k) * self.levels.len() + p)
    }

    /// μ^{(j)}_{k,i}, with μ_{k,0} = 1. `None` outside the parameter set.
    pub fn get(&self, j: usize, k: usize, level: u32) -> Option<T> {
        if level == 0 {
            return Some(self.values[0].one_like());
        }
        self.slot(j, k, level).map(|s| self.values[s].clone())
    }

    pub fn set(&mut self, j: usize, k: usize, level: u32, value: T) {
        let s = self.slot(j, k, level).expect("parameter in scope");
        self.values[s] = value;
    }

    /// The parameters of component j alone, as an r = 1 parameter set.
    pub fn component(&self, j: usize) -> Self {
        let block = self.n * self.levels.len();
        MixtureParams {
            n: self.n,
            r: 1,
            levels: self.levels.clone(),
            values: self.values[j * block..(j + 1) * block].to_vec(),
        }
    }

    fn matches(&self, spec: &VarietySpec) -> bool {
        self.n == spec.n && self.r == spec.r && self.levels == spec.levels()
    }
}

impl MixtureParams<Fp> {
    pub fn random_mod_p<R: Rng + ?Sized>(spec: &VarietySpec, field: &PrimeField, rng: &mut R) -> Self {
        Self::from_fn(spec, |_, _, _| field.random_nonzero(rng))
    }
}

impl MixtureParams<BigRational> {
    /// Random nonzero rationals p/q with |p| ≤ 30, 1 ≤ q ≤ 7.
    pub fn random_rational<R: Rng + ?Sized>(spec: &VarietySpec, rng: &mut R) -> Self {
        Self::from_fn(spec, |_, _, _| loop {
            let num: i64 = rng.random_range(-30..=30);
            if num != 0 {
                let den: i64 = rng.random_range(1..=7);
                break BigRational::new(num.into(), den.into());
            }
        })
    }
}

impl MixtureParams<f64> {
    pub fn random_f64<R: Rng + ?Sized>(spec: &VarietySpec, rng: &mut R) -> Self {
        Self::from_fn(spec, |_, _, _| rng.random_range(0.5..2.0))
    }
}

/// m_idx = Σ_j Π_k μ^{(j)}_{k, i_k}.
pub fn eval_parametrization<T: Scalar>(
    spec: &VarietySpec,
    params: &MixtureParams<T>,
    idx: &MomentIndex,
) -> Result<T> {
    if !spec.contains(idx) {
        return Err(Error::IndexOutOfStratum(idx.clone()));
    }
    if !params.matches(spec) {
        return Err(Error::PreconditionFailed(
            "parameters do not match the variety".into(),
        ));
    }
    Ok(eval_unchecked(params, idx))
}

fn eval_unchecked<T: Scalar>(params: &MixtureParams<T>, idx: &MomentIndex) -> T {
    let zero = params.values[0].zero_like();
    (0..params.r).fold(zero, |acc, j| {
        let term = idx
            .exponents()
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .fold(params.values[0].one_like(), |t, (k, &e)| {
                t.mul(&params.get(j, k, e).expect("index level in scope"))
            });
        acc.add(&term)
    })
}

/// Evaluates every coordinate of the variety, keyed by moment index.
pub fn eval_all<T: Scalar>(
    spec: &VarietySpec,
    params: &MixtureParams<T>,
) -> Result<HashMap<MomentIndex, T>> {
    if !params.matches(spec) {
        return Err(Error::PreconditionFailed(
            "parameters do not match the variety".into(),
        ));
    }
    Ok(spec
        .indices()?
        .into_iter()
        .map(|idx| {
            let v = eval_unchecked(params, &idx);
            (idx, v)
        })
        .collect())
}

/// Label of a Jacobian column: component j, coordinate k, level i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamLabel {
    pub level: u32,
    pub k: usize,
    pub j: usize,
}

/// Column labels in (i, k, j) order.
pub fn jacobian_columns(spec: &VarietySpec) -> Vec<ParamLabel> {
    let mut out = Vec::new();
    for level in spec.levels() {
        for k in 0..spec.n {
            for j in 0..spec.r {
                out.push(ParamLabel { level, k, j });
            }
        }
    }
    out
}

/// Jacobian of the parametrization: rows are moments in canonical order,
/// columns are parameters in (i, k, j) order. The entry at (idx, (j,k,i)) is
/// [i_k = i] · Π_{l≠k} μ^{(j)}_{l,i_l}.
pub fn jacobian_secant<T: Scalar>(spec: &VarietySpec, params: &MixtureParams<T>) -> Result<Matrix<T>> {
    if !params.matches(spec) {
        return Err(Error::PreconditionFailed(
            "parameters do not match the variety".into(),
        ));
    }
    let rows = spec.indices()?;
    let cols = jacobian_columns(spec);
    let zero = params.values[0].zero_like();
    let one = params.values[0].one_like();
    let mut m = Matrix::filled(rows.len(), cols.len(), zero);
    let col_of: HashMap<(u32, usize, usize), usize> = cols
        .iter()
        .enumerate()
        .map(|(c, p)| ((p.level, p.k, p.j), c))
        .collect();
    for (r, idx) in rows.iter().enumerate() {
        let e = idx.exponents();
        for j in 0..spec.r {
            for (k, &ik) in e.iter().enumerate() {
                if ik == 0 {
                    continue;
                }
                let mut v = one.clone();
                for (l, &il) in e.iter().enumerate() {
                    if l != k && il > 0 {
                        v = v.mul(&params.get(j, l, il).expect("level in scope"));
                    }
                }
                m.set(r, col_of[&(ik, k, j)], v);
            }
        }
    }
    Ok(m)
}
