//! Secant dimensions from the rank of the Jacobian at random points over
//! prime fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{random_prime_61, PrimeField, MERSENNE_61};
use crate::linalg::PrimeFieldMatrix;
use crate::moments::{jacobian_secant, MixtureParams, VarietySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericOptions {
    pub trials: usize,
    /// Prime for the first trial; later trials draw fresh 61-bit primes.
    pub prime: u64,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            trials: 3,
            prime: MERSENNE_61,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantDimension {
    pub variety: String,
    pub dim: usize,
    pub ranks: Vec<usize>,
    pub primes: Vec<u64>,
    /// All trials reached the same rank.
    pub agree: bool,
}

/// Rank of the Jacobian at one random point over F_p.
pub fn jacobian_rank_mod_p(spec: &VarietySpec, prime: u64, rng: &mut ChaCha8Rng) -> Result<usize> {
    let field = PrimeField::new(prime)?;
    let params = MixtureParams::random_mod_p(spec, &field, rng);
    let jac = jacobian_secant(spec, &params)?;
    let m = PrimeFieldMatrix::from_field_matrix(field, jac.map(|x| x.value));
    Ok(m.rank())
}

/// Maximum Jacobian rank over the trials, minus one. Each trial is a lower
/// bound on the dimension; disagreement between trials is reported.
pub fn dim_secant_numeric(spec: &VarietySpec, opts: &NumericOptions) -> Result<SecantDimension> {
    spec.validate()?;
    if spec.r == 0 {
        return Err(Error::PreconditionFailed("r must be at least 1".into()));
    }
    if opts.trials == 0 {
        return Err(Error::PreconditionFailed("at least one trial is needed".into()));
    }
    PrimeField::new(opts.prime)?;
    let outcomes: Vec<(u64, usize)> = (0..opts.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(t as u64));
            let prime = if t == 0 { opts.prime } else { random_prime_61(&mut rng) };
            jacobian_rank_mod_p(spec, prime, &mut rng).map(|rank| (prime, rank))
        })
        .collect::<Result<_>>()?;
    let ranks: Vec<usize> = outcomes.iter().map(|&(_, r)| r).collect();
    let max = *ranks.iter().max().expect("trials > 0");
    Ok(SecantDimension {
        variety: spec.label(),
        dim: max.saturating_sub(1),
        agree: ranks.iter().all(|&r| r == max),
        primes: outcomes.iter().map(|&(p, _)| p).collect(),
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_case_is_dim_toric() {
        let d = dim_secant_numeric(&VarietySpec::full(5, 3), &NumericOptions::default()).unwrap();
        assert_eq!(d.dim, 14);
        assert!(d.agree);
        assert_eq!(d.primes[0], MERSENNE_61);
        assert_eq!(d.ranks.len(), 3);
    }

    #[test]
    fn rejects_bad_prime() {
        let opts = NumericOptions {
            prime: 100,
            ..Default::default()
        };
        assert_eq!(
            dim_secant_numeric(&VarietySpec::full(3, 3), &opts),
            Err(Error::NotPrime(100))
        );
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = VarietySpec::full(4, 3).with_rank(2);
        let a = dim_secant_numeric(&spec, &NumericOptions::default()).unwrap();
        let b = dim_secant_numeric(&spec, &NumericOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
