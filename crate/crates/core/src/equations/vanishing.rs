use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField, MERSENNE_61};
use crate::moments::{eval_parametrization, MixtureParams, VarietySpec};

/// The largest prime below 2^61 - 1.
pub fn second_prime() -> u64 {
    let mut p = MERSENNE_61 - 2;
    while !is_prime(p) {
        p -= 2;
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingOptions {
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl Default for VanishingOptions {
    fn default() -> Self {
        VanishingOptions {
            trials: 50,
            primes: vec![MERSENNE_61, second_prime()],
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Zero at every sampled point.
    Vanishes { trials: usize, primes: Vec<u64> },
    /// A sampled point where the polynomial is nonzero.
    Witness { prime: u64, trial: usize, value: u64 },
}

impl Verdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, Verdict::Vanishes { .. })
    }
}

/// Evaluates `p` at random points of the parametrization of `spec`, `trials`
/// times for each prime.
pub fn verify_vanishing(
    p: &SparsePolynomial,
    spec: &VarietySpec,
    opts: &VanishingOptions,
) -> Result<Verdict> {
    spec.validate()?;
    let vars = p.variables();
    if let Some(bad) = vars.iter().find(|m| !spec.contains(m)) {
        return Err(Error::IndexOutOfStratum(bad.clone()));
    }
    for (pi, &prime) in opts.primes.iter().enumerate() {
        let field = PrimeField::new(prime)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(pi as u64));
        for trial in 0..opts.trials {
            let params = MixtureParams::random_mod_p(spec, &field, &mut rng);
            let values = vars
                .iter()
                .map(|m| Ok((m.clone(), eval_parametrization(spec, &params, m)?)))
                .collect::<Result<HashMap<_, _>>>()?;
            let v = p.evaluate(&values, &field.element(0))?;
            if v.value != 0 {
                return Ok(Verdict::Witness {
                    prime,
                    trial,
                    value: v.value,
                });
            }
        }
    }
    Ok(Verdict::Vanishes {
        trials: opts.trials,
        primes: opts.primes.clone(),
    })
}
