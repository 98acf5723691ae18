use std::io::Write;

use mvkit_core::equations::EquationFamily;
use mvkit_core::moments::{MixtureParams, MomentIndex, Partition, Scope, VarietySpec};
use mvkit_core::stats::*;
use mvkit_core::Error;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn parse(s: &str) -> mvkit_core::Result<SampleMatrix> {
    read_samples_from(s.as_bytes())
}

fn pairs() -> Scope {
    Scope::Stratum(Partition::new(vec![1, 1]))
}

#[test]
fn plain_csv() {
    let m = parse("1,2\n3,4\n5,6").unwrap();
    assert_eq!((m.t, m.n), (3, 2));
    assert_eq!(m.row(1), &[3.0, 4.0]);
}

#[test]
fn header_is_skipped() {
    let m = parse("x1,x2\n1,2\n3,4\n").unwrap();
    assert_eq!((m.t, m.n), (2, 2));
    assert_eq!(m.row(0), &[1.0, 2.0]);
}

#[test]
fn ragged_rows() {
    let err = parse("1,2\n3,4,5\n").unwrap_err();
    assert_eq!(
        err,
        Error::RaggedRows {
            line: 2,
            expected: 2,
            found: 3
        }
    );
}

#[test]
fn parse_error_has_line() {
    match parse("1,2\n3,4\n5,oops\n").unwrap_err() {
        Error::ParseError { line, .. } => assert_eq!(line, 3),
        e => panic!("{e:?}"),
    }
    assert!(matches!(parse("").unwrap_err(), Error::ParseError { .. }));
    assert!(matches!(parse("1,nan\n").unwrap_err(), Error::ParseError { line: 1, .. }));
}

#[test]
fn reads_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "a,b,c\n1,0,1\n0,1,1").unwrap();
    let m = read_samples(f.path()).unwrap();
    assert_eq!((m.t, m.n), (2, 3));
    assert!(matches!(read_samples("/nonexistent/x.csv"), Err(Error::Io(_))));
}

#[test]
fn single_sample_of_ones() {
    let m = SampleMatrix::from_rows(&[vec![1.0; 4]]).unwrap();
    let e = empirical_moments(&m, Scope::Full(3)).unwrap();
    assert_eq!(e.values.len(), 20);
    assert!(e.values.values().all(|&v| v == 1.0));
    assert_eq!(e.samples, Some(1));
}

/// Coordinates independent, X_k ∈ {lo_k, hi_k} with P(hi) = p_k.
struct TwoPoint {
    lo: Vec<f64>,
    hi: Vec<f64>,
    p: Vec<f64>,
}

impl TwoPoint {
    fn atoms(&self) -> Vec<(f64, Vec<f64>)> {
        let n = self.p.len();
        (0..1usize << n)
            .map(|mask| {
                let mut w = 1.0;
                let x = (0..n)
                    .map(|k| {
                        if mask >> k & 1 == 1 {
                            w *= self.p[k];
                            self.hi[k]
                        } else {
                            w *= 1.0 - self.p[k];
                            self.lo[k]
                        }
                    })
                    .collect();
                (w, x)
            })
            .collect()
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        (0..self.p.len())
            .map(|k| if rng.random_bool(self.p[k]) { self.hi[k] } else { self.lo[k] })
            .collect()
    }
}

#[test]
fn estimates_converge_to_exact_two_point_moments() {
    let dist = TwoPoint {
        lo: vec![0.0, -1.0, 0.5],
        hi: vec![1.0, 2.0, 1.5],
        p: vec![0.3, 0.5, 0.8],
    };
    let exact = MomentTable::from_atoms(3, Scope::Full(2), &dist.atoms()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows: Vec<_> = (0..100_000).map(|_| dist.sample(&mut rng)).collect();
    let est = empirical_moments(&SampleMatrix::from_rows(&rows).unwrap(), Scope::Full(2)).unwrap();
    assert_eq!(est.values.len(), exact.values.len());
    for (idx, v) in &exact.values {
        assert!((est.values[idx] - v).abs() < 0.03, "{idx}: {} vs {v}", est.values[idx]);
    }
}

#[test]
fn independent_coordinates_factorize() {
    let t = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows: Vec<_> = (0..t)
        .map(|_| (0..4).map(|_| rng.random_range(0.0..2.0)).collect())
        .collect();
    let data = SampleMatrix::from_rows(&rows).unwrap();
    let first = empirical_moments(&data, Scope::Full(1)).unwrap();
    let second = empirical_moments(&data, Scope::Full(2)).unwrap();
    let m = |s: &str| {
        let idx = s.parse::<MomentIndex>().unwrap();
        first.get(&idx).or(second.get(&idx)).copied().unwrap()
    };
    let bound = 5.0 / (t as f64).sqrt();
    assert!((m("1100") - m("1000") * m("0100")).abs() < bound);
    assert!((m("0011") - m("0010") * m("0001")).abs() < bound);
}

#[test]
fn discrete_pushforward_matches_parametrization() {
    // two rational product distributions on {0,1,2}^4 with masses 1 each
    let spec = VarietySpec::full(4, 3).with_rank(2);
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let probs = [
        [q(1, 2), q(1, 3), q(1, 6)],
        [q(1, 5), q(1, 5), q(3, 5)],
    ];
    let support = [q(0, 1), q(1, 1), q(2, 1)];
    let mut atoms = Vec::new();
    for (j, pr) in probs.iter().enumerate() {
        for code in 0..81usize {
            let digits: Vec<usize> = (0..4).map(|k| code / 3usize.pow(k) % 3).collect();
            // coordinate k of component j uses pr rotated by k + j
            let w = digits
                .iter()
                .enumerate()
                .fold(q(1, 1), |acc, (k, &v)| acc * &pr[(v + k + j) % 3]);
            atoms.push((w, digits.iter().map(|&v| support[v].clone()).collect()));
        }
    }
    let exact = MomentTable::from_atoms(4, spec.scope.clone(), &atoms).unwrap();
    let params = MixtureParams::from_fn(&spec, |j, k, i| {
        (0..3).fold(q(0, 1), |acc, v| {
            acc + &probs[j][(v + k + j) % 3] * support[v].pow(i as i32)
        })
    });
    let pushed = MomentTable::from_parametrization(&spec, &params).unwrap();
    assert_eq!(exact.values, pushed.values);
}

#[test]
fn hankel_of_a_fair_coin() {
    assert_eq!(hankel(&[1.0, 0.5, 0.5], 1).unwrap(), vec![vec![1.0, 0.5], vec![0.5, 0.5]]);
    assert!(hamburger_sequence(&[1.0, 0.5, 0.5], 1).unwrap().pass);
}

#[test]
fn non_realizable_sequence_fails() {
    assert!(!hamburger_sequence(&[1.0, 0.0, -1.0], 1).unwrap().pass);
    assert!(!hamburger_sequence(&[1.0, 0.0, -1.0, 0.0, 1.0], 2).unwrap().pass);
}

#[test]
fn normal_samples_pass() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let rows: Vec<_> = (0..100_000)
        .map(|_| vec![normal.sample(&mut rng), 2.0 * normal.sample(&mut rng) + 1.0])
        .collect();
    let verdicts = hamburger_check(&SampleMatrix::from_rows(&rows).unwrap(), 3).unwrap();
    assert_eq!(verdicts.len(), 2);
    assert!(verdicts.iter().all(|v| v.pass));
    assert_eq!(verdicts[1].coordinate, Some(1));
    assert!((verdicts[0].moments[4] - 3.0).abs() < 0.1);
}

fn mixture_samples(means: &[Vec<f64>], weights: &[f64], t: usize, seed: u64) -> SampleMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<_> = (0..t)
        .map(|_| {
            let mut u: f64 = rng.random();
            let j = weights
                .iter()
                .position(|&w| {
                    u -= w;
                    u < 0.0
                })
                .unwrap_or(weights.len() - 1);
            means[j].iter().map(|&m| m + rng.random_range(-0.5..0.5)).collect()
        })
        .collect();
    SampleMatrix::from_rows(&rows).unwrap()
}

fn pentad_stat(data: &SampleMatrix) -> f64 {
    let e = empirical_moments(data, pairs()).unwrap();
    let stats = test_statistics(&e, &[EquationFamily::Pentad]).unwrap();
    assert_eq!(stats.len(), 1);
    assert_eq!(stats[0].name, "pentad[12345]");
    stats[0].value
}

#[test]
fn pentad_shrinks_on_product_samples() {
    let means = vec![vec![1.0, 1.2, 0.8, 1.5, 0.7]];
    let small = pentad_stat(&mixture_samples(&means, &[1.0], 1_000, 1)).abs();
    let large = pentad_stat(&mixture_samples(&means, &[1.0], 100_000, 1)).abs();
    assert!(large < small, "{large} vs {small}");
    assert!(large < 0.01, "{large}");
}

#[test]
fn pentad_stays_away_from_zero_on_three_mixtures() {
    let means = vec![
        vec![2.0, 0.0, 1.0, -1.0, 0.5],
        vec![0.0, 1.5, -1.0, 1.0, 2.0],
        vec![-1.0, 1.0, 2.0, 0.5, -1.5],
    ];
    let weights = [0.3, 0.3, 0.4];
    // exact value for uniform noise centred at the means
    let atoms: Vec<(f64, Vec<f64>)> = means.iter().zip(weights).map(|(m, w)| (w, m.clone())).collect();
    let exact = MomentTable::from_atoms(5, pairs(), &atoms).unwrap();
    let target = test_statistics(&exact, &[EquationFamily::Pentad]).unwrap()[0].value;
    assert!(target.abs() > 0.4, "{target}");
    for t in [1_000, 100_000] {
        let v = pentad_stat(&mixture_samples(&means, &weights, t, 2));
        assert!(v.abs() > 0.5 * target.abs(), "T={t}: {v} vs {target}");
    }
}

#[test]
fn exact_moments_of_two_mixtures_kill_the_pentad() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let spec = VarietySpec::stratum(5, Partition::new(vec![1, 1]));
    for r in [1, 2, 3] {
        let spec = spec.clone().with_rank(r);
        let params = MixtureParams::random_rational(&spec, &mut rng);
        let m = MomentTable::from_parametrization(&spec, &params).unwrap();
        let v = &test_statistics(&m, &[EquationFamily::Pentad]).unwrap()[0].value;
        assert_eq!(v.is_zero(), r <= 2, "r={r}");
    }
}

#[test]
fn statistics_need_their_moments() {
    let m = SampleMatrix::from_rows(&[vec![1.0; 5]]).unwrap();
    let e = empirical_moments(&m, Scope::Full(3)).unwrap();
    assert!(matches!(
        test_statistics(&e, &[EquationFamily::Pentad]),
        Err(Error::ScopeMismatch(_))
    ));
    let e = empirical_moments(&SampleMatrix::from_rows(&[vec![1.0; 4]]).unwrap(), pairs()).unwrap();
    assert!(test_statistics(&e, &[EquationFamily::Pentad]).is_err());
}

#[test]
fn every_family_is_named_and_in_its_variety() {
    for f in EquationFamily::ALL {
        assert_eq!(f.name().parse::<EquationFamily>().unwrap(), f);
        let spec = f.variety(6);
        let polys = f.polynomials(6).unwrap();
        assert!(!polys.is_empty());
        for (_, p) in &polys {
            assert!(p.variables().iter().all(|m| spec.contains(m)), "{f}");
        }
    }
    assert!("pentads".parse::<EquationFamily>().is_err());
}
