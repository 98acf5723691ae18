use std::collections::BTreeSet;

use mvkit_core::field::{PrimeField, MERSENNE_61};
use mvkit_core::moments::*;
use mvkit_core::Error;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lam(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

#[test]
fn full_degree_counts() {
    assert_eq!(enumerate_moments(3, 3).len(), 10);
    assert_eq!(enumerate_moments(5, 3).len(), 35);
    assert_eq!(enumerate_moments(1, 7), vec!["7".parse::<MomentIndex>().unwrap()]);
}

#[test]
fn stratum_counts() {
    assert_eq!(enumerate_stratum(5, &lam(&[1, 1, 1])).unwrap().len(), 10);
    assert_eq!(enumerate_stratum(5, &lam(&[2, 1])).unwrap().len(), 20);
    for n in 1..=6 {
        assert_eq!(enumerate_stratum(n, &lam(&[4])).unwrap().len(), n);
    }
    assert_eq!(
        enumerate_stratum(2, &lam(&[1, 1, 1])),
        Err(Error::PartitionTooLong { len: 3, n: 2 })
    );
}

#[test]
fn reductions() {
    for parts in [[8, 5, 5, 4], [7, 7, 3, 0]] {
        let lam = Partition::new(parts.iter().copied().filter(|&p| p > 0).collect::<Vec<_>>());
        let r = reduce_partition(4, &lam).unwrap();
        assert_eq!(r.nu, vec![2, 1, 0, 0]);
        assert_eq!(r.s, 2);
    }
    let r = reduce_partition(5, &lam(&[1, 1, 1])).unwrap();
    assert_eq!((r.nu, r.s), (vec![1, 1, 0, 0, 0], 1));
    assert!(reduce_partition(2, &lam(&[3, 2, 1])).is_err());
}

#[test]
fn a_matrix_shapes() {
    let a = AMatrix::new(&VarietySpec::full(5, 3)).unwrap();
    assert_eq!(a.row_count(), 15);
    assert_eq!(a.columns.len(), 35);
    assert!(a.columns.iter().all(|c| a.column_support(c).len() <= 3));
    let a = AMatrix::new(&VarietySpec::stratum(4, lam(&[3, 2, 1]))).unwrap();
    assert_eq!((a.row_count(), a.columns.len()), (12, 24));
    assert!(a.columns.iter().all(|c| a.column_support(c).len() == 3));
    let a = build_a_matrix(&VarietySpec::stratum(4, lam(&[5]))).unwrap();
    assert_eq!(a, mvkit_core::linalg::RationalMatrix::identity(4));
}

#[test]
fn product_of_parameters() {
    let spec = VarietySpec::full(3, 3);
    let q = |x: i64| BigRational::from_integer(x.into());
    let mu = [2, 3, 5];
    let params = MixtureParams::from_fn(&spec, |_, k, i| if i == 1 { q(mu[k]) } else { q(7) });
    let idx: MomentIndex = "111".parse().unwrap();
    assert_eq!(eval_parametrization(&spec, &params, &idx).unwrap(), q(30));
    let outside: MomentIndex = "11".parse().unwrap();
    assert_eq!(
        eval_parametrization(&spec, &params, &outside),
        Err(Error::IndexOutOfStratum(outside))
    );
}

#[test]
fn cubic_relation_at_rational_points() {
    let spec = VarietySpec::full(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = |v: &std::collections::HashMap<MomentIndex, BigRational>, s: &str| v[&s.parse::<MomentIndex>().unwrap()].clone();
    for _ in 0..10 {
        let v = eval_all(&spec, &MixtureParams::random_rational(&spec, &mut rng)).unwrap();
        assert_eq!(
            m(&v, "012") * m(&v, "120") * m(&v, "201"),
            m(&v, "021") * m(&v, "210") * m(&v, "102")
        );
    }
}

#[test]
fn mixtures_add_components() {
    let spec = VarietySpec::stratum(4, lam(&[2, 1])).with_rank(2);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let params = MixtureParams::random_rational(&spec, &mut rng);
    let single = spec.clone().with_rank(1);
    let total = eval_all(&spec, &params).unwrap();
    let a = eval_all(&single, &params.component(0)).unwrap();
    let b = eval_all(&single, &params.component(1)).unwrap();
    for (idx, v) in total {
        assert_eq!(v, &a[&idx] + &b[&idx]);
    }
}

#[test]
fn jacobian_rank_of_m53() {
    let spec = VarietySpec::full(5, 3);
    let field = PrimeField::new(MERSENNE_61).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let params = MixtureParams::random_mod_p(&spec, &field, &mut rng);
    let jac = jacobian_secant(&spec, &params).unwrap();
    assert_eq!((jac.rows(), jac.cols()), (35, 15));
    let m = mvkit_core::linalg::PrimeFieldMatrix::from_field_matrix(field, jac.map(|x| x.value));
    assert_eq!(m.rank(), 15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strata_partition_all_moments(n in 1usize..=5, d in 1u32..=5) {
        let all: BTreeSet<_> = enumerate_moments(n, d as usize).into_iter().collect();
        let mut union = BTreeSet::new();
        for p in partitions_fitting(d, n) {
            let stratum = enumerate_stratum(n, &p).unwrap();
            prop_assert_eq!(stratum.len() as u128, p.stratum_size(n).unwrap());
            for idx in stratum {
                prop_assert_eq!(Partition::of_index(&idx), p.clone());
                prop_assert!(union.insert(idx));
            }
        }
        prop_assert_eq!(union, all);
        prop_assert_eq!(moment_count(n, d as usize), enumerate_moments(n, d as usize).len() as u128);
    }

    #[test]
    fn reduction_invariants(n in 1usize..=7, parts in prop::collection::vec(1u32..=6, 1..=7)) {
        prop_assume!(parts.len() <= n);
        let lam = Partition::new(parts);
        let r = reduce_partition(n, &lam).unwrap();
        prop_assert_eq!(r.nu.len(), n);
        prop_assert_eq!(r.multiplicities.iter().sum::<usize>(), n);
        prop_assert!(r.multiplicities.windows(2).all(|w| w[0] >= w[1]));
        for (level, &k) in r.multiplicities.iter().enumerate() {
            prop_assert_eq!(r.nu.iter().filter(|&&v| v as usize == level).count(), k);
        }
        // the reduced stratum has the same size as the original one
        let reduced = r.nu_partition();
        if !reduced.is_empty() {
            prop_assert_eq!(reduced.stratum_size(n).unwrap(), lam.stratum_size(n).unwrap());
        }
    }

    #[test]
    fn index_strings_round_trip(exps in prop::collection::vec(0u32..=12, 1..=8)) {
        let idx = MomentIndex::new(exps);
        let back: MomentIndex = idx.to_string().parse().unwrap();
        prop_assert_eq!(back, idx);
    }
}
