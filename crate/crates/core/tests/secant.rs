use mvkit_core::moments::{moment_count, Partition, VarietySpec};
use mvkit_core::secant::*;
use mvkit_core::toric::{dim_toric, dim_toric_stratum};

const M412: [i128; 11] = [47, 91, 135, 175, 215, 255, 291, 327, 363, 399, 431];

fn numeric(spec: &VarietySpec) -> SecantDimension {
    let d = dim_secant_numeric(spec, &NumericOptions::default()).unwrap();
    assert!(d.agree, "{}: trials disagree {:?}", d.variety, d.ranks);
    d
}

#[test]
fn greedy_matches_exhaustive_sweep() {
    for n in 1..=6 {
        for d in 1..=8 {
            for r in 1..=8 {
                let inst = IlpInstance::new(n, d, r).unwrap();
                let g = solve_greedy(&inst);
                let e = solve_exhaustive(&inst);
                assert_eq!(g.value, e.value, "n={n} d={d} r={r}");
                assert!(inst.is_feasible(&g.c));
                assert!(inst.is_feasible(&e.c));
                let cert = certify_greedy(&inst, &g.c).unwrap();
                assert_eq!(cert.dual_objective, g.value);
                assert!(g.value <= bound_expected(n, d, r));
            }
        }
    }
}

#[test]
fn cone_bound_is_strict_for_large_r() {
    let mut strict = false;
    for n in 2..=5 {
        for d in 3..=6 {
            for r in n..=n + 3 {
                let g = greedy_ilp(n, d, r).unwrap().value;
                strict |= g < bound_expected(n, d, r);
            }
        }
    }
    assert!(strict);
}

#[test]
fn m412_sequence_from_ilp() {
    for (r, &want) in (1..=11).zip(M412.iter()) {
        let g = greedy_ilp(4, 12, r).unwrap();
        assert_eq!(g.value, want, "r={r}");
        let inst = IlpInstance::new(4, 12, r).unwrap();
        assert_eq!(certify_greedy(&inst, &g.c).unwrap().primal_objective, want);
        assert_eq!(bound_expected(4, 12, r), (44 * r as i128 + 3).min(454));
    }
    assert_eq!(bound_ilp_exhaustive(4, 12, 4).unwrap().value, 175);
    assert_eq!(bound_ilp_exhaustive(4, 12, 11).unwrap().value, 431);
}

#[test]
fn m412_sequence_from_jacobian() {
    for (r, &want) in (1..=11).zip(M412.iter()) {
        let d = numeric(&VarietySpec::full(4, 12).with_rank(r));
        assert_eq!(d.dim as i128, want, "r={r}");
    }
}

#[test]
fn small_secant_dimensions() {
    assert_eq!(numeric(&VarietySpec::full(5, 3).with_rank(2)).dim, 24);
    assert_eq!(numeric(&VarietySpec::full(4, 4).with_rank(2)).dim, 27);
    let hyp = VarietySpec::stratum(5, Partition::new(vec![1, 1])).with_rank(2);
    assert_eq!(numeric(&hyp).dim, 8);
    assert_eq!(greedy_ilp(5, 3, 2).unwrap().value, 24);
}

#[test]
fn rank_one_is_toric_dimension() {
    for n in 1..=5 {
        for d in 1..=4 {
            assert_eq!(numeric(&VarietySpec::full(n, d)).dim as u128, dim_toric(n, d));
        }
    }
    let lam = Partition::new(vec![3, 2, 1]);
    assert_eq!(
        numeric(&VarietySpec::stratum(4, lam.clone())).dim as u128,
        dim_toric_stratum(4, &lam).unwrap()
    );
}

#[test]
fn numeric_below_ilp_below_cone() {
    for n in 2..=4 {
        for d in 2..=5 {
            let mut prev = 0;
            for r in 1..=4 {
                let dim = numeric(&VarietySpec::full(n, d).with_rank(r)).dim;
                let ilp = greedy_ilp(n, d, r).unwrap().value;
                assert!(dim as i128 <= ilp, "n={n} d={d} r={r}");
                assert!(ilp <= bound_expected(n, d, r));
                assert!(dim >= prev);
                assert!(dim as u128 <= moment_count(n, d) - 1);
                prev = dim;
            }
        }
    }
}

#[test]
fn hypersimplex_dimensions() {
    let h = |n, d, r| numeric(&VarietySpec::stratum(n, Partition::new(vec![1; d])).with_rank(r)).dim;
    assert_eq!(h(6, 3, 1), 5);
    assert_eq!(h(7, 3, 2), 13);
}

#[test]
fn sweep_rows() {
    let full = conjecture_sweep(
        SweepKind::FullDegree,
        &SweepRanges { n: 4..=4, d: 12..=12, r: 1..=3 },
        &NumericOptions::default(),
    )
    .unwrap();
    assert_eq!(full.len(), 3);
    assert!(full.iter().all(|row| row.matches));
    let v = serde_json::to_value(&full[0]).unwrap();
    assert_eq!(v["dim_numeric"], 47);
    assert_eq!(v["ilp_bound"], 47);
    assert_eq!(v["expected_bound"], 47);
    assert_eq!(v["tropical_ok"], serde_json::Value::Null);
    assert_eq!(v["match"], true);

    let hyp = conjecture_sweep(
        SweepKind::Hypersimplex,
        &SweepRanges { n: 5..=7, d: 1..=4, r: 1..=2 },
        &NumericOptions::default(),
    )
    .unwrap();
    // only (6,3) and (7,3), (7,4) satisfy 3 ≤ d ≤ n - 3
    let cases: Vec<_> = hyp.iter().map(|row| (row.n, row.d, row.r)).collect();
    assert_eq!(cases, vec![(6, 3, 1), (6, 3, 2), (7, 3, 1), (7, 3, 2), (7, 4, 1), (7, 4, 2)]);
    assert!(hyp.iter().all(|row| row.matches));
}

/// Plain enumeration of every c in [0, nr]^d, no pruning.
fn brute_force_ilp(inst: &IlpInstance) -> i128 {
    let cap = inst.cap();
    let mut c = vec![0i128; inst.d];
    let mut best = -1;
    loop {
        if inst.is_feasible(&c) {
            best = best.max(c.iter().sum::<i128>() - 1);
        }
        let mut i = 0;
        while i < inst.d && c[i] == cap {
            c[i] = 0;
            i += 1;
        }
        if i == inst.d {
            return best;
        }
        c[i] += 1;
    }
}

#[test]
fn exhaustive_matches_brute_force() {
    for n in 1..=3 {
        for d in 1..=4 {
            for r in 0..=2 {
                let inst = IlpInstance::new(n, d, r).unwrap();
                let want = brute_force_ilp(&inst);
                assert_eq!(solve_exhaustive(&inst).value, want, "n={n} d={d} r={r}");
                assert_eq!(solve_greedy(&inst).value, want, "n={n} d={d} r={r}");
            }
        }
    }
}
