//! Solver invariants checked with random instances and brute-force grids.

use mmp_core::problems::*;
use mmp_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sorted_box(a: Vec<f64>, b: Vec<f64>) -> BoxNd {
    let lower = a.iter().zip(&b).map(|(x, y)| x.min(*y)).collect();
    let upper = a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect();
    BoxNd::new(lower, upper).unwrap()
}

fn unit_pair(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (prop::collection::vec(0.0..=1.0f64, n), prop::collection::vec(0.0..=1.0f64, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bisection_partitions_the_box((a, b) in unit_pair(3), k in 0u64..1000) {
        let parent = sorted_box(a, b);
        prop_assume!(parent.diameter() > 0.0);
        let (lo, hi) = parent.bisect(k).unwrap();
        let axis = parent.longest_axis();
        prop_assert_eq!(lo.birth_iteration(), k);
        prop_assert_eq!(hi.birth_iteration(), k);
        prop_assert!(parent.contains_box(&lo) && parent.contains_box(&hi));
        for i in 0..3 {
            if i == axis {
                prop_assert_eq!(lo.lower()[i], parent.lower()[i]);
                prop_assert_eq!(lo.upper()[i], hi.lower()[i]);
                prop_assert_eq!(hi.upper()[i], parent.upper()[i]);
                let mid = 0.5 * (parent.lower()[i] + parent.upper()[i]);
                prop_assert!((lo.upper()[i] - mid).abs() <= 1e-15);
            } else {
                prop_assert_eq!(lo.lower()[i], parent.lower()[i]);
                prop_assert_eq!(lo.upper()[i], parent.upper()[i]);
                prop_assert_eq!(hi.lower()[i], parent.lower()[i]);
                prop_assert_eq!(hi.upper()[i], parent.upper()[i]);
            }
            prop_assert!(parent.width(axis) >= parent.width(i));
        }
    }

    #[test]
    fn wsr_bound_dominates_feasible_values(seed in 0u64..10_000, (a, b) in unit_pair(3), s in any::<u64>()) {
        let net = generate_channels(3, seed).unwrap();
        let region = sorted_box(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        for repr in [Representation::Mmp, Representation::Dm] {
            let f = weighted_sum_rate_function(&net, repr).unwrap();
            let u = f.bound(&region).unwrap();
            for _ in 0..50 {
                let x: Vec<f64> = (0..3).map(|i| rng.random_range(region.lower()[i]..=region.upper()[i])).collect();
                prop_assert!(f.diagonal(&x).unwrap() <= u + 1e-9);
            }
        }
    }

    #[test]
    fn bound_gap_is_nonnegative(seed in 0u64..10_000, (a, b) in unit_pair(4)) {
        let net = generate_channels(4, seed).unwrap();
        prop_assert!(bound_gap_mmp_vs_dm(&net, &sorted_box(a, b)).unwrap() >= -1e-12);
    }

    #[test]
    fn reduction_keeps_every_improving_feasible_point(
        seed in 0u64..10_000,
        (a, b) in unit_pair(2),
        gamma_at in (0.0..=1.0f64, 0.0..=1.0f64),
        rmin in 0.0..1.0f64,
    ) {
        let mut net = generate_channels(2, seed).unwrap();
        net.rmin = vec![rmin, 0.0];
        let problem = wsr_problem(&net, Representation::Mmp).unwrap();
        let region = sorted_box(a, b);
        let gamma = problem.objective().diagonal(&[gamma_at.0, gamma_at.1]).unwrap();
        let reduced = reduce(&region, problem.objective(), problem.constraints(), gamma, 10).unwrap();
        if let Some(r) = &reduced {
            prop_assert!(region.contains_box(r));
        }
        let n = 40;
        for i in 0..=n {
            for j in 0..=n {
                let t = [i as f64 / n as f64, j as f64 / n as f64];
                let x: Vec<f64> = (0..2).map(|d| region.lower()[d] + t[d] * region.width(d)).collect();
                if problem.is_feasible(&x, 0.0).unwrap() && problem.objective().diagonal(&x).unwrap() > gamma {
                    let kept = reduced.as_ref().is_some_and(|r| r.contains(&x, 1e-12));
                    prop_assert!(kept, "lost {:?}", x);
                }
            }
        }
    }
}

#[test]
fn incumbent_value_never_decreases() {
    for seed in 0..5 {
        let net = generate_channels(3, seed).unwrap();
        let cfg = SolverConfig {
            trace: true,
            ..SolverConfig::default().with_eta(0.01)
        };
        let res = solve(&wsr_problem(&net, Representation::Dm).unwrap(), &cfg).unwrap();
        for w in res.trace.windows(2) {
            assert!(w[1].gamma >= w[0].gamma);
        }
        let last = res.trace.last().unwrap();
        assert!(res.value >= last.gamma);
    }
}

#[test]
fn selection_rules_agree() {
    for seed in 0..5 {
        let p = wsr_problem(&generate_channels(3, seed).unwrap(), Representation::Mmp).unwrap();
        let run = |rule| {
            let cfg = SolverConfig {
                selection_rule: rule,
                ..SolverConfig::default().with_eta(0.01)
            };
            solve(&p, &cfg).unwrap()
        };
        let best = run(SelectionRule::BestFirst);
        let oldest = run(SelectionRule::OldestFirst);
        assert_eq!(best.status, SolveStatus::EtaOptimal);
        assert_eq!(oldest.status, SolveStatus::EtaOptimal);
        assert!((best.value - oldest.value).abs() <= 0.01 + 1e-9);
    }
}

#[test]
fn reduction_does_not_change_the_answer() {
    for seed in 0..5 {
        let mut net = generate_channels(2, seed).unwrap();
        net.rmin = vec![0.5, 0.5];
        let p = wsr_problem(&net, Representation::Mmp).unwrap();
        let run = |reduction_enabled| {
            let cfg = SolverConfig {
                reduction_enabled,
                ..SolverConfig::default().with_eta(0.01)
            };
            solve(&p, &cfg).unwrap()
        };
        let (on, off) = (run(true), run(false));
        assert_eq!(on.status, off.status);
        if on.status != SolveStatus::Infeasible {
            assert!((on.value - off.value).abs() <= 0.01 + 1e-9);
        }
    }
}

fn grid_max_2d(f: impl Fn(&[f64]) -> f64, n: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        for j in 0..=n {
            best = best.max(f(&[i as f64 / n as f64, j as f64 / n as f64]));
        }
    }
    best
}

#[test]
fn relative_tolerance_covers_grid_optimum() {
    for seed in 0..5 {
        let net = generate_channels(2, seed).unwrap();
        let grid = grid_max_2d(|p| net.weighted_sum_rate(p), 400);
        let cfg = SolverConfig {
            tolerance_mode: ToleranceMode::Relative,
            ..SolverConfig::default().with_eta(0.01)
        };
        let res = solve(&wsr_problem(&net, Representation::Mmp).unwrap(), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::RelativeEtaOptimal);
        assert!(1.01 * res.value >= grid);
    }
}

#[test]
fn minimum_rates_respected() {
    let mut net = generate_channels(2, 77).unwrap();
    net.rmin = vec![1.0, 1.0];
    let p = wsr_problem(&net, Representation::Mmp).unwrap();
    let res = solve(&p, &SolverConfig::default().with_eta(0.01)).unwrap();
    let grid = {
        let mut best = f64::NEG_INFINITY;
        let n = 400;
        for i in 0..=n {
            for j in 0..=n {
                let x = [i as f64 / n as f64, j as f64 / n as f64];
                if net.rate(0, &x) >= 1.0 && net.rate(1, &x) >= 1.0 {
                    best = best.max(net.weighted_sum_rate(&x));
                }
            }
        }
        best
    };
    if grid.is_finite() {
        assert_eq!(res.status, SolveStatus::EtaOptimal);
        let x = res.incumbent.unwrap();
        assert!(net.rate(0, &x) >= 1.0 - 1e-9 && net.rate(1, &x) >= 1.0 - 1e-9);
        assert!(res.value >= grid - 0.01 - 1e-9);
    }
}

/// Random constraint `Σ_{j∈I} a_j x_j^2 − Σ_{k∉I} b_k x_k − c ≤ 0`, which is
/// nondecreasing in `x_I` and nonincreasing elsewhere.
fn separable(rng: &mut ChaCha8Rng, n: usize, split: &[usize]) -> (MmConstraint, impl Fn(&[f64]) -> f64) {
    let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
    let c: f64 = rng.random_range(-0.5..1.5);
    let in_split: Vec<bool> = (0..n).map(|i| split.contains(&i)).collect();
    let (a2, s2) = (a.clone(), in_split.clone());
    let g = MmFunction::new(n, move |x, y| {
        (0..n).map(|i| if s2[i] { a2[i] * x[i] * x[i] } else { -a2[i] * y[i] }).sum::<f64>() - c
    });
    let plain = move |x: &[f64]| {
        (0..n).map(|i| if in_split[i] { a[i] * x[i] * x[i] } else { -a[i] * x[i] }).sum::<f64>() - c
    };
    (MmConstraint::with_split(g, split.iter().copied()).unwrap(), plain)
}

#[test]
fn conclusive_test_matches_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..40 {
        let n = 2 + case % 2;
        let split: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let mut cons = Vec::new();
        let mut plains = Vec::new();
        for _ in 0..2 {
            let (c, p) = separable(&mut rng, n, &split);
            cons.push(c);
            plains.push(p);
        }
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        let region = sorted_box(a, b);
        let verdict = mm_conclusive_test(&region, &cons).unwrap();
        let steps = if n == 2 { 200 } else { 40 };
        let mut any = false;
        let mut idx = vec![0usize; n];
        'grid: loop {
            let x: Vec<f64> = (0..n)
                .map(|d| region.lower()[d] + region.width(d) * idx[d] as f64 / steps as f64)
                .collect();
            if plains.iter().all(|g| g(&x) <= 0.0) {
                any = true;
                break;
            }
            for d in 0..n {
                idx[d] += 1;
                if idx[d] <= steps {
                    continue 'grid;
                }
                idx[d] = 0;
            }
            break;
        }
        assert_eq!(verdict.is_feasible(), any, "case {case}");
        if let Some(w) = verdict.witness {
            assert!(region.contains(&w, 0.0));
            assert!(plains.iter().all(|g| g(&w) <= 1e-9));
        }
    }
}
