use proptest::prelude::*;
use wahba_core::oracle::{brute_force_min, davenport_solve, random_instance, InstanceKind, SplitMix64};
use wahba_core::{
    conjugate_by, is_pairwise_similar, reduce_to_pure, rotation_angle_between, solve_two_obs, sylvester_solve,
    wahba_cost, Error, MemberParams, ObservationPair, Quaternion, SylvesterFamily, DEFAULT_TOL,
};

fn nonreal(rng: &mut SplitMix64) -> Quaternion {
    let (w, _) = rng.normal_pair();
    Quaternion::real(w) + Quaternion::pure(rng.normal3())
}

/// Least-squares fit of `target` by `λ s + μ t` via the 2×2 normal equations.
fn fit_two(target: Quaternion, s: Quaternion, t: Quaternion) -> (f64, f64, f64) {
    let (ss, st, tt) = (s.dot4(s), s.dot4(t), t.dot4(t));
    let (sy, ty) = (s.dot4(target), t.dot4(target));
    let det = ss * tt - st * st;
    let lambda = (sy * tt - ty * st) / det;
    let mu = (ss * ty - st * sy) / det;
    let residual = (target - s * lambda - t * mu).norm();
    (lambda, mu, residual)
}

#[test]
fn sylvester_soundness_and_completeness() {
    let mut rng = SplitMix64::new(2024);
    for _ in 0..300 {
        let a = nonreal(&mut rng);
        let q0 = Quaternion::from_array([0; 4].map(|_| rng.normal_pair().0));
        let b = conjugate_by(q0, a).unwrap();
        let f = sylvester_solve(a, b, DEFAULT_TOL).unwrap();
        assert!(!f.antipodal);
        for _ in 0..10 {
            let (l, m) = rng.normal_pair();
            let q = f.sample(l, m, None).unwrap();
            assert!(SylvesterFamily::residual(a, b, q) <= 1e-10 * a.norm() * q.norm());
        }
        let (_, _, res) = fit_two(q0, f.sqrt_part, f.sum_part);
        assert!(res <= 1e-8 * q0.norm(), "completeness residual {res}");
    }
}

#[test]
fn sylvester_solutions_are_a_linear_space() {
    let mut rng = SplitMix64::new(5);
    for _ in 0..100 {
        let a = nonreal(&mut rng);
        let b = conjugate_by(rng.unit_quaternion(), a).unwrap();
        let f = sylvester_solve(a, b, DEFAULT_TOL).unwrap();
        let p = f.sample(1.3, -0.2, None).unwrap();
        let q = f.sample(-0.4, 2.0, None).unwrap();
        let c = p * 0.7 - q * 1.9;
        assert!(SylvesterFamily::residual(a, b, c) <= 1e-10 * a.norm() * c.norm());
    }
}

#[test]
fn sylvester_rejects_dissimilar() {
    let mut rng = SplitMix64::new(6);
    for _ in 0..200 {
        let a = nonreal(&mut rng);
        let b = conjugate_by(rng.unit_quaternion(), a).unwrap();
        let b = b + b.im() * 1e-3;
        assert!(matches!(sylvester_solve(a, b, DEFAULT_TOL), Err(Error::NotSimilar(_))));
    }
}

#[test]
fn generic_instances_recover_truth() {
    for seed in 0..2000 {
        let g = random_instance(seed, InstanceKind::Generic);
        let f = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap();
        let cost = g.pair.cost(f.canonical).unwrap();
        assert!(cost <= 1e-10 * g.pair.cost_scale(), "seed {seed}: cost {cost}");
        assert!(f.canonical.sign_aligned_distance(g.truth) <= 1e-8, "seed {seed}");
        assert!((f.canonical.norm() - 1.0).abs() <= 1e-12);
        assert!(f.canonical.w >= 0.0);
    }
}

#[test]
fn cross_product_decomposition_and_orthogonality() {
    for seed in 0..500 {
        let g = random_instance(seed, InstanceKind::Generic);
        let p = g.pair;
        let f = solve_two_obs(&p, DEFAULT_TOL).unwrap();
        let ca = p.a1.im_cross(p.a2);
        let cb = p.b1.im_cross(p.b2);
        let r = conjugate_by(f.canonical, ca).unwrap() - cb;
        assert!(r.norm() <= 1e-10 * ca.norm());
        assert!((f.a3.norm() - f.b3.norm()).abs() <= 1e-10 * ca.norm());
        let anti = f.a3 * p.b1 + p.b1 * f.a3;
        assert!(anti.norm() <= 1e-10 * ca.norm() * p.b1.norm());
    }
}

#[test]
fn sampled_members_have_zero_cost() {
    let grid = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-2.0, 0.5), (0.3, -0.7), (5.0, 0.0), (0.0, -3.0), (-1.0, -1.0), (0.1, 2.0), (2.5, 2.5)];
    for seed in 0..200 {
        let g = random_instance(seed, InstanceKind::Generic);
        let f = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap();
        for (l1, m1) in grid {
            for l2 in [1.0, -1.0] {
                let q = f.sample(&MemberParams { lambda1: l1, mu1: m1, lambda2: l2, ..Default::default() }).unwrap();
                assert!(g.pair.cost(q).unwrap() <= 1e-10 * g.pair.cost_scale());
            }
        }
    }
}

#[test]
fn degenerate_kinds() {
    for kind in [InstanceKind::AntipodalFirst, InstanceKind::AntipodalCross, InstanceKind::Collinear] {
        for seed in 0..300 {
            let g = random_instance(seed, kind);
            let f = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap();
            match kind {
                InstanceKind::AntipodalFirst => assert!(f.q1_family.antipodal, "seed {seed}"),
                InstanceKind::AntipodalCross => assert!(f.q2_antipodal, "seed {seed}"),
                InstanceKind::Collinear => assert!(f.collinear, "seed {seed}"),
                InstanceKind::Generic => unreachable!(),
            }
            let cost = g.pair.cost(f.canonical).unwrap();
            assert!(cost <= 1e-9 * g.pair.cost_scale(), "{kind} seed {seed}: {cost}");
            if kind != InstanceKind::Collinear {
                assert!(f.canonical.sign_aligned_distance(g.truth) <= 1e-8, "{kind} seed {seed}");
            }
        }
    }
}

#[test]
fn existence_gate_matches_predicate() {
    let mut rng = SplitMix64::new(77);
    for seed in 0..500 {
        let g = random_instance(seed, InstanceKind::Generic);
        let p = g.pair;
        let b2 = if seed % 2 == 0 { p.b2 * 1.01 } else { p.b2 + p.b1.im_cross(p.b2) * 0.01 };
        let bad = ObservationPair::new(p.a1, p.a2, p.b1, b2, DEFAULT_TOL).unwrap();
        let verdict = is_pairwise_similar(bad.a1, bad.a2, bad.b1, bad.b2, DEFAULT_TOL).unwrap().verdict;
        let res = solve_two_obs(&bad, DEFAULT_TOL);
        assert_eq!(matches!(res, Err(Error::NotPairwiseSimilar(_))), !verdict);
        assert!(!verdict);
        let _ = rng.next_u64();
    }
}

#[test]
fn oracle_agreement() {
    for seed in 0..500 {
        let g = random_instance(seed, InstanceKind::Generic);
        let closed = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap().canonical;
        let eig = davenport_solve(&g.pair.pairs()).unwrap();
        let angle = rotation_angle_between(closed, eig).unwrap();
        assert!(angle <= 1e-7, "seed {seed}: {angle}");
    }
}

#[test]
fn brute_force_never_wins() {
    for seed in 0..30 {
        let g = random_instance(seed, InstanceKind::Generic);
        let closed = g.pair.cost(solve_two_obs(&g.pair, DEFAULT_TOL).unwrap().canonical).unwrap();
        let (_, brute) = brute_force_min(&g.pair.pairs(), 2000, seed);
        assert!(closed <= brute);
    }
}

#[test]
fn brute_force_coarse_bound() {
    let g = random_instance(3, InstanceKind::Generic);
    let (_, c) = brute_force_min(&g.pair.pairs(), 100_000, 3);
    assert!(c <= 1e-2 * g.pair.cost_scale().max(1.0), "{c}");
}

#[test]
fn reduce_to_pure_preserves_cost() {
    let mut rng = SplitMix64::new(8);
    for seed in 0..50 {
        let g = random_instance(seed, InstanceKind::Generic);
        let (s1, s2) = rng.normal_pair();
        let p = g.pair;
        let lifted = ObservationPair::new(
            p.a1 + Quaternion::real(s1),
            p.a2 + Quaternion::real(s2),
            p.b1 + Quaternion::real(s1),
            p.b2 + Quaternion::real(s2),
            DEFAULT_TOL,
        )
        .unwrap();
        let reduced = reduce_to_pure(&lifted).unwrap();
        assert!(reduced.is_pure());
        for _ in 0..100 {
            let q = Quaternion::from_array([0; 4].map(|_| rng.normal_pair().0));
            let a = lifted.cost(q).unwrap();
            let b = reduced.cost(q).unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a));
        }
    }
}

proptest! {
    #[test]
    fn cost_is_scale_invariant(seed in 0u64..1000, c in prop_oneof![-1e3f64..-1e-3, 1e-3f64..1e3], q in prop::array::uniform4(-1.0f64..1.0)) {
        let q = Quaternion::from_array(q);
        prop_assume!(q.norm() > 1e-3);
        let g = random_instance(seed, InstanceKind::Generic);
        let pairs = g.pair.pairs();
        let a = wahba_cost(q, &pairs).unwrap();
        let b = wahba_cost(q * c, &pairs).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn solve_is_deterministic(seed in 0u64..10_000) {
        let g = random_instance(seed, InstanceKind::Generic);
        let a = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap();
        let b = solve_two_obs(&g.pair, DEFAULT_TOL).unwrap();
        prop_assert_eq!(a, b);
    }
}
