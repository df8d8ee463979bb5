use num_traits::{One, Zero};
use proptest::prelude::*;
use qoneway::exact::{q, qi, to_f64, Q};
use qoneway::groups::{enumerate_subgroups, order_stats, small_groups, FiniteGroup, SubsetInstance};
use qoneway::lowerbounds::{
    build_pair_distributions, coset_family, sample_subset, subset_delta, subset_family, vardist_certificate,
    DEFAULT_BIAS,
};
use qoneway::polymethod::{
    acceptance_polynomial, degree_lower_bound, derivative_floor_check, library, random_poly, sup_norm, Poly,
};
use qoneway::protocols::{
    basis_protocol, boost, equality_fingerprint, evaluate_protocol, group_membership_advice, is_prime,
    matrix_diagnostics, random_protocol, subset_fingerprint, OneWayProblem,
};
use qoneway::qcore::{
    apply_measurement, measure_and_recover, partial_trace, pure_trace_distance, random, trace_distance,
    DensityMatrix,
};
use qoneway::reconstruct::{bob_decode, simulate_message};
use qoneway::rng::stream;
use rand::Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn trace_distance_is_a_metric(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = stream(seed, 0);
        let (a, b, c) = (
            random::density_matrix(dim, &mut rng),
            random::density_matrix(dim, &mut rng),
            random::density_matrix(dim, &mut rng),
        );
        let ab = trace_distance(&a, &b).unwrap();
        prop_assert!((ab - trace_distance(&b, &a).unwrap()).abs() < 1e-10);
        prop_assert!(trace_distance(&a, &a).unwrap() < 1e-8);
        prop_assert!(ab <= trace_distance(&a, &c).unwrap() + trace_distance(&c, &b).unwrap() + 1e-10);
    }

    #[test]
    fn pure_distance_formula(seed in any::<u64>(), dim in 2usize..8) {
        let mut rng = stream(seed, 1);
        let (psi, phi) = (random::pure_state(dim, &mut rng), random::pure_state(dim, &mut rng));
        let want = (1.0 - psi.inner(&phi).norm_sqr()).max(0.0).sqrt();
        let got = trace_distance(&psi.to_density(), &phi.to_density()).unwrap();
        prop_assert!((got - want).abs() < 1e-8);
        prop_assert!((pure_trace_distance(&psi, &phi).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn partial_trace_contracts(seed in any::<u64>()) {
        let mut rng = stream(seed, 2);
        let (a, b) = (random::density_matrix(6, &mut rng), random::density_matrix(6, &mut rng));
        let full = trace_distance(&a, &b).unwrap();
        for keep in [[0usize], [1]] {
            let (ra, rb) = (partial_trace(&a, &[2, 3], &keep).unwrap(), partial_trace(&b, &[2, 3], &keep).unwrap());
            prop_assert!(trace_distance(&ra, &rb).unwrap() <= full + 1e-10);
        }
    }

    #[test]
    fn recovery_within_bound(seed in any::<u64>(), dim in 2usize..7, ancilla in 1usize..3, pure in any::<bool>()) {
        let mut rng = stream(seed, 3);
        let rho = if pure { random::pure_state(dim, &mut rng).to_density() } else { random::density_matrix(dim, &mut rng) };
        let m = random::measurement(dim, ancilla, &mut rng);
        let r = measure_and_recover(&rho, &m).unwrap();
        let eps = r.epsilon;
        prop_assert!(r.distance <= (eps * (1.0 - eps)).sqrt() + 1e-8);
        prop_assert!(r.distance <= eps.sqrt() + 1e-8);
        let out = apply_measurement(&rho, &m).unwrap();
        prop_assert!((out.probability(0) + out.probability(1) - 1.0).abs() < 1e-10);
        for bit in 0..2 {
            if let Some(post) = out.post(bit) {
                prop_assert!(DensityMatrix::new(post.matrix().clone()).is_ok());
            }
        }
    }

    #[test]
    fn translation_is_bijective(gi in 0usize..24, seed in any::<u64>()) {
        let g = &small_groups()[gi];
        let n = g.order();
        let mut rng = stream(seed, 4);
        let set = sample_subset(n, rng.random_range(1..=n), &mut rng);
        for x in g.elements() {
            let mut t = g.translate(x, &set);
            t.sort_unstable();
            t.dedup();
            prop_assert_eq!(t.len(), set.len());
        }
    }

    #[test]
    fn advice_outputs(gi in 0usize..24) {
        let g = &small_groups()[gi];
        for h in enumerate_subgroups(g) {
            prop_assert_eq!(h.left_cosets().iter().map(Vec::len).sum::<usize>(), g.order());
            for x in g.elements() {
                let p = group_membership_advice(g, &h, x).unwrap();
                let want = if h.contains(x) { 1.0 } else { 0.5 };
                prop_assert!((p - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn random_table_diagnostics(seed in any::<u64>(), a in 1usize..6, b in 1usize..6) {
        let mut rng = stream(seed, 5);
        let table: Vec<Vec<bool>> = (0..1 << a).map(|_| (0..1 << b).map(|_| rng.random()).collect()).collect();
        let prob = OneWayProblem::from_table("t", table).unwrap();
        let d = matrix_diagnostics(&prob).unwrap();
        prop_assert!(d.sauer_verdict);
        prop_assert!((1usize << d.matrix.vc) <= d.matrix.rows);
    }

    #[test]
    fn boosting_never_hurts(seed in any::<u64>(), flip in 0.0f64..0.3) {
        let prob = qoneway::protocols::equality(1).unwrap();
        let noisy = basis_protocol(&prob).unwrap().with_decoder_noise(flip).unwrap();
        let e1 = evaluate_protocol(&noisy, &prob).unwrap().worst_case_error;
        let e3 = evaluate_protocol(&boost(&noisy, 3).unwrap(), &prob).unwrap().worst_case_error;
        prop_assert!(e3 <= e1 + 1e-12, "seed {seed}: {e3} > {e1}");
    }

    #[test]
    fn fingerprints_are_one_sided(x in 0u64..4096, seed in any::<u64>()) {
        let fp = equality_fingerprint(12, 0.2, seed).unwrap();
        prop_assert_eq!(fp.accept_probability(x, x), 1.0);
        let z = FiniteGroup::cyclic(20).unwrap();
        let mut rng = stream(seed, 6);
        let inst = SubsetInstance::new(&z, &sample_subset(20, rng.random_range(1..=10), &mut rng)).unwrap();
        let sf = subset_fingerprint(&inst, seed).unwrap();
        let xs = (x % 20) as usize;
        for y in 0..20 {
            if inst.contains(z.op(xs, y)) {
                prop_assert_eq!(sf.accept_probability(xs, y), 1.0);
            }
        }
    }

    #[test]
    fn reconstruction_on_random_tables(seed in any::<u64>(), a in 1usize..4, b in 1usize..4) {
        let mut rng = stream(seed, 7);
        let table: Vec<Vec<bool>> = (0..1 << a).map(|_| (0..1 << b).map(|_| rng.random()).collect()).collect();
        let prob = OneWayProblem::from_table("t", table).unwrap();
        let p = basis_protocol(&prob).unwrap();
        for x in 0..prob.alice_inputs() {
            let adv = simulate_message(&p, &prob, x).unwrap();
            prop_assert!(adv.len() <= adv.k());
            prop_assert_eq!(&adv, &simulate_message(&p, &prob, x).unwrap());
            for y in prob.domain_of(x) {
                prop_assert_eq!(bob_decode(&adv, &p, y).unwrap() == 1, prob.value(x, y).unwrap());
            }
        }
    }

    #[test]
    fn certificate_and_marginals(seed in any::<u64>(), p in prop::sample::select(vec![2usize, 3]), l in 1usize..3) {
        let (prob, fam, b) = coset_family(p).unwrap();
        let pairs = build_pair_distributions(&prob, &fam, &b).unwrap();
        prop_assert!(pairs.marginals_consistent().unwrap());
        let proto = random_protocol(p * p, p * p, l, 1, &mut stream(seed, 8)).unwrap();
        let r = vardist_certificate(&proto, &pairs, DEFAULT_BIAS).unwrap();
        prop_assert!(r.expected_tdist <= r.bound + 1e-8);
    }

    #[test]
    fn subset_paths_agree(gi in 0usize..24, seed in any::<u64>()) {
        let g = &small_groups()[gi];
        prop_assume!(g.order() >= 2);
        let mut rng = stream(seed, 9);
        let set = sample_subset(g.order(), rng.random_range(1..=g.order() / 2), &mut rng);
        let inst = SubsetInstance::new(g, &set).unwrap();
        let d = subset_delta(&inst).unwrap();
        prop_assert_eq!(&d.delta, &d.pair_delta);
        let (prob, fam, b) = subset_family(&inst).unwrap();
        prop_assert!(build_pair_distributions(&prob, &fam, &b).unwrap().marginals_consistent().unwrap());
    }

    #[test]
    fn sup_norm_dominates_samples(seed in any::<u64>(), degree in 1usize..6, m in 0usize..3) {
        let p = random_poly(degree, &mut stream(seed, 10));
        let n = qi(5);
        let sup = to_f64(&sup_norm(&p, &n, m));
        let dm = p.nth_derivative(m);
        let sampled = (0..=500).map(|i| dm.eval_f64(i as f64 / 100.0).abs()).fold(0.0, f64::max);
        prop_assert!(sampled <= sup * (1.0 + 1e-9) + 1e-12);
        prop_assert!(sup <= sampled + 1e-2 * (1.0 + sup));
    }

    #[test]
    fn floor_check_on_interpolants(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = stream(seed, 11);
        let mut xs: Vec<Q> = (0..=k as i64).map(qi).collect();
        let delta = q(rng.random_range(1..=20), 20);
        let mut ys: Vec<Q> = vec![Q::zero(); k];
        ys.push(delta.clone());
        for j in 0..rng.random_range(0..3) {
            xs.push(qi(k as i64 + 1 + j));
            ys.push(q(rng.random_range(-10..=10), 10));
        }
        let p = Poly::interpolate(&xs, &ys);
        let n = qi(xs.len() as i64);
        prop_assert!(derivative_floor_check(&p, k, &delta, &n).unwrap().verdict);
    }
}

#[test]
fn acceptance_degree_meets_lower_bound() {
    let mut checked = 0;
    for n in [4usize, 6, 8] {
        for alg in library::catalogue(n).unwrap() {
            let p = acceptance_polynomial(&alg).unwrap();
            let vals: Vec<f64> = (0..=n).map(|i| to_f64(&p.eval(&qi(i as i64)))).collect();
            let Some(k) = vals.iter().position(|v| *v >= 1e-9) else { continue };
            if k == 0 {
                continue;
            }
            let r0 = to_f64(&sup_norm(&p, &qi(n as i64), 0));
            let bound = degree_lower_bound(n as u64, k as u64, vals[k].min(1.0), r0).unwrap();
            assert!(p.degree().unwrap() as f64 >= bound.value - 1e-6, "{}: {} < {}", alg.name, p.degree().unwrap(), bound.value);
            checked += 1;
        }
    }
    assert!(checked >= 6, "only {checked} instances");
}

#[test]
fn odd_prime_cyclic_has_no_involutions() {
    for p in (3..60).filter(|&p| is_prime(p)) {
        assert_eq!(order_stats(&FiniteGroup::cyclic(p as usize).unwrap()).r, 0);
    }
}

#[test]
fn subgroup_subset_delta() {
    let z4 = FiniteGroup::cyclic(4).unwrap();
    let d = subset_delta(&SubsetInstance::new(&z4, &[0, 2]).unwrap()).unwrap();
    assert_eq!(d.delta, Q::one() - q(2, 4));
}
