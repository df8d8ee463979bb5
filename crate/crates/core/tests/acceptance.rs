//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use qoneway::exact::{q, qi, to_f64, Q};
use qoneway::groups::{enumerate_subgroups, small_groups, FiniteGroup, SubsetInstance};
use qoneway::lowerbounds::{
    build_pair_distributions, coset_family, coset_report, randset_check, randset_closed_form, randset_enumeration,
    sample_subset, subset_delta, vardist_certificate, DEFAULT_BIAS,
};
use qoneway::polymethod::{
    acceptance_polynomial, chebyshev, chebyshev_derivative_at_one, derivative_floor_check, direct_product_bound,
    grover_find_all, library, markov_bounds, random_poly, rescaled_chebyshev, sup_norm, Poly,
};
use qoneway::protocols::{
    basis_protocol, boost, coset_basis_protocol, evaluate_protocol, group_membership_advice,
    hadamard_fingerprint_protocol, matrix_diagnostics, parse_problem, pqp_advice, random_protocol, OneWayProblem,
    QuantumOneWayProtocol,
};
use qoneway::qcore::{measure_and_recover, random};
use qoneway::reconstruct::{bob_decode, error_budget, simulate_message};
use qoneway::rng::stream;
use rand::Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn good_as_new() -> Check {
    let (mut pure, mut worst) = (0, f64::NEG_INFINITY);
    for i in 0..1400u64 {
        let mut rng = stream(2024, i);
        let dim = 2 + (i % 7) as usize;
        let is_pure = i % 2 == 0;
        let rho = if is_pure { random::pure_state(dim, &mut rng).to_density() } else { random::density_matrix(dim, &mut rng) };
        let m = random::measurement(dim, 1 + (i % 2) as usize, &mut rng);
        let r = measure_and_recover(&rho, &m).map_err(|e| e.to_string())?;
        worst = worst.max(r.distance - r.epsilon.sqrt());
        ensure(r.distance <= r.epsilon.sqrt() + 1e-8, || format!("trial {i}: {} > √{}", r.distance, r.epsilon))?;
        if is_pure {
            pure += 1;
            let want = (r.epsilon * (1.0 - r.epsilon)).sqrt();
            ensure((r.intermediate_distance - want).abs() <= 1e-8, || {
                format!("trial {i}: intermediate {} vs {want}", r.intermediate_distance)
            })?;
        }
    }
    Ok(format!("1400 instances ({pure} pure), max(distance − √ε) = {worst:.2e}"))
}

fn reconstruction() -> Check {
    let noisy = |id: &str, flip: f64| -> Result<(OneWayProblem, QuantumOneWayProtocol), String> {
        let prob = parse_problem(id).map_err(|e| e.to_string())?;
        let p = basis_protocol(&prob).and_then(|b| b.with_decoder_noise(flip)).and_then(|b| boost(&b, 3));
        Ok((prob, p.map_err(|e| e.to_string())?))
    };
    let cases = vec![
        noisy("eq:1", 0.01)?,
        noisy("eq:2", 0.008)?,
        (parse_problem("eq:3").unwrap(), hadamard_fingerprint_protocol(3).map_err(|e| e.to_string())?),
        {
            let prob = parse_problem("promise:4").unwrap();
            let p = basis_protocol(&prob).map_err(|e| e.to_string())?;
            (prob, p)
        },
    ];
    let mut summary = Vec::new();
    for (prob, p) in cases {
        let eta = evaluate_protocol(&p, &prob).map_err(|e| e.to_string())?.worst_case_error;
        let k = p.qubits();
        ensure(eta <= error_budget(k), || format!("{}: η = {eta} over budget", prob.id()))?;
        let mut t_max = 0;
        for x in 0..prob.alice_inputs() {
            let advice = simulate_message(&p, &prob, x).map_err(|e| format!("{} x={x}: {e}", prob.id()))?;
            ensure(advice.len() <= k, || format!("{} x={x}: T > K", prob.id()))?;
            t_max = t_max.max(advice.len());
            for y in prob.domain_of(x) {
                let b = bob_decode(&advice, &p, y).map_err(|e| e.to_string())?;
                ensure((b == 1) == prob.value(x, y).unwrap(), || format!("{} wrong at ({x}, {y})", prob.id()))?;
            }
        }
        summary.push(format!("{} K={k} T≤{t_max}", prob.id()));
    }
    Ok(summary.join("; "))
}

fn coset() -> Check {
    for p in [2usize, 3, 5, 7, 11, 101] {
        let r = coset_report(p).map_err(|e| e.to_string())?;
        let pi = p as i64;
        ensure(r.delta == q(1, pi) - q(1, pi * pi), || format!("p={p}: Δ = {}", r.delta))?;
        ensure(r.probability_f_zero == Q::one() - q(1, pi), || format!("p={p}: Pr[f=0] = {}", r.probability_f_zero))?;
    }
    Ok("p ∈ {2,3,5,7,11,101} exact".into())
}

fn subset() -> Check {
    let groups = [
        "z6", "z12", "z16", "z2^4", "z4xz4", "s3", "d4", "d8", "dic3", "a4", "s4", "z31", "z3xs3", "a5", "z64", "z2^6",
        "z101", "z128", "z4^4", "z256",
    ];
    for i in 0..50u64 {
        let mut rng = stream(77, i);
        let g = FiniteGroup::parse(groups[i as usize % groups.len()]).unwrap();
        let n = g.order();
        let size = rng.random_range(1..=n / 2);
        let set = sample_subset(n, size, &mut rng);
        let inst = SubsetInstance::new(&g, &set).map_err(|e| e.to_string())?;
        let d = subset_delta(&inst).map_err(|e| e.to_string())?;
        ensure(d.delta == d.pair_delta, || format!("instance {i} on {}: {} vs {}", g.spec(), d.delta, d.pair_delta))?;
    }
    let z5 = FiniteGroup::cyclic(5).unwrap();
    let d = subset_delta(&SubsetInstance::new(&z5, &[0, 1]).unwrap()).map_err(|e| e.to_string())?;
    ensure(d.delta == q(2, 5), || format!("ℤ₅/{{0,1}}: Δ = {}", d.delta))?;
    Ok("50 instances dual-path exact; ℤ₅/{0,1} Δ = 2/5".into())
}

fn random_subset() -> Check {
    let mut pairs = 0;
    for g in small_groups() {
        for k in 1..=4.min(g.order()) {
            let a = randset_closed_form(&g, k).map_err(|e| e.to_string())?;
            let b = randset_enumeration(&g, k).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{} K={k}: {a} vs {b}", g.spec()))?;
            pairs += 1;
        }
    }
    ensure(randset_closed_form(&FiniteGroup::cyclic(3).unwrap(), 2).unwrap() == q(1, 24), || "ℤ₃ K=2".into())?;
    let r = randset_check(&FiniteGroup::cyclic(101).unwrap(), 10, 10_000, 5).map_err(|e| e.to_string())?;
    ensure(r.within_four_se, || format!("ℤ₁₀₁: mean {} vs {}", r.empirical_mean, to_f64(&r.exact_expectation)))?;
    Ok(format!(
        "{pairs} (group, K) pairs exact; ℤ₁₀₁ K=10 |mean − exact| = {:.2} SE",
        (r.empirical_mean - to_f64(&r.exact_expectation)).abs() / r.standard_error
    ))
}

fn certificate() -> Check {
    let mut count = 0;
    for p in [2usize, 3] {
        let (prob, fam, b) = coset_family(p).unwrap();
        let pairs = build_pair_distributions(&prob, &fam, &b).map_err(|e| e.to_string())?;
        let r = vardist_certificate(&coset_basis_protocol(p).unwrap(), &pairs, DEFAULT_BIAS).map_err(|e| e.to_string())?;
        ensure(r.expected_tdist <= r.bound + 1e-8, || format!("coset basis p={p}: {} > {}", r.expected_tdist, r.bound))?;
        count += 1;
        for i in 0..10u64 {
            let mut rng = stream(31 + p as u64, i);
            let n = p * p;
            let proto = random_protocol(n, n, 1 + (i % 2) as usize, 1, &mut rng).map_err(|e| e.to_string())?;
            let r = vardist_certificate(&proto, &pairs, DEFAULT_BIAS).map_err(|e| e.to_string())?;
            ensure(r.expected_tdist <= r.bound + 1e-8, || format!("random {i} p={p}: {} > {}", r.expected_tdist, r.bound))?;
            count += 1;
        }
    }
    Ok(format!("{count} certificates (2 basis, 20 random)"))
}

fn polynomial_method() -> Check {
    let mut algs = Vec::new();
    for n in [4, 8] {
        algs.extend(library::catalogue(n).map_err(|e| e.to_string())?);
    }
    let mut rng = stream(8, 0);
    for t in 0..3 {
        algs.push(library::random(4, 1, t, &mut rng).map_err(|e| e.to_string())?);
    }
    for a in &algs {
        let p = acceptance_polynomial(a).map_err(|e| format!("{}: {e}", a.name))?;
        ensure(p.degree().unwrap_or(0) <= 2 * a.queries(), || format!("{}: degree too high", a.name))?;
    }
    for d in 0..=20 {
        let t = chebyshev(d);
        for m in 0..=5 {
            let direct = t.nth_derivative(m).eval(&Q::one());
            ensure(direct == chebyshev_derivative_at_one(d, m), || format!("T_{d}^({m})(1)"))?;
        }
    }
    let n4 = qi(4);
    for i in 0..200u64 {
        let p = random_poly(3, &mut stream(99, i));
        let r0 = sup_norm(&p, &n4, 0);
        for m in 1..=3 {
            let rm = sup_norm(&p, &n4, m);
            let rhs = markov_bounds(&r0, &rm, &n4, 3, m).map_err(|e| e.to_string())?.va_rhs;
            ensure(to_f64(&rm) <= to_f64(&rhs) * (1.0 + 1e-12), || format!("poly {i} m={m}: {rm} > {rhs}"))?;
        }
    }
    for i in 0..100u64 {
        let mut rng = stream(100, i);
        let k = 1 + (i % 4) as usize;
        let roots: Vec<Q> = (0..k as i64).map(qi).collect();
        let extra = random_poly(rng.random_range(0..=2), &mut rng);
        let mut p = Poly::from_roots(&roots) * extra;
        let at_k = p.eval(&qi(k as i64));
        if at_k.is_zero() {
            p = Poly::from_roots(&roots);
        }
        let at_k = p.eval(&qi(k as i64));
        let delta = q(rng.random_range(1..=10), 10);
        p = p.scale(&(&delta / at_k));
        let n = qi(k as i64 + rng.random_range(0..=3));
        let fc = derivative_floor_check(&p, k, &delta, &n).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(fc.verdict, || format!("instance {i}: {:?}", fc.rows))?;
    }
    for d in 1..=10 {
        for nn in [d as i64, 2 * d as i64 + 3, 50] {
            let n = qi(nn);
            let c = rescaled_chebyshev(d, &n);
            let mb = markov_bounds(&sup_norm(&c, &n, 0), &sup_norm(&c, &n, 1), &n, d, 1).map_err(|e| e.to_string())?;
            ensure(mb.aa_lower_degree == d as f64, || format!("d={d} N={nn}: {}", mb.aa_lower_degree))?;
        }
    }
    Ok(format!("{} algorithms; Chebyshev d≤20 m≤5; 200 V.A. checks; 100 floor checks; equality case", algs.len()))
}

fn direct_product() -> Check {
    let mut parts = Vec::new();
    for (n, k, schedule) in [(64, 2, vec![1, 1]), (256, 2, vec![1, 1]), (256, 4, vec![1, 1, 1, 1])] {
        let r = grover_find_all(n, k, &schedule, 17, 10_000).map_err(|e| e.to_string())?;
        let want = direct_product_bound(n as u64, k as u64, schedule.iter().sum::<usize>() as u64);
        ensure(r.bound == want, || "bound mismatch".into())?;
        ensure(r.empirical <= r.bound + 4.0 * r.standard_error, || format!("N={n} K={k}: {} > {}", r.empirical, r.bound))?;
        parts.push(format!("({n},{k}) {:.4} ≤ {:.4}", r.empirical, r.bound));
    }
    let r = grover_find_all(4, 1, &[1], 17, 10_000).map_err(|e| e.to_string())?;
    ensure(r.empirical == 1.0 && r.bound == 1.0, || format!("N=4: {} vs {}", r.empirical, r.bound))?;
    parts.push("(4,1) 1.0 vacuous".into());
    Ok(parts.join("; "))
}

fn protocols() -> Check {
    for spec in ["z2^3", "z4xz2"] {
        let g = FiniteGroup::parse(spec).unwrap();
        for h in enumerate_subgroups(&g) {
            for x in g.elements() {
                let p = group_membership_advice(&g, &h, x).map_err(|e| e.to_string())?;
                let want = if h.contains(x) { 1.0 } else { 0.5 };
                ensure((p - want).abs() <= 1e-9, || format!("{spec} H={:?} x={x}: {p}", h.elements()))?;
            }
        }
    }
    for n in 1..=6usize {
        let len = 1 << n;
        let mut rng = stream(6, n as u64);
        let table: Vec<bool> = (0..len).map(|_| rng.random()).collect();
        let want = q(1, 2) + q(1, 2 * len as i64);
        for x in 0..len {
            ensure(pqp_advice(&table, x).map_err(|e| e.to_string())? == want, || format!("pqp n={n} x={x}"))?;
        }
    }
    let mut problems: Vec<OneWayProblem> = Vec::new();
    for id in ["eq:1", "eq:2", "eq:3", "eq:4", "coset:2", "coset:3", "coset:5", "coset:7"] {
        problems.push(parse_problem(id).unwrap());
    }
    for i in 0..50u64 {
        let mut rng = stream(50, i);
        let a_bits = rng.random_range(1..=8);
        let b_bits = rng.random_range(1..=(16 - a_bits).min(8));
        let table: Vec<Vec<bool>> =
            (0..1 << a_bits).map(|_| (0..1 << b_bits).map(|_| rng.random()).collect()).collect();
        problems.push(OneWayProblem::from_table(format!("random-{i}"), table).unwrap());
    }
    for prob in &problems {
        let d = matrix_diagnostics(prob).map_err(|e| e.to_string())?;
        ensure(d.sauer_verdict, || format!("{}: Sauer verdict false", prob.id()))?;
    }
    Ok(format!("membership on ℤ₂³, ℤ₄×ℤ₂; pqp n≤6; Sauer on {} problems", problems.len()))
}

fn determinism() -> Check {
    for args in common::INVOCATIONS {
        let mut a = vec!["--seed", "3"];
        a.extend_from_slice(args);
        let first = common::cli(&a);
        ensure(first.code != 1, || format!("{args:?}: {}", first.stderr))?;
        ensure(first.stdout == common::cli(&a).stdout, || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("{} invocations byte-identical", common::INVOCATIONS.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("good-as-new recovery", good_as_new, Duration::from_secs(30)),
        ("classical reconstruction", reconstruction, Duration::from_secs(120)),
        ("coset distance", coset, Duration::from_secs(60)),
        ("subset distance", subset, Duration::from_secs(60)),
        ("random subset expectation", random_subset, Duration::from_secs(120)),
        ("trace-distance certificate", certificate, Duration::from_secs(120)),
        ("polynomial method", polynomial_method, Duration::from_secs(180)),
        ("direct product", direct_product, Duration::from_secs(300)),
        ("protocols", protocols, Duration::from_secs(60)),
        ("determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (status, detail) = match (&outcome, took <= *limit) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time limit {limit:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} [{name}] {:.2}s: {detail}", i + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
