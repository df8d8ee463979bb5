use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::*;
use crate::error::{Error, Result};
use crate::exact::{q, serialize_q, to_f64, Q};
use crate::groups::{enumerate_subgroups, parse_elements, periodicity, FiniteGroup, Subgroup, SubsetInstance};
use crate::lowerbounds::{
    build_pair_distributions, coset_family, coset_report, randset_check, randset_enumeration, subset_delta,
    vardist_certificate,
};
use crate::polymethod::{
    chebyshev_tools, degree_lower_bound, direct_product_bound, grover_find_all, markov_bounds, random_poly,
    rescaled_chebyshev, standard_schedule, sup_norm,
};
use crate::protocols::{
    basis_protocol, boost, coset_basis_protocol, equality_fingerprint, evaluate_protocol,
    group_membership_advice, hadamard_fingerprint_protocol, matrix_diagnostics, parse_problem, pqp_advice,
    pqp_advice_f64, random_protocol, subset_fingerprint, QuantumOneWayProtocol,
};
use crate::qcore::{measure_and_recover, random, DERIVED_TOL};
use crate::reconstruct::{bob_decode, error_budget, trace_message};
use crate::rng::stream;

type Produced = (&'static str, Value, Value);

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub(super) fn dispatch(cmd: &Command, seed: u64) -> Result<Produced> {
    Ok(match cmd {
        Command::Goodasnew(a) => ("goodasnew", to_value(a), goodasnew(a, seed)?),
        Command::Reconstruct(a) => ("reconstruct", to_value(a), reconstruct(a)?),
        Command::CosetDelta(a) => ("coset-delta", to_value(a), coset(a)?),
        Command::SubsetDelta(a) => ("subset-delta", to_value(a), subset(a)?),
        Command::Randset(a) => ("randset", to_value(a), randset(a, seed)?),
        Command::VardistCheck(a) => ("vardist-check", to_value(a), vardist(a, seed)?),
        Command::Membership(a) => ("membership", to_value(a), membership(a)?),
        Command::Pqp(a) => ("pqp", to_value(a), pqp(a, seed)?),
        Command::Diagnostics(a) => ("diagnostics", to_value(a), diagnostics(a)?),
        Command::Cheb(a) => ("cheb", to_value(a), cheb(a)?),
        Command::Markov(a) => ("markov", to_value(a), markov(a, seed)?),
        Command::DegreeBound(a) => ("degree-bound", to_value(a), to_value(&degree_lower_bound(a.n, a.k, a.delta, a.r0)?)),
        Command::DirectProduct(a) => ("direct-product", to_value(a), direct_product(a)?),
        Command::GroverAll(a) => ("grover-all", to_value(a), grover(a, seed)?),
        Command::Fingerprint(a) => ("fingerprint", to_value(a), fingerprint(a, seed)?),
    })
}

fn goodasnew(a: &GoodAsNewArgs, seed: u64) -> Result<Value> {
    if a.trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    if let Some(d) = a.dim {
        if !(2..=64).contains(&d) {
            return Err(Error::InvalidParameter(format!("dim = {d} outside 2..=64")));
        }
    }
    if a.ancilla > 4 {
        return Err(Error::InvalidParameter(format!("ancilla = {} exceeds 4", a.ancilla)));
    }
    let instances = (0..a.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i as u64);
            let dim = a.dim.unwrap_or(2 + i % 7);
            let pure = i % 2 == 0;
            let rho = if pure { random::pure_state(dim, &mut rng).to_density() } else { random::density_matrix(dim, &mut rng) };
            let m = random::measurement(dim, a.ancilla, &mut rng);
            let r = measure_and_recover(&rho, &m)?;
            let expected = (r.epsilon * (1.0 - r.epsilon)).max(0.0).sqrt();
            Ok(json!({
                "trial": i,
                "dim": dim,
                "pure": pure,
                "epsilon": r.epsilon,
                "distance": r.distance,
                "bound": r.bound(),
                "intermediate": r.intermediate_distance,
                "intermediate_gap": if pure { (r.intermediate_distance - expected).abs() } else { 0.0 },
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let field = |v: &Value, k: &str| v[k].as_f64().unwrap_or(f64::NAN);
    let max_violation = instances
        .iter()
        .map(|v| field(v, "distance") - field(v, "bound") - DERIVED_TOL)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_gap = instances.iter().map(|v| field(v, "intermediate_gap")).fold(0.0, f64::max);
    Ok(json!({
        "trials": a.trials,
        "tolerance": DERIVED_TOL,
        "max_violation": max_violation,
        "max_intermediate_gap": max_gap,
        "verdict": max_violation <= 0.0 && max_gap <= DERIVED_TOL,
        "instances": instances,
    }))
}

fn equality_size(problem: &str) -> Result<usize> {
    problem
        .strip_prefix("eq:")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::InvalidParameter(format!("the fingerprint protocol needs an eq:n problem, got {problem}")))
}

fn reconstruct(a: &ReconstructArgs) -> Result<Value> {
    let prob = parse_problem(&a.problem)?;
    let proto: QuantumOneWayProtocol = match a.protocol {
        ProtocolKind::Basis => basis_protocol(&prob)?,
        ProtocolKind::Fingerprint => hadamard_fingerprint_protocol(equality_size(&a.problem)?)?,
        ProtocolKind::Noisy => boost(&basis_protocol(&prob)?.with_decoder_noise(a.noise)?, a.copies)?,
    };
    proto.check_matches(&prob)?;
    let eta = evaluate_protocol(&proto, &prob)?.worst_case_error;
    let k = proto.qubits();
    let budget = error_budget(k);
    let instances = (0..prob.alice_inputs())
        .into_par_iter()
        .map(|x| {
            let tr = trace_message(&proto, &prob, x)?;
            let domain = prob.domain_of(x);
            let mut wrong = Vec::new();
            for &y in &domain {
                if (bob_decode(&tr.advice, &proto, y)? == 1) != prob.value(x, y).unwrap_or(false) {
                    wrong.push(y);
                }
            }
            let ties = tr.steps.iter().filter(|s| s.tie).count();
            Ok(json!({
                "x": x,
                "T": tr.advice.len(),
                "domain": domain.len(),
                "ties": ties,
                "correct": wrong.is_empty(),
                "wrong": wrong,
                "advice": tr.advice,
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let t_max = instances.iter().filter_map(|v| v["T"].as_u64()).max().unwrap_or(0) as usize;
    let all_correct = instances.iter().all(|v| v["correct"] == Value::Bool(true));
    let compliant = eta <= budget;
    Ok(json!({
        "problem": prob.id(),
        "protocol": proto.name(),
        "K": k,
        "eta": eta,
        "budget": budget,
        "compliant": compliant,
        "T": t_max,
        "all_correct": all_correct,
        "verdict": compliant && all_correct && t_max <= k,
        "instances": instances,
    }))
}

fn coset(a: &CosetArgs) -> Result<Value> {
    let r = coset_report(a.p)?;
    let mut v = to_value(&r);
    v["verdict"] = json!(r.delta_matches && r.probability_matches);
    Ok(v)
}

fn subset(a: &SubsetArgs) -> Result<Value> {
    let g = FiniteGroup::parse(&a.group)?;
    let inst = SubsetInstance::new(&g, &parse_elements(&a.set)?)?;
    let d = subset_delta(&inst)?;
    let mut v = to_value(&d);
    v["group"] = json!(g.spec().to_string());
    v["periodicity"] = json!(periodicity(&g, inst.set())?);
    v["verdict"] = json!(d.equality_verdict);
    Ok(v)
}

fn randset(a: &RandsetArgs, seed: u64) -> Result<Value> {
    let g = FiniteGroup::parse(&a.group)?;
    let report = randset_check(&g, a.k, a.trials, seed)?;
    let mut v = to_value(&report);
    if g.order() <= 16 {
        let e = randset_enumeration(&g, a.k)?;
        let matches = e == report.exact_expectation;
        v["enumeration"] = to_value(&crate::exact::Exact(e));
        v["enumeration_matches"] = json!(matches);
        v["verdict"] = json!(report.verdict && matches);
    }
    Ok(v)
}

fn vardist(a: &VardistArgs, seed: u64) -> Result<Value> {
    let (prob, fam, b) = coset_family(a.p)?;
    let pairs = build_pair_distributions(&prob, &fam, &b)?;
    let n = prob.alice_inputs();
    let mut instances = vec![{
        let r = vardist_certificate(&coset_basis_protocol(a.p)?, &pairs, a.beta)?;
        let mut v = to_value(&r);
        v["protocol"] = json!("coset-basis");
        v
    }];
    for i in 0..a.random {
        let p = random_protocol(n, n, a.qubits, 1, &mut stream(seed, i as u64))?;
        let mut v = to_value(&vardist_certificate(&p, &pairs, a.beta)?);
        v["protocol"] = json!(format!("random-{i}"));
        instances.push(v);
    }
    let verdict = instances.iter().all(|v| v["verdict"] == Value::Bool(true));
    Ok(json!({
        "problem": prob.id(),
        "delta": to_value(&crate::exact::Exact(pairs.distance_to_product())),
        "verdict": verdict,
        "instances": instances,
    }))
}

fn membership(a: &MembershipArgs) -> Result<Value> {
    let g = FiniteGroup::parse(&a.group)?;
    let subgroups: Vec<Subgroup> = match &a.generators {
        Some(s) => vec![Subgroup::generated_by(&g, &parse_elements(s)?)?],
        None => enumerate_subgroups(&g),
    };
    let mut instances = Vec::new();
    for h in &subgroups {
        let mut max_in = 0.0f64;
        let mut max_out = 0.0f64;
        for x in g.elements() {
            let p = group_membership_advice(&g, h, x)?;
            if h.contains(x) {
                max_in = max_in.max((p - 1.0).abs());
            } else {
                max_out = max_out.max((p - 0.5).abs());
            }
        }
        instances.push(json!({
            "subgroup": h.elements(),
            "order": h.len(),
            "max_in_deviation": max_in,
            "max_out_deviation": max_out,
            "ok": max_in <= 1e-9 && max_out <= 1e-9,
        }));
    }
    let verdict = instances.iter().all(|v| v["ok"] == Value::Bool(true));
    Ok(json!({ "group": g.spec().to_string(), "subgroups": instances.len(), "verdict": verdict, "instances": instances }))
}

#[derive(Serialize)]
struct PqpRow {
    x: usize,
    bit: bool,
    #[serde(serialize_with = "serialize_q")]
    probability: Q,
    simulated: f64,
}

fn pqp(a: &PqpArgs, seed: u64) -> Result<Value> {
    if a.n > 8 {
        return Err(Error::InvalidParameter(format!("n = {} exceeds 8", a.n)));
    }
    let len = 1usize << a.n;
    let mut rng = stream(seed, 0);
    let table: Vec<bool> = (0..len).map(|_| rand::Rng::random(&mut rng)).collect();
    let expected = q(1, 2) + q(1, 2 * len as i64);
    let rows = (0..len)
        .map(|x| Ok(PqpRow { x, bit: table[x], probability: pqp_advice(&table, x)?, simulated: pqp_advice_f64(&table, x)? }))
        .collect::<Result<Vec<_>>>()?;
    let exact = rows.iter().all(|r| r.probability == expected);
    let max_gap = rows.iter().map(|r| (r.simulated - to_f64(&r.probability)).abs()).fold(0.0, f64::max);
    Ok(json!({
        "n": a.n,
        "expected": to_value(&crate::exact::Exact(expected)),
        "all_exact": exact,
        "max_simulation_gap": max_gap,
        "verdict": exact && max_gap <= 1e-9,
        "instances": rows,
    }))
}

fn diagnostics(a: &DiagnosticsArgs) -> Result<Value> {
    let prob = parse_problem(&a.problem)?;
    let d = matrix_diagnostics(&prob)?;
    Ok(json!({
        "problem": prob.id(),
        "rows": d.matrix.rows,
        "cols": d.matrix.cols,
        "vc": d.matrix.vc,
        "sauer_sum": d.sauer_sum.to_string(),
        "sauer_verdict": d.sauer_verdict,
        "verdict": d.sauer_verdict,
        "instances": d.reports,
    }))
}

fn cheb(a: &ChebArgs) -> Result<Value> {
    let t = chebyshev_tools(a.d, a.m)?;
    let mut v = to_value(&t);
    v["verdict"] = json!(t.matches);
    Ok(v)
}

fn markov(a: &MarkovArgs, seed: u64) -> Result<Value> {
    if a.n <= 0 || a.degree == 0 {
        return Err(Error::InvalidParameter("need n > 0 and degree ≥ 1".into()));
    }
    let nq = Q::from_integer(a.n.into());
    let cheb = rescaled_chebyshev(a.d, &nq);
    let r0 = sup_norm(&cheb, &nq, 0);
    let r1 = sup_norm(&cheb, &nq, 1);
    let eq = markov_bounds(&r0, &r1, &nq, a.d, 1)?;
    let equality_case = eq.aa_lower_degree == a.d as f64;
    let rows = (0..a.trials)
        .into_par_iter()
        .map(|i| {
            let p = random_poly(a.degree, &mut stream(seed, i as u64));
            let r0 = sup_norm(&p, &nq, 0);
            let mut worst = f64::NEG_INFINITY;
            for m in 1..=a.degree {
                let rm = sup_norm(&p, &nq, m);
                let rhs = markov_bounds(&r0, &rm, &nq, a.degree, m)?.va_rhs;
                worst = worst.max(to_f64(&rm) / to_f64(&rhs));
            }
            Ok(json!({ "trial": i, "polynomial": p.to_string(), "worst_ratio": worst, "holds": worst <= 1.0 + 1e-12 }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let all = rows.iter().all(|v| v["holds"] == Value::Bool(true));
    Ok(json!({
        "chebyshev_degree": a.d,
        "aa_lower_degree": eq.aa_lower_degree,
        "equality_case": equality_case,
        "va_holds": all,
        "verdict": equality_case && all,
        "instances": rows,
    }))
}

fn direct_product(a: &DirectProductArgs) -> Result<Value> {
    if a.t == 0 {
        return Err(Error::InvalidParameter("T must be at least 1".into()));
    }
    let value = direct_product_bound(a.n, a.k, a.t);
    let vacuous = 2.0 * a.t as f64 >= (a.n as f64 / 2.0).sqrt();
    Ok(json!({ "N": a.n, "K": a.k, "T": a.t, "delta_max": value, "vacuous": vacuous }))
}

fn grover(a: &GroverArgs, seed: u64) -> Result<Value> {
    let schedule = match &a.schedule {
        Some(s) => parse_elements(s)?,
        None => standard_schedule(a.n, a.k),
    };
    Ok(to_value(&grover_find_all(a.n, a.k, &schedule, seed, a.trials)?))
}

fn fingerprint(a: &FingerprintArgs, seed: u64) -> Result<Value> {
    match a.kind {
        FingerprintKind::Eq => {
            let fp = equality_fingerprint(a.n, a.target, seed)?;
            let config = json!({ "n": fp.n, "t": fp.t, "lo": fp.lo, "hi": fp.hi, "primes": fp.primes.len(), "error_bound": fp.error_bound, "message_bits": fp.message_bits });
            let limit = 1u64 << a.n.min(63);
            match (a.x, a.y) {
                (Some(x), Some(y)) => {
                    if x >= limit || y >= limit {
                        return Err(Error::InvalidParameter(format!("inputs must be below 2^{}", a.n)));
                    }
                    let exact = fp.accept_probability(x, y);
                    let sim = fp.simulate(x, y, a.trials);
                    let se = (exact * (1.0 - exact) / a.trials.max(1) as f64).sqrt();
                    let correct = if x == y { exact == 1.0 } else { exact <= fp.error_bound };
                    Ok(json!({
                        "config": config, "x": x, "y": y, "accept_probability": exact, "simulation": sim,
                        "verdict": correct && (sim.rate - exact).abs() <= 4.0 * se + 1e-12,
                    }))
                }
                _ => {
                    if a.n > 10 {
                        return Err(Error::InvalidParameter("exhaustive sweep needs n ≤ 10; pass --x and --y".into()));
                    }
                    let worst = (0..limit)
                        .into_par_iter()
                        .map(|x| (0..limit).filter(|&y| y != x).map(|y| fp.accept_probability(x, y)).fold(0.0, f64::max))
                        .reduce(|| 0.0, f64::max);
                    Ok(json!({ "config": config, "max_false_accept": worst, "verdict": worst <= fp.error_bound }))
                }
            }
        }
        FingerprintKind::Subset => {
            let g = FiniteGroup::parse(a.group.as_deref().ok_or_else(|| Error::InvalidParameter("--group is required".into()))?)?;
            let set = parse_elements(a.set.as_deref().ok_or_else(|| Error::InvalidParameter("--set is required".into()))?)?;
            let inst = SubsetInstance::new(&g, &set)?;
            let fp = subset_fingerprint(&inst, seed)?;
            let n = g.order();
            let rows: Vec<(usize, usize, bool, f64)> = (0..n)
                .into_par_iter()
                .flat_map_iter(|x| {
                    let (g, inst, fp) = (&g, &inst, &fp);
                    (0..n).map(move |y| (x, y, inst.contains(g.op(x, y)), fp.accept_probability(x, y)))
                })
                .collect();
            let min_true = rows.iter().filter(|r| r.2).map(|r| r.3).fold(1.0, f64::min);
            let max_false = rows.iter().filter(|r| !r.2).map(|r| r.3).fold(0.0, f64::max);
            Ok(json!({
                "group": g.spec().to_string(),
                "lo": fp.lo, "hi": fp.hi, "primes": fp.primes.len(), "message_bits": fp.message_bits,
                "min_true_accept": min_true,
                "max_false_accept": max_false,
                "verdict": min_true == 1.0 && max_false <= 1.0 / 3.0,
            }))
        }
    }
}
