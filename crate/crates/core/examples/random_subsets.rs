//! Expected distance over random `K`-subsets: closed form against sampling.

use qoneway::groups::FiniteGroup;
use qoneway::lowerbounds::randset_check;

fn main() {
    for (spec, k) in [("z3", 2), ("z2^3", 3), ("z101", 10)] {
        let g = FiniteGroup::parse(spec).unwrap();
        let r = randset_check(&g, k, 10_000, 1).unwrap();
        println!(
            "{spec} K={k}: exact {} ≈ {:.6}, sampled {:.6} ± {:.6}",
            r.exact_expectation,
            qoneway::exact::to_f64(&r.exact_expectation),
            r.empirical_mean,
            r.standard_error
        );
    }
}
