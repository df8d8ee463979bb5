use qoneway::lowerbounds::{build_pair_distributions, coset_family, vardist_certificate, DEFAULT_BIAS};
use qoneway::protocols::{coset_basis_protocol, random_protocol};
use qoneway::rng::stream;

fn main() {
    let p = 3;
    let (prob, fam, b) = coset_family(p).unwrap();
    let pairs = build_pair_distributions(&prob, &fam, &b).unwrap();

    let r = vardist_certificate(&coset_basis_protocol(p).unwrap(), &pairs, DEFAULT_BIAS).unwrap();
    println!("basis: E‖ρ − ρ_y‖ = {:.4} ≤ {:.4} (L = {})", r.expected_tdist, r.bound, r.l);

    let mut rng = stream(2, 0);
    for l in 1..=3 {
        let proto = random_protocol(p * p, p * p, l, 1, &mut rng).unwrap();
        let r = vardist_certificate(&proto, &pairs, DEFAULT_BIAS).unwrap();
        println!("random L = {l}: {:.4} ≤ {:.4}", r.expected_tdist, r.bound);
    }
}
