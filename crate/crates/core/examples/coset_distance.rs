use qoneway::exact::to_f64;
use qoneway::lowerbounds::coset_report;

fn main() {
    for p in [2, 3, 5, 7, 11] {
        let r = coset_report(p).unwrap();
        println!(
            "p = {p:>2}: Δ = {} ({:.5}), closed form {}, Pr[f = 0] = {}",
            r.delta,
            to_f64(&r.delta),
            r.closed_form,
            r.probability_f_zero
        );
    }
}
