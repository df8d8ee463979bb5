use qoneway::protocols::{matrix_diagnostics, parse_problem};

fn main() {
    for id in ["eq:2", "eq:4", "coset:3", "coset:5"] {
        let d = matrix_diagnostics(&parse_problem(id).unwrap()).unwrap();
        println!(
            "{id}: rows {} cols {} VC {} D¹ = {}, Sauer sum {} ({})",
            d.matrix.rows, d.matrix.cols, d.matrix.vc, d.reports[0].value, d.sauer_sum, d.sauer_verdict
        );
    }
}
