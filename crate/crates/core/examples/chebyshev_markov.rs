//! Chebyshev polynomials and the two Markov inequalities, in exact arithmetic.

use qoneway::exact::{qi, to_f64};
use qoneway::polymethod::{chebyshev_tools, markov_bounds, rescaled_chebyshev, sup_norm};

fn main() {
    for d in [2, 5, 8] {
        let t = chebyshev_tools(d, 2).unwrap();
        println!("T_{d} = {}   T''(1) = {}", t.polynomial, t.derivative_at_one);
    }

    let n = qi(4);
    let p = rescaled_chebyshev(3, &n);
    let (r0, r1) = (sup_norm(&p, &n, 0), sup_norm(&p, &n, 1));
    let b = markov_bounds(&r0, &r1, &n, 3, 1).unwrap();
    println!("deg 3 on [0, 4]: r0 = {r0}, r1 = {r1}, degree ≥ {:.3}, V.A. bound {}", b.aa_lower_degree, b.va_rhs);
    println!("r1 / bound = {:.6}", to_f64(&r1) / to_f64(&b.va_rhs));
}
