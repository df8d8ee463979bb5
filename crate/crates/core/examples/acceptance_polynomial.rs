//! Symmetrized acceptance polynomials of small query algorithms and the
//! degree bound they have to meet.

use qoneway::exact::{qi, to_f64};
use qoneway::polymethod::{acceptance_polynomial, degree_lower_bound, library, sup_norm};

fn main() {
    let n = 8;
    for alg in library::catalogue(n).unwrap() {
        let p = acceptance_polynomial(&alg).unwrap();
        println!("{:<18} T = {}  deg = {:?}  P(i) = {}", alg.name, alg.queries(), p.degree(), p);
    }

    let g = library::grover(n, 1).unwrap();
    let p = acceptance_polynomial(&g).unwrap();
    let r0 = to_f64(&sup_norm(&p, &qi(n as i64), 0));
    let delta = to_f64(&p.eval(&qi(1)));
    let b = degree_lower_bound(n as u64, 1, delta, r0).unwrap();
    println!("grover: degree {:?} ≥ {:.3} ({:?})", p.degree(), b.value, b.branch);
}
