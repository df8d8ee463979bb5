//! Measure a random state with a random two-outcome measurement, undo the
//! dilation and compare the recovered state with the original.

use qoneway::qcore::{measure_and_recover, random};
use qoneway::rng::stream;

fn main() {
    let mut rng = stream(7, 0);
    for dim in [2, 3, 4, 8] {
        let rho = random::density_matrix(dim, &mut rng);
        let m = random::measurement(dim, 1, &mut rng);
        let r = measure_and_recover(&rho, &m).unwrap();
        println!(
            "dim {dim}: eps = {:.4}, ‖ρ̃ − ρ‖ = {:.4}, √ε = {:.4}",
            r.epsilon,
            r.distance,
            r.epsilon.sqrt()
        );
    }
}
