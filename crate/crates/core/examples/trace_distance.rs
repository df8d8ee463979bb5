use qoneway::qcore::{partial_trace, pure_trace_distance, random, trace_distance, PureState};
use qoneway::rng::stream;

fn main() {
    let (a, b) = (PureState::basis(0, 2).unwrap(), PureState::uniform_superposition(&[0, 1], 2).unwrap());
    println!("‖|0⟩ − |+⟩‖ = {:.6}", pure_trace_distance(&a, &b).unwrap());

    let mut rng = stream(1, 0);
    let (rho, sigma) = (random::density_matrix(4, &mut rng), random::density_matrix(4, &mut rng));
    let full = trace_distance(&rho, &sigma).unwrap();
    let left = trace_distance(
        &partial_trace(&rho, &[2, 2], &[0]).unwrap(),
        &partial_trace(&sigma, &[2, 2], &[0]).unwrap(),
    )
    .unwrap();
    println!("two qubits: {full:.6}, first qubit only: {left:.6}");
}
