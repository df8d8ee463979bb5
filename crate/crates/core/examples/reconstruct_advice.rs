//! Turn a quantum message into classical advice and let Bob decode every
//! input from it.

use qoneway::protocols::{basis_protocol, boost, parse_problem};
use qoneway::reconstruct::{bob_decode, trace_message};

fn main() {
    let prob = parse_problem("eq:2").unwrap();
    let p = boost(&basis_protocol(&prob).unwrap().with_decoder_noise(0.01).unwrap(), 3).unwrap();
    for x in 0..prob.alice_inputs() {
        let trace = trace_message(&p, &prob, x).unwrap();
        let advice = &trace.advice;
        let decoded: Vec<u8> = (0..prob.bob_inputs()).map(|y| bob_decode(advice, &p, y).unwrap()).collect();
        println!("x = {x}: T = {} of K = {}, decoded {decoded:?}", advice.len(), advice.k());
    }
}
