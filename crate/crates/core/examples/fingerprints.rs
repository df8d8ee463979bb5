use qoneway::groups::{FiniteGroup, SubsetInstance};
use qoneway::protocols::{equality_fingerprint, subset_fingerprint};

fn main() {
    let fp = equality_fingerprint(16, 0.1, 3).unwrap();
    println!("equality n=16: {} primes in [{}, {}), {} bits, error ≤ {:.4}", fp.primes.len(), fp.lo, fp.hi, fp.message_bits, fp.error_bound);
    println!("  x = y: {}", fp.accept_probability(41_000, 41_000));
    println!("  x ≠ y: {:.4}", fp.accept_probability(41_000, 41_000 + 2 * 3 * 5 * 7));

    let g = FiniteGroup::cyclic(16).unwrap();
    let inst = SubsetInstance::new(&g, &[0, 1, 3]).unwrap();
    let sf = subset_fingerprint(&inst, 3).unwrap();
    let worst = (0..16).flat_map(|x| (0..16).map(move |y| (x, y)))
        .filter(|&(x, y)| !inst.contains(g.op(x, y)))
        .map(|(x, y)| sf.accept_probability(x, y))
        .fold(0.0, f64::max);
    println!("subset z16 {{0,1,3}}: worst false accept {worst:.4}");
}
