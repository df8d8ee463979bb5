use qoneway::polymethod::{direct_product_bound, grover_find_all, standard_schedule};

fn main() {
    for (n, k, schedule) in [(64, 2, vec![1, 1]), (256, 2, vec![1, 1]), (256, 4, vec![1, 1, 1, 1])] {
        let r = grover_find_all(n, k, &schedule, 1, 10_000).unwrap();
        println!("N={n} K={k} T={}: success {:.4}, exact {:.4}, bound {:.4}", r.total_queries, r.empirical, r.exact, r.bound);
    }

    let schedule = standard_schedule(256, 3);
    let r = grover_find_all(256, 3, &schedule, 1, 2_000).unwrap();
    println!("standard schedule {schedule:?}: success {:.4}", r.empirical);
    println!("bound at N=10⁴ K=2 T=10: {:.6}", direct_product_bound(10_000, 2, 10));
}
