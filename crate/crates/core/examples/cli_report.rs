//! Drive the command-line runner in-process and print its JSON and CSV.

fn main() {
    for args in [
        vec!["qoneway", "coset-delta", "--p", "5"],
        vec!["qoneway", "--format", "csv", "degree-bound", "--n", "100", "--k", "1", "--delta", "1"],
    ] {
        let out = qoneway::cli::run(&args);
        println!("$ {} (exit {})\n{}", args[1..].join(" "), out.code, out.stdout);
    }
}
