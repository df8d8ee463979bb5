mod common;

use common::{cli, schema, validate, INVOCATIONS};
use serde_json::Value;

fn report(args: &[&str]) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("json output")
}

#[test]
fn reports_match_schemas() {
    for args in INVOCATIONS {
        let r = report(args);
        let name = r["experiment"].as_str().unwrap().to_string();
        assert_eq!(name, args[0]);
        validate(&schema(&name), &r, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn same_seed_same_bytes() {
    for args in INVOCATIONS {
        let mut a = vec!["--seed", "11"];
        a.extend_from_slice(args);
        let first = cli(&a).stdout;
        assert_eq!(first, cli(&a).stdout, "{args:?}");
        a.extend_from_slice(&["--jobs", "1"]);
        assert_eq!(first, cli(&a).stdout, "{args:?} with one worker");
    }
}

#[test]
fn documented_examples() {
    let r = report(&["coset-delta", "--p", "3"]);
    assert_eq!(r["results"]["delta"]["num"], 2);
    assert_eq!(r["results"]["delta"]["den"], 9);

    let r = report(&["goodasnew", "--dim", "4", "--trials", "1000", "--seed", "7"]);
    assert!(r["results"]["max_violation"].as_f64().unwrap() <= 0.0);
    assert_eq!(r["seed"], 7);

    let r = report(&["reconstruct", "--problem", "eq:1", "--seed", "1"]);
    assert_eq!(r["results"]["T"], 1);
    assert_eq!(r["results"]["K"], 1);
    assert_eq!(r["results"]["all_correct"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["no-such-command"]).code, 1);
    assert_eq!(cli(&["coset-delta"]).code, 1);
    assert_eq!(cli(&["coset-delta", "--p", "4"]).code, 1);
    assert_eq!(cli(&["randset", "--group", "q8", "--k", "2"]).code, 1);
    assert_eq!(cli(&["--help"]).code, 0);
    assert_eq!(cli(&["grover-all", "--n", "4", "--k", "1", "--schedule", "1", "--trials", "50"]).code, 0);
    // too noisy for the error budget at K = 1
    let out = cli(&["reconstruct", "--problem", "eq:1", "--protocol", "noisy", "--noise", "0.2", "--copies", "1"]);
    assert_eq!(out.code, 2);
    let r: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r["results"]["compliant"], false);
}

#[test]
fn csv_output() {
    let out = cli(&["--format", "csv", "coset-delta", "--p", "5"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!(col("delta"), "4/25");
    assert_eq!(col("verdict"), "true");

    let out = cli(&["--format", "csv", "pqp", "--n", "2"]);
    assert_eq!(out.stdout.lines().count(), 5);
    let out = cli(&["--format", "csv", "direct-product", "--n", "10000", "--k", "2", "--t", "10"]);
    assert!(out.stdout.contains("0.0170666666667"), "{}", out.stdout);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("qoneway-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = cli(&["--out", p, "cheb", "--d", "3", "--m", "1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["results"]["closed_form"]["num"], 9);
    std::fs::remove_file(path).ok();
}
