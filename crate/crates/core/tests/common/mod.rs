#![allow(dead_code)]

use serde_json::Value;

/// Checks the keywords the shipped schemas use: `type`, `enum`, `minimum`,
/// `required`, `properties` and `items`.
pub fn validate(schema: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: bad type keyword")),
        };
        if !types.iter().any(|t| type_matches(t, v)) {
            return Err(format!("{path}: expected {types:?}, found {v}"));
        }
    }
    if let Some(Value::Array(options)) = schema.get("enum") {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            return Err(format!("{path}: {x} < {min}"));
        }
    }
    if let Value::Object(m) = v {
        if let Some(Value::Array(req)) = schema.get("required") {
            for k in req.iter().filter_map(Value::as_str) {
                if !m.contains_key(k) {
                    return Err(format!("{path}: missing {k}"));
                }
            }
        }
        if let Some(Value::Object(props)) = schema.get("properties") {
            for (k, sub) in props {
                if let Some(x) = m.get(k) {
                    validate(sub, x, &format!("{path}.{k}"))?;
                }
            }
        }
    }
    if let (Value::Array(items), Some(sub)) = (v, schema.get("items")) {
        for (i, x) in items.iter().enumerate() {
            validate(sub, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        _ => false,
    }
}

pub fn schema(name: &str) -> Value {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))).expect("schema parses")
}

/// One modest invocation per subcommand.
pub const INVOCATIONS: &[&[&str]] = &[
    &["goodasnew", "--trials", "60"],
    &["reconstruct", "--problem", "eq:1"],
    &["reconstruct", "--problem", "eq:2", "--protocol", "noisy", "--noise", "0.008"],
    &["coset-delta", "--p", "3"],
    &["subset-delta", "--group", "z5", "--set", "0,1"],
    &["randset", "--group", "z5", "--k", "2", "--trials", "200"],
    &["vardist-check", "--p", "2", "--random", "3"],
    &["membership", "--group", "z4xz2"],
    &["pqp", "--n", "3"],
    &["diagnostics", "--problem", "coset:3"],
    &["cheb", "--d", "6", "--m", "2"],
    &["markov", "--trials", "10"],
    &["degree-bound", "--n", "100", "--k", "1", "--delta", "1"],
    &["direct-product", "--n", "10000", "--k", "2", "--t", "10"],
    &["grover-all", "--n", "64", "--k", "2", "--schedule", "1,1", "--trials", "500"],
    &["fingerprint", "--n", "6"],
    &["fingerprint", "--kind", "subset", "--group", "z12", "--set", "0,1"],
];

pub fn cli(args: &[&str]) -> qoneway::cli::Outcome {
    qoneway::cli::run(std::iter::once("qoneway").chain(args.iter().copied()))
}
