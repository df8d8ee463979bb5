use serde_json::{Map, Value};

/// `x` with 12 significant digits, trailing zeros removed; scientific
/// notation outside `[1e−5, 1e15)`.
pub fn sig_digits(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        let s = format!("{:.11e}", x);
        let (mant, e) = s.split_once('e').expect("scientific");
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        return format!("{mant}e{e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn is_rational(m: &Map<String, Value>) -> bool {
    m.len() == 3 && m.contains_key("num") && m.contains_key("den") && m.contains_key("decimal")
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => sig_digits(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        Value::Object(m) if is_rational(m) => {
            let part = |k: &str| match &m[k] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("{}/{}", part("num"), part("den"))
        }
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !is_rational(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

/// One record per element of `results.instances` when present, otherwise a
/// single record of the flattened results. Nested objects become dotted
/// columns; rationals become `num/den`.
pub fn to_csv(results: &Value) -> String {
    let records: Vec<Vec<(String, String)>> = match results.get("instances").and_then(Value::as_array) {
        Some(items) if !items.is_empty() => items
            .iter()
            .map(|it| {
                let mut row = Vec::new();
                flatten("", it, &mut row);
                row
            })
            .collect(),
        _ => {
            let mut row = Vec::new();
            flatten("", results, &mut row);
            vec![row]
        }
    };
    let mut header: Vec<String> = Vec::new();
    for r in &records {
        for (k, _) in r {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in &records {
        let row: Vec<&str> = header
            .iter()
            .map(|h| r.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()))
            .collect();
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
