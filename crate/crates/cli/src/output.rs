use anyhow::{Context, Result};
use serde_json::{json, Value};

use tuvals::scalar::format_significant;
use tuvals::{parse_rational, Allocation, Rational, Scalar};

pub const SCHEMA_VERSION: u32 = 1;

/// `{"schema": "tuvals.<kind>.v1", ...body}`.
pub fn document(kind: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": format!("tuvals.{kind}.v{SCHEMA_VERSION}") });
    if let (Value::Object(target), Value::Object(fields)) = (&mut doc, body) {
        target.extend(fields);
    }
    doc
}

pub fn exact(x: &Rational) -> String {
    x.to_string()
}

pub fn decimal(x: &Rational) -> String {
    format_significant(x.to_f64(), 6)
}

pub fn exact_list(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(exact).collect()
}

/// `label: 17/2, 11/2, 4  [8.5, 5.5, 4]`
pub fn row(label: &str, x: &Allocation<Rational>) -> String {
    let exacts: Vec<String> = x.iter().map(exact).collect();
    let decimals: Vec<String> = x.iter().map(decimal).collect();
    format!("{label}: {}  [{}]", exacts.join(", "), decimals.join(", "))
}

pub fn parse_list(text: &str, what: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|s| {
            parse_rational(s.trim()).with_context(|| format!("bad entry `{}` in {what}", s.trim()))
        })
        .collect()
}
