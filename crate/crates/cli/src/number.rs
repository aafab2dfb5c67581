//! Number rendering shared by reports, problem files and SVG output.
//!
//! Integers print without a decimal point and infinities become the strings
//! `"-inf"` and `"+inf"`. JSON values keep the shortest form that reads back
//! to the same `f64`; text and SVG output cut that to 12 significant digits.

use serde_json::{Number, Value};

const SIGNIFICANT: usize = 12;

/// Largest magnitude below which integral floats print as integers.
const EXACT_INT: f64 = 9_007_199_254_740_992.0;

fn rounded(v: f64) -> f64 {
    let shortest = format!("{v:e}");
    let digits = shortest
        .split('e')
        .next()
        .unwrap_or("")
        .chars()
        .filter(char::is_ascii_digit)
        .count();
    if digits <= SIGNIFICANT {
        v
    } else {
        format!("{:.*e}", SIGNIFICANT - 1, v).parse().unwrap_or(v)
    }
}

pub fn to_json(v: f64) -> Value {
    if v == f64::NEG_INFINITY {
        return Value::String("-inf".into());
    }
    if v == f64::INFINITY {
        return Value::String("+inf".into());
    }
    if v.fract() == 0.0 && v.abs() < EXACT_INT {
        return Value::Number(Number::from(v as i64));
    }
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn vec_to_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| to_json(x)).collect())
}

pub fn rows_to_json(rows: &[Vec<f64>]) -> Value {
    Value::Array(rows.iter().map(|r| vec_to_json(r)).collect())
}

/// Plain-text form used in SVG attributes and human-readable output.
pub fn fmt(v: f64) -> String {
    match to_json(rounded(v)) {
        Value::String(s) => s,
        Value::Number(n) => n.to_string(),
        _ => "nan".into(),
    }
}
