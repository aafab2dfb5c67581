//! Problem files.
//!
//! A problem file is a JSON object:
//!
//! ```json
//! {
//!   "problem": "general",
//!   "semifield": "max-plus",
//!   "p": [3, 14],
//!   "q": [-12, -4],
//!   "B": [[0, -4], [-8, -6]],
//!   "g": [2, -8],
//!   "h": [6, 8]
//! }
//! ```
//!
//! `problem` is one of `unconstrained`, `linear`, `box`, `general` or
//! `location`. `semifield` defaults to `max-plus`. The semifield zero is
//! written `"-inf"` for max semifields and `"+inf"` for min semifields.
//!
//! Location files carry `points` (one row per demand point) and `weights`
//! instead of `p` and `q`, and are always max-plus; `B` and `g` may use
//! `"-inf"` for absent entries.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Value};
use tropopt_core::{LocationInstance, Matrix, ProblemInstance, SemifieldKind};

use crate::number;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemType {
    Unconstrained,
    Linear,
    Box,
    General,
    Location,
}

impl ProblemType {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemType::Unconstrained => "unconstrained",
            ProblemType::Linear => "linear",
            ProblemType::Box => "box",
            ProblemType::General => "general",
            ProblemType::Location => "location",
        }
    }

    fn fields(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            ProblemType::Unconstrained => (&["p", "q"], &[]),
            ProblemType::Linear => (&["B", "p", "q"], &[]),
            ProblemType::Box => (&["p", "q", "g", "h"], &[]),
            ProblemType::General => (&["p", "q"], &["B", "g", "h"]),
            ProblemType::Location => (&["points", "weights"], &["B", "g", "h"]),
        }
    }
}

impl FromStr for ProblemType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Ok(match s {
            "unconstrained" => ProblemType::Unconstrained,
            "linear" => ProblemType::Linear,
            "box" => ProblemType::Box,
            "general" => ProblemType::General,
            "location" => ProblemType::Location,
            _ => return Err(()),
        })
    }
}

/// Malformed input, located by a path such as `B[1][0]`.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct FileError {
    pub field: String,
    pub message: String,
}

fn err(field: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub problem: ProblemType,
    pub semifield: SemifieldKind,
    pub p: Option<Vec<f64>>,
    pub q: Option<Vec<f64>>,
    pub b: Option<Vec<Vec<f64>>>,
    pub g: Option<Vec<f64>>,
    pub h: Option<Vec<f64>>,
    pub points: Option<Vec<Vec<f64>>>,
    pub weights: Option<Vec<f64>>,
}

fn zero_literal(kind: SemifieldKind) -> &'static str {
    if kind.is_max() {
        "-inf"
    } else {
        "+inf"
    }
}

struct Reader {
    kind: SemifieldKind,
    /// Location files accept `-inf` but no other special value.
    location: bool,
}

impl Reader {
    fn number(&self, v: &Value, at: &str) -> Result<f64, FileError> {
        let literal = zero_literal(self.kind);
        let x = match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| err(at, "number out of range"))?,
            Value::String(s) if s == literal => {
                return Ok(if self.location {
                    f64::NEG_INFINITY
                } else {
                    self.kind.zero()
                });
            }
            _ => return Err(err(at, format!("expected a number or \"{literal}\""))),
        };
        if self.location {
            return Ok(x);
        }
        self.kind.validate(x).map_err(|_| {
            err(
                at,
                format!("{} is not an element of {}", number::fmt(x), self.kind),
            )
        })
    }

    fn vector(&self, v: &Value, at: &str) -> Result<Vec<f64>, FileError> {
        let items = v
            .as_array()
            .ok_or_else(|| err(at, "expected an array of numbers"))?;
        if items.is_empty() {
            return Err(err(at, "empty array"));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, x)| self.number(x, &format!("{at}[{i}]")))
            .collect()
    }

    fn matrix(&self, v: &Value, at: &str) -> Result<Vec<Vec<f64>>, FileError> {
        let rows = v
            .as_array()
            .ok_or_else(|| err(at, "expected an array of rows"))?;
        if rows.is_empty() {
            return Err(err(at, "empty array"));
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let at_row = format!("{at}[{i}]");
            let r = self.vector(row, &at_row)?;
            if let Some(first) = out.first().map(Vec::len) {
                if r.len() != first {
                    return Err(err(
                        at_row,
                        format!("has {} entries, expected {first}", r.len()),
                    ));
                }
            }
            out.push(r);
        }
        Ok(out)
    }
}

impl ProblemFile {
    /// Parses a problem file. `semifield` overrides the tag in the file.
    pub fn parse(text: &str, semifield: Option<SemifieldKind>) -> Result<Self, FileError> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            err(
                format!("line {} column {}", e.line(), e.column()),
                format!("invalid JSON: {e}"),
            )
        })?;
        let obj = value
            .as_object()
            .ok_or_else(|| err("(top level)", "expected an object"))?;

        let problem = match obj.get("problem") {
            Some(Value::String(s)) => s.parse::<ProblemType>().map_err(|()| {
                err(
                    "problem",
                    format!("unknown problem type \"{s}\", expected unconstrained, linear, box, general or location"),
                )
            })?,
            Some(_) => return Err(err("problem", "expected a string")),
            None => return Err(err("problem", "missing")),
        };
        let file_kind = match obj.get("semifield") {
            Some(Value::String(s)) => Some(
                s.parse::<SemifieldKind>()
                    .map_err(|e| err("semifield", e.to_string()))?,
            ),
            Some(_) => return Err(err("semifield", "expected a string")),
            None => None,
        };
        let location = problem == ProblemType::Location;
        let kind = semifield.or(file_kind).unwrap_or(SemifieldKind::MaxPlus);
        if location && kind != SemifieldKind::MaxPlus {
            return Err(err("semifield", "location problems are max-plus"));
        }

        let (required, optional) = problem.fields();
        for key in obj.keys() {
            if key != "problem"
                && key != "semifield"
                && !required.contains(&key.as_str())
                && !optional.contains(&key.as_str())
            {
                return Err(err(
                    key.as_str(),
                    format!("unknown field for a {} problem", problem.tag()),
                ));
            }
        }
        for key in required {
            if !obj.contains_key(*key) {
                return Err(err(*key, "missing"));
            }
        }

        let rd = Reader { kind, location };
        let vec_field = |key: &str| obj.get(key).map(|v| rd.vector(v, key)).transpose();
        let file = ProblemFile {
            problem,
            semifield: kind,
            p: vec_field("p")?,
            q: vec_field("q")?,
            b: obj.get("B").map(|v| rd.matrix(v, "B")).transpose()?,
            g: vec_field("g")?,
            h: vec_field("h")?,
            points: obj
                .get("points")
                .map(|v| rd.matrix(v, "points"))
                .transpose()?,
            weights: vec_field("weights")?,
        };
        file.check_shapes()?;
        if location {
            file.check_location_values()?;
        }
        Ok(file)
    }

    pub fn dim(&self) -> usize {
        match self.problem {
            ProblemType::Location => self.points.as_ref().map_or(0, |r| r[0].len()),
            _ => self.p.as_ref().map_or(0, Vec::len),
        }
    }

    fn check_shapes(&self) -> Result<(), FileError> {
        let n = self.dim();
        let check = |key: &str, len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(err(key, format!("has {len} entries, expected {n}")))
            }
        };
        if self.problem != ProblemType::Location {
            check("q", self.q.as_ref().map_or(n, Vec::len))?;
        }
        if let Some(b) = &self.b {
            check("B", b.len())?;
            check("B[0]", b[0].len())?;
        }
        if let Some(g) = &self.g {
            check("g", g.len())?;
        }
        if let Some(h) = &self.h {
            check("h", h.len())?;
        }
        if let (Some(points), Some(weights)) = (&self.points, &self.weights) {
            if weights.len() != points.len() {
                return Err(err(
                    "weights",
                    format!(
                        "has {} entries, expected one per point ({})",
                        weights.len(),
                        points.len()
                    ),
                ));
            }
        }
        Ok(())
    }

    fn check_location_values(&self) -> Result<(), FileError> {
        let finite = |key: String, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(err(key, "must be finite"))
            }
        };
        for (i, r) in self.points.iter().flatten().enumerate() {
            for (k, &v) in r.iter().enumerate() {
                finite(format!("points[{i}][{k}]"), v)?;
            }
        }
        for (i, &v) in self.weights.iter().flatten().enumerate() {
            finite(format!("weights[{i}]"), v)?;
        }
        for (i, &v) in self.h.iter().flatten().enumerate() {
            finite(format!("h[{i}]"), v)?;
        }
        Ok(())
    }

    /// The optimization instance, or for location files its max-plus
    /// reduction.
    pub fn instance(&self) -> tropopt_core::Result<ProblemInstance> {
        if self.problem == ProblemType::Location {
            return tropopt_core::location::reduce(&self.location()?);
        }
        let kind = self.semifield;
        let col = |v: &Vec<f64>| Matrix::column(kind, v);
        let mut inst = ProblemInstance::new(
            col(self.p.as_ref().expect("required"))?,
            col(self.q.as_ref().expect("required"))?,
        )?;
        if let Some(b) = &self.b {
            inst = inst.with_matrix(Matrix::from_rows(kind, b)?)?;
        }
        if let Some(g) = &self.g {
            inst = inst.with_lower(col(g)?)?;
        }
        if let Some(h) = &self.h {
            inst = inst.with_upper(col(h)?)?;
        }
        Ok(inst)
    }

    pub fn location(&self) -> tropopt_core::Result<LocationInstance> {
        let mut inst = LocationInstance::new(
            self.points.clone().unwrap_or_default(),
            self.weights.clone().unwrap_or_default(),
        )?;
        if let Some(b) = &self.b {
            inst = inst.with_constraints(b.clone())?;
        }
        if let Some(g) = &self.g {
            inst = inst.with_lower(g.clone())?;
        }
        if let Some(h) = &self.h {
            inst = inst.with_upper(h.clone())?;
        }
        Ok(inst)
    }

    pub fn to_value(&self) -> Value {
        let kind = self.semifield;
        let lit = |v: f64| {
            if v.is_infinite() || (!kind.is_additive() && kind.is_zero(v)) {
                Value::String(zero_literal(kind).into())
            } else {
                number::to_json(v)
            }
        };
        let vec = |v: &Vec<f64>| Value::Array(v.iter().map(|&x| lit(x)).collect());
        let mat = |m: &Vec<Vec<f64>>| Value::Array(m.iter().map(vec).collect());
        let mut map = Map::new();
        map.insert("problem".into(), Value::String(self.problem.tag().into()));
        map.insert("semifield".into(), Value::String(kind.tag().into()));
        let fields: [(&str, Option<Value>); 7] = [
            ("p", self.p.as_ref().map(vec)),
            ("q", self.q.as_ref().map(vec)),
            ("points", self.points.as_ref().map(mat)),
            ("weights", self.weights.as_ref().map(vec)),
            ("B", self.b.as_ref().map(mat)),
            ("g", self.g.as_ref().map(vec)),
            ("h", self.h.as_ref().map(vec)),
        ];
        for (key, value) in fields {
            if let Some(v) = value {
                map.insert(key.into(), v);
            }
        }
        Value::Object(map)
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.to_value()))
    }
}

/// One key per line at the top level, inner arrays on a single line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            out.push_str("{\n");
            let last = map.len().saturating_sub(1);
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str("  ");
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                inline(v, &mut out);
                if i != last {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str("}\n");
        }
        other => {
            inline(other, &mut out);
            out.push('\n');
        }
    }
    out
}

fn inline(value: &Value, out: &mut String) {
    match value {
        Value::Array(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                inline(v, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                inline(v, out);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}
