//! Point files: `{"points": [["p/q", "p/q", "p/q"], ...]}` with exactly ten
//! entries. Plain JSON integers are accepted in place of strings.

use std::path::Path;

use serde_json::Value;
use straightedge::scalar::parse_rational;
use straightedge::{Point, Rational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Syntax {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {field}: {message}")]
    Field { path: String, field: String, message: String },
    #[error("{path}: expected 10 points, got {got}")]
    Count { path: String, got: usize },
    #[error("{path}: points[{first}] and points[{second}] are the same point")]
    Duplicate { path: String, first: usize, second: usize },
}

pub fn parse_points(path: &Path) -> Result<[Point; 10], InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: name.clone(),
        source,
    })?;
    parse_points_str(&text, &name)
}

/// Parses the document `text`; `name` is used in error messages.
pub fn parse_points_str(text: &str, name: &str) -> Result<[Point; 10], InputError> {
    let field = |field: String, message: String| InputError::Field {
        path: name.to_string(),
        field,
        message,
    };
    let doc: Value = serde_json::from_str(text).map_err(|e| InputError::Syntax {
        path: name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let entries = doc
        .get("points")
        .ok_or_else(|| field("points".into(), "missing".into()))?
        .as_array()
        .ok_or_else(|| field("points".into(), "expected an array".into()))?;
    if entries.len() != 10 {
        return Err(InputError::Count {
            path: name.to_string(),
            got: entries.len(),
        });
    }
    let mut points = Vec::with_capacity(10);
    for (i, entry) in entries.iter().enumerate() {
        let triple = entry
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| field(format!("points[{i}]"), "expected three coordinates".into()))?;
        let mut coords = Vec::with_capacity(3);
        for (j, v) in triple.iter().enumerate() {
            coords.push(scalar(v).map_err(|m| field(format!("points[{i}][{j}]"), m))?);
        }
        let coords: [Rational; 3] = coords.try_into().expect("three");
        let p = Point::from_coords(coords).map_err(|e| field(format!("points[{i}]"), e.to_string()))?;
        points.push(p.canonical());
    }
    for i in 0..10 {
        for j in i + 1..10 {
            if points[i] == points[j] {
                return Err(InputError::Duplicate {
                    path: name.to_string(),
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(points.try_into().expect("ten"))
}

fn scalar(v: &Value) -> Result<Rational, String> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()).map_err(|e| e.to_string()),
        Value::Number(n) => Err(format!("{n} is not exact; write rationals as strings like \"3/7\"")),
        other => Err(format!("expected a rational string, got {other}")),
    }
}

/// The inverse of [`parse_points`], with canonical coordinates as strings.
pub fn points_document(points: &[Point; 10]) -> String {
    let rows: Vec<Value> = points
        .iter()
        .map(|p| Value::Array(p.coords().iter().map(|c| Value::String(c.to_string())).collect()))
        .collect();
    let doc = serde_json::json!({ "points": rows });
    serde_json::to_string_pretty(&doc).expect("serializable")
}
