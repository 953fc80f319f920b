//! Point and value files.
//!
//! Points are either CSV lines `x,y` (blank lines and `#` comments skipped)
//! or a JSON array of `[x, y]` pairs whose entries are scalar strings or
//! JSON numbers. Values are one scalar per line or a JSON array.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldElement, FieldSpec};
use crate::geometry::{Point, PointSet};

pub fn parse_points(text: &str, field: FieldSpec) -> Result<PointSet> {
    let pairs = if text.trim_start().starts_with('[') {
        json_pairs(text, field)?
    } else {
        csv_pairs(text, field)?
    };
    PointSet::new(pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

pub fn parse_values(text: &str, field: FieldSpec) -> Result<Vec<FieldElement>> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        v.as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array".into()))?
            .iter()
            .map(|s| json_scalar(s, field))
            .collect()
    } else {
        content_lines(text)
            .map(|(_, l)| parse_scalar(l, field))
            .collect()
    }
}

/// CSV text accepted by [`parse_points`].
pub fn points_to_csv(points: &PointSet) -> String {
    points
        .iter()
        .map(|p| format!("{},{}\n", p.x, p.y))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn csv_pairs(text: &str, field: FieldSpec) -> Result<Vec<(FieldElement, FieldElement)>> {
    content_lines(text)
        .map(|(n, line)| {
            let mut parts = line.split(',');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(x), Some(y), None) => Ok((parse_scalar(x, field)?, parse_scalar(y, field)?)),
                _ => Err(Error::Parse(format!(
                    "line {n}: expected \"x,y\", got {line:?}"
                ))),
            }
        })
        .collect()
}

fn json_pairs(text: &str, field: FieldSpec) -> Result<Vec<(FieldElement, FieldElement)>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array of points".into()))?;
    items
        .iter()
        .map(|item| match item.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok((json_scalar(x, field)?, json_scalar(y, field)?)),
            _ => Err(Error::Parse(format!("expected [x, y], got {item}"))),
        })
        .collect()
}

fn json_scalar(v: &Value, field: FieldSpec) -> Result<FieldElement> {
    match v {
        Value::String(s) => parse_scalar(s, field),
        Value::Number(n) => parse_scalar(&n.to_string(), field),
        other => Err(Error::Parse(format!("expected a scalar, got {other}"))),
    }
}
