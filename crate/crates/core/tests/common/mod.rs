#![allow(dead_code)]

use qtower::{parse_scalar, FieldSpec, Point, PointSet};

pub const ROWS: [(&str, &[&str]); 5] = [
    ("0.4", &["0.2", "0.4", "0.8", "1", "1.2", "1.6", "2"]),
    ("0.6", &["0", "0.6", "1.4", "1.8", "2.2"]),
    ("1.1", &["0.6", "1", "1.2", "1.8"]),
    ("1.45", &["1.2", "1.8", "2.4"]),
    ("1.8", &["0.2", "1.4"]),
];

pub fn q(s: &str) -> qtower::FieldElement {
    parse_scalar(s, FieldSpec::Rational).unwrap()
}

/// The 21-point quasi-x-tower set with five horizontal rows.
pub fn example_set() -> PointSet {
    let points = ROWS
        .iter()
        .flat_map(|(y, xs)| xs.iter().map(move |x| Point::new(q(x), q(y))))
        .collect();
    PointSet::new(points).unwrap()
}

/// Thirteen points on `y = 0` at `x = 0, 0.2, …, 2.4`.
pub fn example_base() -> PointSet {
    let f = FieldSpec::Rational;
    let points = (0..13)
        .map(|i| Point::new(f.from_ratio(i, 5).unwrap(), f.zero()))
        .collect();
    PointSet::new(points).unwrap()
}

pub fn levels() -> Vec<qtower::FieldElement> {
    ROWS.iter().map(|(y, _)| q(y)).collect()
}
