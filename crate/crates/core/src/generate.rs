//! Seeded random tower, quasi-tower and unstructured point sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::geometry::{classify, Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    QuasiX,
    QuasiY,
    XTower,
    YTower,
    Arbitrary,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::QuasiX,
        Flavor::QuasiY,
        Flavor::XTower,
        Flavor::YTower,
        Flavor::Arbitrary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::QuasiX => "quasi_x",
            Flavor::QuasiY => "quasi_y",
            Flavor::XTower => "x_tower",
            Flavor::YTower => "y_tower",
            Flavor::Arbitrary => "arbitrary",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('-', "_");
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown flavor {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorConfig {
    pub field: FieldSpec,
    pub flavor: Flavor,
    pub mu: usize,
    pub seed: u64,
}

/// Draws a point set of the requested flavor; identical configs give
/// identical sets.
pub fn generate(config: GeneratorConfig) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let GeneratorConfig {
        field, flavor, mu, ..
    } = config;
    if mu == 0 {
        return Err(Error::EmptyPointSet);
    }
    let points = match flavor {
        Flavor::Arbitrary => arbitrary(field, mu, &mut rng)?,
        Flavor::XTower => rows(field, mu, false, &mut rng)?,
        Flavor::QuasiX => rows(field, mu, true, &mut rng)?,
        Flavor::YTower => rows(field, mu, false, &mut rng)?.transposed(),
        Flavor::QuasiY => rows(field, mu, true, &mut rng)?.transposed(),
    };
    let c = classify(&points);
    let ok = match flavor {
        Flavor::Arbitrary => true,
        Flavor::XTower => c.x_tower,
        Flavor::YTower => c.y_tower,
        Flavor::QuasiX => c.quasi_x_tower,
        Flavor::QuasiY => c.quasi_y_tower,
    };
    if !ok {
        return Err(Error::ClassificationMismatch(flavor.name()));
    }
    Ok(points)
}

/// A horizontal base row for [`crate::geometry::derive_tower`]: a fresh
/// level, every abscissa of `points`, and `extra` further abscissae.
pub fn generate_base(points: &PointSet, extra: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = points.field();
    let levels: BTreeSet<FieldElement> = points.iter().map(|p| p.y.clone()).collect();
    let y = sample_distinct(field, 1, &levels, &mut rng)?.remove(0);
    let mut xs: BTreeSet<FieldElement> = points.iter().map(|p| p.x.clone()).collect();
    let fresh = sample_distinct(field, extra, &xs, &mut rng)?;
    xs.extend(fresh);
    PointSet::new(xs.into_iter().map(|x| Point::new(x, y.clone())).collect())
}

fn arbitrary(field: FieldSpec, mu: usize, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    if let Some(p) = field.order() {
        if (mu as u64) > p * p {
            return Err(Error::FieldTooSmall(format!(
                "{mu} points do not fit in {field}²"
            )));
        }
    }
    let mut seen = BTreeSet::new();
    let mut points = Vec::with_capacity(mu);
    let span = 2 * (mu as f64).sqrt().ceil() as i64 + 2;
    while points.len() < mu {
        let p = Point::new(
            random_scalar(field, span, rng),
            random_scalar(field, span, rng),
        );
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    PointSet::new(points)
}

/// Strictly decreasing row sizes summing to `mu`, longest at most `cap`.
fn row_sizes(
    mu: usize,
    cap: Option<usize>,
    quasi: bool,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>> {
    let min_rows = if quasi { 2 } else { 1 };
    if mu < min_rows * (min_rows + 1) / 2 {
        return Err(Error::Infeasible(format!(
            "{mu} points cannot form {min_rows} rows of strictly decreasing length"
        )));
    }
    let mut max_rows = 1;
    while (max_rows + 1) * (max_rows + 2) / 2 <= mu {
        max_rows += 1;
    }
    // most points k rows can hold with the longest capped
    let capacity = |k: usize| cap.map_or(usize::MAX, |c| k * c - k * (k - 1) / 2);
    let mut k_min = min_rows;
    while k_min <= max_rows && capacity(k_min) < mu {
        k_min += 1;
    }
    if k_min > max_rows || cap.is_some_and(|c| k_min > c) {
        return Err(Error::FieldTooSmall(format!(
            "{mu} points need rows longer than the field allows"
        )));
    }
    let k = rng.gen_range(k_min..=max_rows);
    let mut sizes: Vec<usize> = (1..=k).rev().collect();
    let mut remaining = mu - k * (k + 1) / 2;
    while remaining > 0 {
        let open: Vec<usize> = (0..k)
            .filter(|&i| {
                if i == 0 {
                    cap.is_none_or(|c| sizes[0] < c)
                } else {
                    sizes[i - 1] > sizes[i] + 1
                }
            })
            .collect();
        let i = *open.choose(rng).expect("capacity covers mu");
        sizes[i] += 1;
        remaining -= 1;
    }
    Ok(sizes)
}

fn rows(field: FieldSpec, mu: usize, quasi: bool, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    // quasi sets need one abscissa outside the longest row
    let cap = field.order().map(|p| p as usize - usize::from(quasi));
    let sizes = row_sizes(mu, cap, quasi, rng)?;
    let levels = sample_distinct(field, sizes.len(), &BTreeSet::new(), rng)?;
    let base = sample_distinct(field, sizes[0], &BTreeSet::new(), rng)?;
    let mut table: Vec<Vec<FieldElement>> = sizes
        .iter()
        .map(|&s| {
            let mut row: Vec<FieldElement> = base.choose_multiple(rng, s).cloned().collect();
            row.sort();
            row
        })
        .collect();
    table[0] = base.clone();
    if quasi {
        let base_set: BTreeSet<FieldElement> = base.iter().cloned().collect();
        let j = rng.gen_range(1..table.len());
        let k = rng.gen_range(0..table[j].len());
        table[j][k] = sample_distinct(field, 1, &base_set, rng)?.remove(0);
    }
    let points = table
        .into_iter()
        .zip(levels)
        .flat_map(|(row, y)| row.into_iter().map(move |x| Point::new(x, y.clone())))
        .collect();
    PointSet::new(points)
}

/// `count` distinct scalars avoiding `exclude`.
fn sample_distinct(
    field: FieldSpec,
    count: usize,
    exclude: &BTreeSet<FieldElement>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<FieldElement>> {
    match field.order() {
        Some(p) => {
            let pool: Vec<FieldElement> = (0..p)
                .map(|v| field.from_u64(v))
                .filter(|v| !exclude.contains(v))
                .collect();
            if pool.len() < count {
                return Err(Error::FieldTooSmall(format!(
                    "need {count} fresh values in {field}, have {}",
                    pool.len()
                )));
            }
            Ok(pool.choose_multiple(rng, count).cloned().collect())
        }
        None => {
            let span = 2 * (count + exclude.len()) as i64 + 4;
            let mut seen = BTreeSet::new();
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let v = random_scalar(field, span, rng);
                if !exclude.contains(&v) && seen.insert(v.clone()) {
                    out.push(v);
                }
            }
            Ok(out)
        }
    }
}

/// Uniform residue over `𝔽_p`; over `ℚ` a small fraction `a/d` with
/// `|a| ≤ span` and `d ∈ {1, 2, 5}`.
fn random_scalar(field: FieldSpec, span: i64, rng: &mut ChaCha8Rng) -> FieldElement {
    match field.order() {
        Some(p) => field.from_u64(rng.gen_range(0..p)),
        None => {
            let a = rng.gen_range(-span..=span);
            let d = *[1, 1, 2, 5].choose(rng).expect("nonempty");
            field.from_ratio(a, d).expect("nonzero denominator")
        }
    }
}
