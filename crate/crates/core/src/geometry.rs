//! Point sets, line covers, lower sets and the tower classification.
//!
//! An x-cover groups points on horizontal lines (equal y), a y-cover on
//! vertical lines (equal x). Lines are ordered by decreasing size, ties by
//! increasing level, and members by increasing free coordinate, so every
//! downstream index `(i, j)` is reproducible.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{DerivePrecondition, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::monomial::Bidegree;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }

    /// Coordinate shared by all points on a line of `axis`.
    pub fn level(&self, axis: Axis) -> &FieldElement {
        match axis {
            Axis::X => &self.y,
            Axis::Y => &self.x,
        }
    }

    /// Coordinate that varies along a line of `axis`.
    pub fn free(&self, axis: Axis) -> &FieldElement {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn transposed(&self) -> Point {
        Point::new(self.y.clone(), self.x.clone())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A nonempty list of pairwise distinct points over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let field = first.x.spec();
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            for c in [&p.x, &p.y] {
                if c.spec() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        c.spec().to_string(),
                    ));
                }
            }
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.x.to_string(), p.y.to_string()));
            }
        }
        Ok(PointSet { field, points })
    }

    pub fn from_pairs<I>(field: FieldSpec, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FieldElement, FieldElement)>,
    {
        let points: Vec<Point> = pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let set = PointSet::new(points)?;
        if set.field != field {
            return Err(Error::FieldMismatch(
                field.to_string(),
                set.field.to_string(),
            ));
        }
        Ok(set)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    /// Concatenation; fails on shared points.
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        PointSet::new(points)
    }

    /// Mirror image across the diagonal: swaps the roles of x and y.
    pub fn transposed(&self) -> PointSet {
        PointSet {
            field: self.field,
            points: self.points.iter().map(Point::transposed).collect(),
        }
    }
}

/// Direction of the covering lines: `X` lines are parallel to the x-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub level: FieldElement,
    pub members: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCover {
    pub axis: Axis,
    pub lines: Vec<Line>,
}

impl LineCover {
    /// Free coordinates of line `j`: `H_j` for an x-cover, `V_j` for a y-cover.
    pub fn free_coordinates(&self, j: usize) -> Vec<FieldElement> {
        self.lines[j]
            .members
            .iter()
            .map(|p| p.free(self.axis).clone())
            .collect()
    }

    pub fn levels(&self) -> Vec<FieldElement> {
        self.lines.iter().map(|l| l.level.clone()).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.lines.iter().map(|l| l.members.len()).collect()
    }

    /// The point carrying lower-set index `t`: member `t.x` of line `t.y`
    /// for an x-cover, member `t.y` of line `t.x` for a y-cover.
    pub fn point_at(&self, t: Bidegree) -> Option<&Point> {
        let (line, member) = match self.axis {
            Axis::X => (t.y, t.x),
            Axis::Y => (t.x, t.y),
        };
        self.lines.get(line as usize)?.members.get(member as usize)
    }

    /// `true` if the free-coordinate sets form a descending chain.
    pub fn is_nested(&self) -> bool {
        let sets: Vec<BTreeSet<FieldElement>> = (0..self.lines.len())
            .map(|j| self.free_coordinates(j).into_iter().collect())
            .collect();
        sets.windows(2).all(|w| w[1].is_subset(&w[0]))
    }
}

pub fn build_line_cover(points: &PointSet, axis: Axis) -> LineCover {
    let mut by_level: BTreeMap<FieldElement, Vec<Point>> = BTreeMap::new();
    for p in points.iter() {
        by_level
            .entry(p.level(axis).clone())
            .or_default()
            .push(p.clone());
    }
    let mut lines: Vec<Line> = by_level
        .into_iter()
        .map(|(level, mut members)| {
            members.sort_by(|a, b| a.free(axis).cmp(b.free(axis)));
            Line { level, members }
        })
        .collect();
    // stable: equal sizes keep ascending level
    lines.sort_by_key(|l| std::cmp::Reverse(l.members.len()));
    LineCover { axis, lines }
}

/// A lower set stored by its row (`X`) or column (`Y`) profile.
///
/// `L_x(m_0, …, m_ν)` holds `(i, j)` with `i ≤ m_j`; `L_y(n_0, …, n_λ)`
/// holds `(i, j)` with `j ≤ n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LowerSet {
    pub axis: Axis,
    pub profile: Vec<u32>,
}

impl LowerSet {
    pub fn contains(&self, t: Bidegree) -> bool {
        let (line, reach) = match self.axis {
            Axis::X => (t.y, t.x),
            Axis::Y => (t.x, t.y),
        };
        self.profile.get(line as usize).is_some_and(|&m| reach <= m)
    }

    pub fn len(&self) -> usize {
        self.profile.iter().map(|&m| m as usize + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.profile.is_empty()
    }

    /// Members, line by line.
    pub fn members(&self) -> Vec<Bidegree> {
        let mut out = Vec::with_capacity(self.len());
        for (line, &m) in self.profile.iter().enumerate() {
            for k in 0..=m {
                out.push(match self.axis {
                    Axis::X => Bidegree::new(k, line as u32),
                    Axis::Y => Bidegree::new(line as u32, k),
                });
            }
        }
        out
    }

    /// The same exponent set as a set.
    pub fn member_set(&self) -> BTreeSet<Bidegree> {
        self.members().into_iter().collect()
    }
}

impl fmt::Display for LowerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.axis {
            Axis::X => "L_x",
            Axis::Y => "L_y",
        };
        let parts: Vec<String> = self.profile.iter().map(|m| m.to_string()).collect();
        write!(f, "{tag}({})", parts.join(", "))
    }
}

pub fn lower_set(cover: &LineCover) -> LowerSet {
    LowerSet {
        axis: cover.axis,
        profile: cover
            .lines
            .iter()
            .map(|l| l.members.len() as u32 - 1)
            .collect(),
    }
}

/// `true` iff every element's rectangle `R(α)` lies in the set.
pub fn is_lower<'a, I>(set: I) -> bool
where
    I: IntoIterator<Item = &'a Bidegree>,
{
    let set: HashSet<Bidegree> = set.into_iter().copied().collect();
    // Closure under the two unit steps down implies closure under R(α).
    set.iter().all(|t| {
        (t.x == 0 || set.contains(&Bidegree::new(t.x - 1, t.y)))
            && (t.y == 0 || set.contains(&Bidegree::new(t.x, t.y - 1)))
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub cartesian: bool,
    pub x_tower: bool,
    pub y_tower: bool,
    pub gen_x_tower: bool,
    pub gen_y_tower: bool,
    pub quasi_x_tower: bool,
    pub quasi_y_tower: bool,
}

fn strictly_decreasing(sizes: &[usize]) -> bool {
    sizes.windows(2).all(|w| w[0] > w[1])
}

/// `(generalized, tower)` flags for one axis.
fn tower_flags(cover: &LineCover) -> (bool, bool) {
    let generalized = strictly_decreasing(&cover.sizes());
    let base: BTreeSet<FieldElement> = cover.free_coordinates(0).into_iter().collect();
    let tower = generalized
        && cover
            .lines
            .iter()
            .flat_map(|l| l.members.iter())
            .all(|p| base.contains(p.free(cover.axis)));
    (generalized, tower)
}

pub fn classify(points: &PointSet) -> Classification {
    let xc = build_line_cover(points, Axis::X);
    let yc = build_line_cover(points, Axis::Y);
    let (gen_x_tower, x_tower) = tower_flags(&xc);
    let (gen_y_tower, y_tower) = tower_flags(&yc);
    Classification {
        cartesian: xc.is_nested() || yc.is_nested(),
        x_tower,
        y_tower,
        gen_x_tower,
        gen_y_tower,
        quasi_x_tower: gen_x_tower && !x_tower,
        quasi_y_tower: gen_y_tower && !y_tower,
    }
}

/// Adjoins a horizontal base row `base` to the quasi-x-tower set `points`,
/// producing a derived x-tower set.
///
/// The base must sit on a fresh ordinate, avoid `points`, contain every
/// abscissa of `points`, and be strictly longer than the longest row.
pub fn derive_tower(points: &PointSet, base: &PointSet) -> Result<PointSet> {
    let fail = |why| Err(Error::DerivedTower(why));
    if !classify(points).quasi_x_tower {
        return fail(DerivePrecondition::NotQuasiXTower);
    }
    let y_base = &base.points()[0].y;
    if base.iter().any(|p| &p.y != y_base) {
        return fail(DerivePrecondition::BaseNotHorizontal);
    }
    if points.iter().any(|p| &p.y == y_base) {
        return fail(DerivePrecondition::BaseLevelCollision);
    }
    if base.iter().any(|p| points.contains(p)) {
        return fail(DerivePrecondition::BaseOverlap);
    }
    let cover = build_line_cover(points, Axis::X);
    let required = cover.lines[0].members.len() + 1;
    if base.len() < required {
        return fail(DerivePrecondition::BaseTooShort {
            base_len: base.len(),
            required,
        });
    }
    let base_abscissae: HashSet<&FieldElement> = base.iter().map(|p| &p.x).collect();
    if let Some(missing) = points.iter().find(|p| !base_abscissae.contains(&p.x)) {
        return fail(DerivePrecondition::BaseMissingAbscissa(
            missing.x.to_string(),
        ));
    }
    let union = points.union(base)?;
    if !classify(&union).x_tower {
        return fail(DerivePrecondition::UnionNotTower);
    }
    Ok(union)
}
