//! Closed-form degree-reducing interpolation bases.
//!
//! For an x-flavored basis the monomials are the lower set of the
//! horizontal line cover and the Newton element for index `(i, j)` is
//!
//! ```text
//! φ_ij = s_ij · ∏_{t<j} (y - y_t) · ∏_{s<i} (x - x_sj)
//! ```
//!
//! where `y_t` are line levels, `x_sj` the sorted abscissae on line `j`, and
//! `s_ij` normalizes `φ_ij(x_ij, y_j) = 1`. The y-flavored basis swaps the
//! roles of the coordinates. Lex and invlex work for any point set; grlex
//! needs a generalized x-tower set and grevlex a generalized y-tower set.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::geometry::{build_line_cover, classify, lower_set, Axis, LineCover, Point, PointSet};
use crate::monomial::{Bidegree, MonomialOrder};
use crate::polynomial::{Polynomial, Var};

/// One factored Newton element: `scale · ∏(y - y_roots) · ∏(x - x_roots)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonBasisElement {
    pub scale: FieldElement,
    pub y_roots: Vec<FieldElement>,
    pub x_roots: Vec<FieldElement>,
    pub index: Bidegree,
}

impl NewtonBasisElement {
    pub fn evaluate(&self, p: &Point) -> FieldElement {
        let mut acc = self.scale.clone();
        for r in &self.y_roots {
            acc = acc * (&p.y - r);
        }
        for r in &self.x_roots {
            acc = acc * (&p.x - r);
        }
        acc
    }

    pub fn expand(&self) -> Polynomial {
        let field = self.scale.spec();
        let ys = Polynomial::product_of_linears(field, Var::Y, &self.y_roots);
        let xs = Polynomial::product_of_linears(field, Var::X, &self.x_roots);
        (&ys * &xs).scale(&self.scale)
    }
}

/// Newton elements sorted by the index order of their flavor, together
/// with the interpolation nodes `u_k` they are triangular against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonBasis {
    pub axis: Axis,
    pub elements: Vec<NewtonBasisElement>,
    pub nodes: Vec<Point>,
}

impl NewtonBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Sort key for basis enumeration: invlex on `(i, j)` for x-flavored bases,
/// lex for y-flavored ones.
pub fn index_key(axis: Axis, t: Bidegree) -> (u32, u32) {
    match axis {
        Axis::X => (t.y, t.x),
        Axis::Y => (t.x, t.y),
    }
}

/// Which line cover yields the closed-form bases for `order` on `points`.
pub fn basis_axis(points: &PointSet, order: MonomialOrder) -> Result<Axis> {
    match order {
        MonomialOrder::Lex => Ok(Axis::X),
        MonomialOrder::InvLex => Ok(Axis::Y),
        MonomialOrder::GrLex => {
            if classify(points).gen_x_tower {
                Ok(Axis::X)
            } else {
                Err(Error::Unsupported {
                    order,
                    reason: "grlex needs a tower or quasi-tower set in x",
                })
            }
        }
        MonomialOrder::GrevLex => {
            if classify(points).gen_y_tower {
                Ok(Axis::Y)
            } else {
                Err(Error::Unsupported {
                    order,
                    reason: "grevlex needs a tower or quasi-tower set in y",
                })
            }
        }
    }
}

/// The degree-reducing interpolation monomial basis, increasing in `order`.
pub fn drimb(points: &PointSet, order: MonomialOrder) -> Result<Vec<Bidegree>> {
    let axis = basis_axis(points, order)?;
    let mut monomials = lower_set(&build_line_cover(points, axis)).members();
    order.sort(&mut monomials);
    Ok(monomials)
}

/// The degree-reducing interpolation Newton basis in factored form.
pub fn drinb(points: &PointSet, order: MonomialOrder) -> Result<NewtonBasis> {
    let axis = basis_axis(points, order)?;
    newton_basis_for_cover(&build_line_cover(points, axis))
}

pub(crate) fn newton_basis_for_cover(cover: &LineCover) -> Result<NewtonBasis> {
    let levels = cover.levels();
    let mut pairs = Vec::new();
    for (line, l) in cover.lines.iter().enumerate() {
        let free = cover.free_coordinates(line);
        let level_prefix = &levels[..line];
        for (k, node) in l.members.iter().enumerate() {
            let free_prefix = &free[..k];
            // empty products are 1
            let denom = level_prefix
                .iter()
                .map(|t| &levels[line] - t)
                .chain(free_prefix.iter().map(|s| &free[k] - s))
                .fold(node.x.spec().one(), |acc, d| acc * d);
            let scale = denom.inv()?;
            let (index, y_roots, x_roots) = match cover.axis {
                Axis::X => (
                    Bidegree::new(k as u32, line as u32),
                    level_prefix.to_vec(),
                    free_prefix.to_vec(),
                ),
                Axis::Y => (
                    Bidegree::new(line as u32, k as u32),
                    free_prefix.to_vec(),
                    level_prefix.to_vec(),
                ),
            };
            pairs.push((
                NewtonBasisElement {
                    scale,
                    y_roots,
                    x_roots,
                    index,
                },
                node.clone(),
            ));
        }
    }
    pairs.sort_by_key(|(e, _)| index_key(cover.axis, e.index));
    let (elements, nodes) = pairs.into_iter().unzip();
    Ok(NewtonBasis {
        axis: cover.axis,
        elements,
        nodes,
    })
}

/// Solves the interpolation problem `p(ξ_k) = values[k]` in the span of
/// [`drimb`], by forward substitution against the triangular Newton system.
///
/// `values` is aligned with the point order of `points`.
pub fn newton_interpolate(
    points: &PointSet,
    values: &[FieldElement],
    order: MonomialOrder,
) -> Result<Polynomial> {
    if values.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: values.len(),
        });
    }
    let field = points.field();
    if let Some(bad) = values.iter().find(|v| v.spec() != field) {
        return Err(Error::FieldMismatch(
            field.to_string(),
            bad.spec().to_string(),
        ));
    }
    let basis = drinb(points, order)?;
    let lookup: HashMap<&Point, &FieldElement> = points.iter().zip(values).collect();
    let coeffs = newton_coefficients(&basis, |node| lookup[node].clone());
    Ok(combine(field, &basis, &coeffs))
}

/// Coefficients `c` with `Σ c_h φ_h(u_k) = f(u_k)` for every node.
pub(crate) fn newton_coefficients<F>(basis: &NewtonBasis, f: F) -> Vec<FieldElement>
where
    F: Fn(&Point) -> FieldElement,
{
    let mut coeffs: Vec<FieldElement> = Vec::with_capacity(basis.len());
    for (k, node) in basis.nodes.iter().enumerate() {
        let mut c = f(node);
        for (h, ch) in coeffs.iter().enumerate() {
            c.sub_mul_assign(ch, &basis.elements[h].evaluate(node));
        }
        debug_assert!(basis.elements[k].evaluate(node).is_one());
        coeffs.push(c);
    }
    coeffs
}

fn combine(field: FieldSpec, basis: &NewtonBasis, coeffs: &[FieldElement]) -> Polynomial {
    let mut p = Polynomial::zero(field);
    for (e, c) in basis.elements.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (t, a) in e.expand().terms() {
            p.add_term(t, &(a * c));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;

    fn q(s: &str) -> FieldElement {
        parse_scalar(s, FieldSpec::Rational).unwrap()
    }

    fn pts(field: FieldSpec, raw: &[(i64, i64)]) -> PointSet {
        PointSet::from_pairs(
            field,
            raw.iter()
                .map(|&(x, y)| (field.from_i64(x), field.from_i64(y))),
        )
        .unwrap()
    }

    #[test]
    fn single_point_bases() {
        let s = pts(FieldSpec::Rational, &[(3, 4)]);
        for order in MonomialOrder::ALL {
            assert_eq!(drimb(&s, order).unwrap(), vec![Bidegree::ONE]);
            let b = drinb(&s, order).unwrap();
            assert_eq!(b.len(), 1);
            assert_eq!(b.elements[0].expand(), Polynomial::constant(q("1")));
        }
    }

    #[test]
    fn grlex_needs_generalized_x_tower() {
        let grid = pts(FieldSpec::Rational, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(matches!(
            drimb(&grid, MonomialOrder::GrLex),
            Err(Error::Unsupported {
                order: MonomialOrder::GrLex,
                ..
            })
        ));
        assert!(matches!(
            drinb(&grid, MonomialOrder::GrevLex),
            Err(Error::Unsupported { .. })
        ));
        assert!(drimb(&grid, MonomialOrder::Lex).is_ok());
        assert!(drimb(&grid, MonomialOrder::InvLex).is_ok());
    }

    #[test]
    fn y_flavored_basis_is_triangular() {
        // columns x=0: {0,1,2}, x=5: {0,7}, x=9: {3}
        let s = pts(
            FieldSpec::Rational,
            &[(0, 0), (0, 1), (0, 2), (5, 0), (5, 7), (9, 3)],
        );
        let b = drinb(&s, MonomialOrder::GrevLex).unwrap();
        assert_eq!(b.axis, Axis::Y);
        let idx: Vec<_> = b.elements.iter().map(|e| (e.index.x, e.index.y)).collect();
        assert_eq!(idx, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]);
        for (h, e) in b.elements.iter().enumerate() {
            for (k, node) in b.nodes.iter().enumerate() {
                let v = e.evaluate(node);
                if h == k {
                    assert!(v.is_one());
                } else if h > k {
                    assert!(v.is_zero(), "φ_{h}(u_{k}) = {v}");
                }
            }
        }
        // φ_11 = 1/((5-0)(7-0)) · x · y
        assert_eq!(b.elements[4].scale, q("1/35"));
    }

    #[test]
    fn interpolating_constants_gives_constants() {
        let f = FieldSpec::Prime(37);
        let s = pts(f, &[(0, 0), (1, 0), (2, 0), (5, 1), (6, 1), (3, 2)]);
        let c = f.from_i64(11);
        for order in [
            MonomialOrder::GrLex,
            MonomialOrder::Lex,
            MonomialOrder::InvLex,
        ] {
            let p = newton_interpolate(&s, &vec![c.clone(); s.len()], order).unwrap();
            assert_eq!(p, Polynomial::constant(c.clone()));
        }
    }

    #[test]
    fn interpolate_rejects_wrong_length() {
        let s = pts(FieldSpec::Rational, &[(0, 0), (1, 0)]);
        assert!(matches!(
            newton_interpolate(&s, &[q("1")], MonomialOrder::Lex),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        ));
    }
}
