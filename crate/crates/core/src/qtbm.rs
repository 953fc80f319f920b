//! Buchberger–Möller seeded from the closed-form bases.
//!
//! `N` and the Newton elements come from [`drimb`] and [`drinb`], so the
//! matrix of Newton values at the nodes is unit upper triangular from the
//! start. Only the border of `N` is left to reduce.

use std::collections::BTreeSet;

use crate::bases::{drimb, drinb, NewtonBasis, NewtonBasisElement};
use crate::bm::{GroebnerOutput, Worklist};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::geometry::{is_lower, Axis, PointSet};
use crate::monomial::{Bidegree, MonomialOrder};
use crate::polynomial::Polynomial;

/// `{x·t, y·t : t ∈ N} \ N`, increasing in the order it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderWorklist {
    pub monomials: Vec<Bidegree>,
}

pub fn border(n: &[Bidegree], order: MonomialOrder) -> Result<BorderWorklist> {
    if !is_lower(n) {
        return Err(Error::NotLower);
    }
    let inside: BTreeSet<Bidegree> = n.iter().copied().collect();
    let shifted: BTreeSet<Bidegree> = n
        .iter()
        .flat_map(|t| [t.times_x(), t.times_y()])
        .filter(|t| !inside.contains(t))
        .collect();
    let mut monomials: Vec<Bidegree> = shifted.into_iter().collect();
    order.sort(&mut monomials);
    Ok(BorderWorklist { monomials })
}

/// Dense `C[h][k] = φ_h(u_k)`, unit upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularMatrix {
    pub entries: Vec<Vec<FieldElement>>,
}

impl TriangularMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Coefficients `a` with `Σ_h a_h C[h][k] = v_k` for all `k`.
    ///
    /// Eliminates row by row and then checks that nothing is left over.
    pub fn reduce(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let n = self.size();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(n);
        for (h, row) in self.entries.iter().enumerate() {
            let a = residual[h].clone();
            if !a.is_zero() {
                for (r, c) in residual[h..].iter_mut().zip(&row[h..]) {
                    r.sub_mul_assign(&a, c);
                }
            }
            coeffs.push(a);
        }
        if let Some(k) = residual.iter().position(|r| !r.is_zero()) {
            return Err(Error::NonZeroResidual(format!(
                "component {k} is {}",
                residual[k]
            )));
        }
        Ok(coeffs)
    }
}

/// Evaluates every Newton element at every node of `basis`.
///
/// `points` must be the point set the basis was built for.
pub fn build_c(basis: &NewtonBasis, points: &PointSet) -> Result<TriangularMatrix> {
    if basis.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: basis.len(),
        });
    }
    if let Some(stray) = basis.nodes.iter().find(|u| !points.contains(u)) {
        return Err(Error::Parse(format!(
            "node {stray} is not in the point set"
        )));
    }
    let entries = evaluate_rows(basis);
    for (h, row) in entries.iter().enumerate() {
        if !row[h].is_one() {
            return Err(Error::TriangularityViolation { row: h, col: h });
        }
        if let Some(k) = row[..h].iter().position(|c| !c.is_zero()) {
            return Err(Error::TriangularityViolation { row: h, col: k });
        }
    }
    Ok(TriangularMatrix { entries })
}

/// Roots of `e` as (level roots, free roots) for the basis axis.
fn split_roots(axis: Axis, e: &NewtonBasisElement) -> (&[FieldElement], &[FieldElement]) {
    match axis {
        Axis::X => (&e.y_roots, &e.x_roots),
        Axis::Y => (&e.x_roots, &e.y_roots),
    }
}

/// Rows `φ_h(u_k)`, reusing the unscaled product of the previous element
/// whenever the root lists extend it by one factor.
fn evaluate_rows(basis: &NewtonBasis) -> Vec<Vec<FieldElement>> {
    let axis = basis.axis;
    let nodes = &basis.nodes;
    let one = match nodes.first() {
        Some(u) => u.x.spec().one(),
        None => return Vec::new(),
    };
    // ∏ (level - r) over `level_roots`, per node
    let mut level_roots: Vec<FieldElement> = Vec::new();
    let mut level_prod = vec![one.clone(); nodes.len()];
    let mut prev: Option<(&[FieldElement], &[FieldElement])> = None;
    let mut cur = level_prod.clone();
    let mut rows = Vec::with_capacity(basis.len());
    for e in &basis.elements {
        let (lr, fr) = split_roots(axis, e);
        let extends_free = matches!(prev, Some((pl, pf))
            if pl == lr && fr.len() == pf.len() + 1 && &fr[..pf.len()] == pf);
        if extends_free {
            let r = &fr[fr.len() - 1];
            for (c, u) in cur.iter_mut().zip(nodes) {
                *c = &*c * &(u.free(axis) - r);
            }
        } else if fr.is_empty() && lr.starts_with(&level_roots) {
            for r in &lr[level_roots.len()..] {
                for (c, u) in level_prod.iter_mut().zip(nodes) {
                    *c = &*c * &(u.level(axis) - r);
                }
            }
            level_roots = lr.to_vec();
            cur.clone_from(&level_prod);
        } else {
            let unit = NewtonBasisElement {
                scale: one.clone(),
                ..e.clone()
            };
            cur = nodes.iter().map(|u| unit.evaluate(u)).collect();
        }
        rows.push(cur.iter().map(|c| c * &e.scale).collect());
        prev = Some((lr, fr));
    }
    rows
}

/// Reduced Gröbner basis of the vanishing ideal of `points`, for the
/// (order, geometry) pairs covered by the closed-form bases.
pub fn qtbm(points: &PointSet, order: MonomialOrder) -> Result<GroebnerOutput> {
    let field = points.field();
    let n = drimb(points, order)?;
    let basis = drinb(points, order)?;
    let q: Vec<Polynomial> = basis.elements.iter().map(|e| e.expand()).collect();
    let c = build_c(&basis, points)?;

    let mut work = Worklist::new(order);
    for t in border(&n, order)?.monomials {
        work.push(t);
    }
    let mut acc = Accumulator::new(field, &n);
    let mut g = Vec::new();
    while let Some(t) = work.pop_min() {
        let v: Vec<FieldElement> = basis
            .nodes
            .iter()
            .map(|u| u.x.pow(t.x) * u.y.pow(t.y))
            .collect();
        let a = c.reduce(&v)?;
        g.push(g_element(field, t, &a, &q, &mut acc));
        work.prune_multiples(t);
    }
    Ok(GroebnerOutput { g, n, q })
}

/// Dense coefficient grid over the monomials `x^a y^b` with `a < width`.
struct Accumulator {
    width: u32,
    slots: Vec<FieldElement>,
}

impl Accumulator {
    fn new(field: FieldSpec, monomials: &[Bidegree]) -> Self {
        let width = monomials.iter().map(|t| t.x).max().unwrap_or(0) + 1;
        let height = monomials.iter().map(|t| t.y).max().unwrap_or(0) + 1;
        Accumulator {
            width,
            slots: vec![field.zero(); (width * height) as usize],
        }
    }

    fn slot(&self, t: Bidegree) -> usize {
        (t.y * self.width + t.x) as usize
    }
}

/// `t - Σ a_h q_h`.
fn g_element(
    field: FieldSpec,
    t: Bidegree,
    a: &[FieldElement],
    q: &[Polynomial],
    acc: &mut Accumulator,
) -> Polynomial {
    for (ah, qh) in a.iter().zip(q) {
        if ah.is_zero() {
            continue;
        }
        for (s, c) in qh.terms() {
            let k = acc.slot(s);
            acc.slots[k].sub_mul_assign(ah, c);
        }
    }
    let width = acc.width;
    let mut out = Polynomial::from_terms(
        field,
        acc.slots
            .iter_mut()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let k = k as u32;
                (
                    Bidegree::new(k % width, k / width),
                    std::mem::replace(c, field.zero()),
                )
            }),
    );
    out.add_term(t, &field.one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bm::bm;

    fn b(x: u32, y: u32) -> Bidegree {
        Bidegree::new(x, y)
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
    fn border_of_one() {
        let l = border(&[Bidegree::ONE], MonomialOrder::GrLex).unwrap();
        assert_eq!(l.monomials, vec![b(0, 1), b(1, 0)]);
    }

    #[test]
    fn border_of_grid_matches_set_arithmetic() {
        for k in 1..6u32 {
            let n: Vec<_> = (0..k).flat_map(|i| (0..k).map(move |j| b(i, j))).collect();
            let l = border(&n, MonomialOrder::Lex).unwrap();
            let mut expected: Vec<_> = (0..k).flat_map(|j| [b(k, j), b(j, k)]).collect();
            MonomialOrder::Lex.sort(&mut expected);
            assert_eq!(l.monomials, expected);
        }
    }

    #[test]
    fn border_rejects_non_lower() {
        assert!(matches!(
            border(&[Bidegree::ONE, b(0, 2)], MonomialOrder::Lex),
            Err(Error::NotLower)
        ));
    }

    #[test]
    fn single_point_matrix_is_identity() {
        let s = pts(FieldSpec::Rational, &[(4, 4)]);
        let basis = drinb(&s, MonomialOrder::GrLex).unwrap();
        let c = build_c(&basis, &s).unwrap();
        assert_eq!(c.entries, vec![vec![FieldSpec::Rational.one()]]);
        assert_eq!(
            qtbm(&s, MonomialOrder::GrLex).unwrap(),
            bm(&s, MonomialOrder::GrLex)
        );
    }

    #[test]
    fn corrupted_basis_is_caught() {
        let f = FieldSpec::Prime(43);
        let s = pts(f, &[(0, 0), (1, 0), (2, 0), (7, 1)]);
        let mut basis = drinb(&s, MonomialOrder::GrLex).unwrap();
        basis.nodes.swap(0, 1);
        assert!(matches!(
            build_c(&basis, &s),
            Err(Error::TriangularityViolation { .. })
        ));
    }

    #[test]
    fn reduce_flags_nonzero_residual() {
        let f = FieldSpec::Prime(43);
        // not actually triangular: the second row forgets to clear column 0
        let c = TriangularMatrix {
            entries: vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]],
        };
        assert!(matches!(
            c.reduce(&[f.zero(), f.zero()]),
            Ok(ref a) if a.iter().all(FieldElement::is_zero)
        ));
        assert!(c.reduce(&[f.one(), f.zero()]).is_ok());
        let wide = TriangularMatrix {
            entries: vec![vec![f.from_i64(2), f.zero()], vec![f.zero(), f.one()]],
        };
        assert!(matches!(
            wide.reduce(&[f.one(), f.zero()]),
            Err(Error::NonZeroResidual(_))
        ));
    }

    #[test]
    fn matches_bm_on_small_sets() {
        let f = FieldSpec::Prime(37);
        let quasi = pts(f, &[(0, 0), (1, 0), (2, 0), (3, 0), (1, 1), (9, 1), (4, 2)]);
        for order in [
            MonomialOrder::GrLex,
            MonomialOrder::Lex,
            MonomialOrder::InvLex,
        ] {
            let a = qtbm(&quasi, order).unwrap();
            let e = bm(&quasi, order);
            assert_eq!(a.n, e.n, "{order}");
            assert_eq!(a.g, e.g, "{order}");
        }
        let t = quasi.transposed();
        assert_eq!(
            qtbm(&t, MonomialOrder::GrevLex).unwrap().g,
            bm(&t, MonomialOrder::GrevLex).g
        );
        assert!(matches!(
            qtbm(&quasi, MonomialOrder::GrevLex),
            Err(Error::Unsupported { .. })
        ));
    }
}
