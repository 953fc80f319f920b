//! The Buchberger–Möller algorithm for vanishing ideals of bivariate point
//! sets.
//!
//! Monomials are taken from a worklist in increasing order. Each one's
//! evaluation vector is reduced against the rows found so far; a zero
//! residual yields a Gröbner basis element, a nonzero one a new standard
//! monomial and a new Newton element.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::geometry::PointSet;
use crate::monomial::{Bidegree, MonomialOrder};
use crate::polynomial::Polynomial;

/// `(G, N, Q)`: reduced Gröbner basis, escalier, and Newton basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerOutput {
    pub g: Vec<Polynomial>,
    pub n: Vec<Bidegree>,
    pub q: Vec<Polynomial>,
}

impl GroebnerOutput {
    /// Leading monomials of `G`, in list order.
    pub fn leading_monomials(&self, order: MonomialOrder) -> Vec<Bidegree> {
        self.g
            .iter()
            .map(|g| {
                g.leading_monomial(order)
                    .expect("Gröbner elements are nonzero")
            })
            .collect()
    }

    /// `G` sorted increasingly by leading monomial.
    pub fn sorted_g(&self, order: MonomialOrder) -> Vec<Polynomial> {
        let mut g = self.g.clone();
        g.sort_by_key(|p| order.key(p.leading_monomial(order).expect("nonzero")));
        g
    }

    /// `true` when `G` (as sorted lists) and `N` coincide. `Q` is not unique
    /// and is ignored.
    pub fn same_ideal_data(&self, other: &GroebnerOutput, order: MonomialOrder) -> bool {
        self.n == other.n && self.sorted_g(order) == other.sorted_g(order)
    }

    pub fn to_json(&self, order: MonomialOrder) -> Value {
        json!({
            "G": self.g.iter().map(|p| p.format(order)).collect::<Vec<_>>(),
            "N": self.n,
            "Q": self.q.iter().map(|p| p.format(order)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value, field: FieldSpec) -> Result<Self> {
        let polys = |key: &str| -> Result<Vec<Polynomial>> {
            value
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing array {key:?}")))?
                .iter()
                .map(|v| {
                    let s = v
                        .as_str()
                        .ok_or_else(|| Error::Parse(format!("{key} entries must be strings")))?;
                    Polynomial::parse(s, field)
                })
                .collect()
        };
        let n: Vec<Bidegree> = serde_json::from_value(
            value
                .get("N")
                .cloned()
                .ok_or_else(|| Error::Parse("missing array \"N\"".into()))?,
        )
        .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(GroebnerOutput {
            g: polys("G")?,
            n,
            q: polys("Q").unwrap_or_default(),
        })
    }
}

type Keyed = ((u32, u32, u32), Bidegree);

/// Pending monomials `L`, popped in increasing order.
pub(crate) struct Worklist {
    order: MonomialOrder,
    heap: BinaryHeap<Reverse<Keyed>>,
}

impl Worklist {
    pub(crate) fn new(order: MonomialOrder) -> Self {
        Worklist {
            order,
            heap: BinaryHeap::new(),
        }
    }

    pub(crate) fn push(&mut self, t: Bidegree) {
        self.heap.push(Reverse((self.order.key(t), t)));
    }

    pub(crate) fn pop_min(&mut self) -> Option<Bidegree> {
        self.heap.pop().map(|Reverse((_, t))| t)
    }

    /// Drops every pending multiple of `t`.
    pub(crate) fn prune_multiples(&mut self, t: Bidegree) {
        self.heap.retain(|Reverse((_, s))| !t.divides(*s));
    }

    /// Queues `c` unless it is a multiple of a pending monomial or of a
    /// known leading monomial.
    pub(crate) fn admit(&mut self, c: Bidegree, leading: &[Bidegree]) -> bool {
        let blocked = self.heap.iter().any(|Reverse((_, s))| s.divides(c))
            || leading.iter().any(|l| l.divides(c));
        if !blocked {
            self.push(c);
        }
        !blocked
    }
}

#[derive(Clone, Debug)]
pub struct EchelonRow {
    pub vector: Vec<FieldElement>,
    pub pivot: usize,
    /// Coefficients of this row's Newton element over the escalier, so that
    /// `vector` is its evaluation vector.
    pub history: Vec<FieldElement>,
}

/// Row-echelon matrix `B` with `μ` columns.
///
/// Every row has a unit pivot and vanishes at the pivots of all earlier
/// rows, so reducing against the rows in insertion order needs no
/// back-substitution.
#[derive(Clone, Debug)]
pub struct EchelonMatrix {
    field: FieldSpec,
    width: usize,
    rows: Vec<EchelonRow>,
}

impl EchelonMatrix {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        EchelonMatrix {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[EchelonRow] {
        &self.rows
    }

    /// Returns `(v - Σ a_i row_i, a)`; the residual is zero at every pivot.
    pub fn reduce_vector(
        &self,
        v: &[FieldElement],
    ) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch {
                expected: self.width,
                got: v.len(),
            });
        }
        let mut residual = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let a = residual[row.pivot].clone();
            if !a.is_zero() {
                for (r, b) in residual.iter_mut().zip(&row.vector).skip(row.pivot) {
                    r.sub_mul_assign(&a, b);
                }
            }
            coeffs.push(a);
        }
        Ok((residual, coeffs))
    }

    /// Coefficients over the escalier of `-Σ a_i q_i`.
    fn combine_history(&self, coeffs: &[FieldElement], len: usize) -> Vec<FieldElement> {
        let mut out = vec![self.field.zero(); len];
        for (row, a) in self.rows.iter().zip(coeffs) {
            if a.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(&row.history) {
                o.sub_mul_assign(a, h);
            }
        }
        out
    }

    /// Appends the row for the new standard monomial at escalier position
    /// `index`, whose Newton element is `t - Σ a_i q_i`, normalized.
    fn push_row(&mut self, residual: Vec<FieldElement>, coeffs: &[FieldElement], index: usize) {
        let pivot = residual
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero residual");
        let scale = residual[pivot].inv().expect("nonzero pivot");
        let mut history = self.combine_history(coeffs, index + 1);
        history[index] = self.field.one();
        let history = history.iter().map(|c| c * &scale).collect();
        let vector = residual.iter().map(|c| c * &scale).collect();
        self.rows.push(EchelonRow {
            vector,
            pivot,
            history,
        });
    }
}

/// Values of `x^a y^b` at every point.
pub fn evaluation_vector(points: &PointSet, t: Bidegree) -> Vec<FieldElement> {
    points.iter().map(|p| p.x.pow(t.x) * p.y.pow(t.y)).collect()
}

fn polynomial_over(field: FieldSpec, escalier: &[Bidegree], coeffs: &[FieldElement]) -> Polynomial {
    Polynomial::from_terms(field, escalier.iter().copied().zip(coeffs.iter().cloned()))
}

/// Runs the Buchberger–Möller algorithm on `points` under `order`.
pub fn bm(points: &PointSet, order: MonomialOrder) -> GroebnerOutput {
    let field = points.field();
    let mut matrix = EchelonMatrix::new(field, points.len());
    let mut n: Vec<Bidegree> = Vec::new();
    let mut g: Vec<Polynomial> = Vec::new();
    let mut leading: Vec<Bidegree> = Vec::new();
    let mut work = Worklist::new(order);
    work.push(Bidegree::ONE);

    while let Some(t) = work.pop_min() {
        let v = evaluation_vector(points, t);
        let (residual, coeffs) = matrix.reduce_vector(&v).expect("width is μ");
        if residual.iter().all(FieldElement::is_zero) {
            let tail = matrix.combine_history(&coeffs, n.len());
            let mut element = polynomial_over(field, &n, &tail);
            element.add_term(t, &field.one());
            g.push(element);
            leading.push(t);
            work.prune_multiples(t);
        } else {
            matrix.push_row(residual, &coeffs, n.len());
            n.push(t);
            for c in [t.times_x(), t.times_y()] {
                work.admit(c, &leading);
            }
        }
    }

    let q = matrix
        .rows
        .iter()
        .map(|row| polynomial_over(field, &n, &row.history))
        .collect();
    GroebnerOutput { g, n, q }
}

/// Interpolates `values` in the span of the escalier of `bm(points, order)`.
///
/// Works for every order and geometry; `values` is aligned with `points`.
pub fn bm_interpolate(
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
    let out = bm(points, order);
    // Σ_h c_h q_h(ξ) = f(ξ); the evaluation matrix of Q is invertible
    let mut rows: Vec<Vec<FieldElement>> = points
        .iter()
        .zip(values)
        .map(|(p, f)| {
            let mut row: Vec<FieldElement> = out.q.iter().map(|q| q.evaluate(&p.x, &p.y)).collect();
            row.push(f.clone());
            row
        })
        .collect();
    let mu = out.q.len();
    for col in 0..mu {
        let pivot = (col..mu)
            .find(|&r| !rows[r][col].is_zero())
            .expect("Newton evaluation matrix is invertible");
        rows.swap(col, pivot);
        let inv = rows[col][col].inv()?;
        rows[col] = rows[col].iter().map(|c| c * &inv).collect();
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let a = row[col].clone();
            if r != col && !a.is_zero() {
                for (c, p) in row.iter_mut().zip(&pivot_row) {
                    c.sub_mul_assign(&a, p);
                }
            }
        }
    }
    let mut p = Polynomial::zero(field);
    for (row, q) in rows.iter().zip(&out.q) {
        let c = &row[mu];
        for (t, a) in q.terms() {
            p.add_term(t, &(a * c));
        }
    }
    Ok(p)
}
