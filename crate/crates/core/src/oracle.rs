//! Independent checkers for Gröbner outputs, Newton bases, the structure of
//! tower-set Gröbner bases, and the quotient-by-line relation between a
//! quasi-tower set and its derived tower.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bases::NewtonBasis;
use crate::bm::{bm, GroebnerOutput};
use crate::error::{Error, Result};
use crate::geometry::{build_line_cover, classify, derive_tower, Axis, PointSet};
use crate::monomial::{Bidegree, MonomialOrder};
use crate::polynomial::{Polynomial, Var};

/// Failed condition of [`verify_groebner`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroebnerCondition {
    /// (a) some generator does not vanish on the points.
    Vanishing,
    /// (b) leading monomials divide each other, or a generator is not monic.
    Minimality,
    /// (c) a trailing monomial lies in the leading-monomial ideal.
    Reducedness,
    /// (d) the staircase complement is not `N`, or `|N| ≠ μ`.
    Staircase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: GroebnerCondition,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl GroebnerReport {
    pub fn failed(&self, condition: GroebnerCondition) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }
}

pub fn verify_groebner(
    points: &PointSet,
    out: &GroebnerOutput,
    order: MonomialOrder,
) -> GroebnerReport {
    let mut failures = Vec::new();
    let mut fail = |condition, detail: String| failures.push(Failure { condition, detail });

    for (i, g) in out.g.iter().enumerate() {
        if let Some(p) = points.iter().find(|p| !g.evaluate(&p.x, &p.y).is_zero()) {
            fail(
                GroebnerCondition::Vanishing,
                format!("g[{i}] is nonzero at {p}"),
            );
        }
    }

    let mut leading = Vec::with_capacity(out.g.len());
    for (i, g) in out.g.iter().enumerate() {
        match g.leading_monomial(order) {
            Ok(t) => leading.push(t),
            Err(_) => fail(GroebnerCondition::Minimality, format!("g[{i}] is zero")),
        }
        if !g.is_zero() && !g.is_monic(order) {
            fail(
                GroebnerCondition::Minimality,
                format!("g[{i}] is not monic"),
            );
        }
    }
    for (i, s) in leading.iter().enumerate() {
        for (j, t) in leading.iter().enumerate() {
            if i != j && s.divides(*t) {
                fail(
                    GroebnerCondition::Minimality,
                    format!("LM {s} divides LM {t}"),
                );
            }
        }
    }

    for (i, g) in out.g.iter().enumerate() {
        let Ok(lm) = g.leading_monomial(order) else {
            continue;
        };
        for s in g.support().filter(|&s| s != lm) {
            if let Some(t) = leading.iter().find(|t| t.divides(s)) {
                fail(
                    GroebnerCondition::Reducedness,
                    format!("term {s} of g[{i}] is divisible by LM {t}"),
                );
            }
        }
    }

    let n: BTreeSet<Bidegree> = out.n.iter().copied().collect();
    if n.len() != out.n.len() {
        fail(
            GroebnerCondition::Staircase,
            "N has repeated monomials".into(),
        );
    }
    if out.n.len() != points.len() {
        fail(
            GroebnerCondition::Staircase,
            format!("|N| = {} but μ = {}", out.n.len(), points.len()),
        );
    }
    let has_x_power = leading.iter().any(|t| t.y == 0);
    let has_y_power = leading.iter().any(|t| t.x == 0);
    if !(has_x_power && has_y_power) {
        fail(
            GroebnerCondition::Staircase,
            "leading monomials leave an infinite staircase".into(),
        );
    } else {
        let max_i = leading.iter().chain(&n).map(|t| t.x).max().unwrap_or(0);
        let max_j = leading.iter().chain(&n).map(|t| t.y).max().unwrap_or(0);
        let complement: BTreeSet<Bidegree> = (0..=max_i + 1)
            .flat_map(|i| (0..=max_j + 1).map(move |j| Bidegree::new(i, j)))
            .filter(|s| !leading.iter().any(|t| t.divides(*s)))
            .collect();
        if complement != n {
            fail(
                GroebnerCondition::Staircase,
                format!(
                    "staircase has {} monomials, N has {}",
                    complement.len(),
                    n.len()
                ),
            );
        }
    }

    GroebnerReport {
        passed: failures.is_empty(),
        failures,
    }
}

/// One named assertion of [`check_tower_structure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl TowerReport {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

/// Checks the shape of the grlex Gröbner basis of an x-tower set with
/// profile `L_x(m_0, …, m_ν)`, generators sorted decreasingly:
///
/// * `s = ν + 2` generators;
/// * `g_1 = ∏(x - x_i0)` over the abscissae of the longest row;
/// * `g_s = ∏(y - y_j)` over all levels;
/// * `LM(g_j) = x^{m_{j-1}+1} y^{j-1}` for `1 < j < s`, under grlex and lex alike;
/// * `y - y_0` divides every such middle generator;
/// * the longest row alone has the ideal `⟨g_1, y - y_0⟩`.
pub fn check_tower_structure(points: &PointSet) -> Result<TowerReport> {
    if !classify(points).x_tower {
        return Err(Error::ClassificationMismatch("x_tower"));
    }
    let order = MonomialOrder::GrLex;
    let field = points.field();
    let cover = build_line_cover(points, Axis::X);
    let nu = cover.lines.len() - 1;
    let profile: Vec<u32> = cover.sizes().iter().map(|&s| s as u32 - 1).collect();
    let row0 = cover.free_coordinates(0);
    let y0 = cover.lines[0].level.clone();

    let mut g = bm(points, order).sorted_g(order);
    g.reverse();
    let s = g.len();
    let middle = if s >= 2 { &g[1..s - 1] } else { &g[..0] };

    let x_gen = Polynomial::product_of_linears(field, Var::X, &row0);
    let y_gen = Polynomial::product_of_linears(field, Var::Y, &cover.levels());
    let y0_factor = Polynomial::linear(Var::Y, &y0);

    let middle_lm = s == nu + 2
        && middle.iter().enumerate().all(|(k, gj)| {
            let expected = Bidegree::new(profile[k + 1] + 1, k as u32 + 1);
            gj.leading_monomial(order).ok() == Some(expected)
                && gj.leading_monomial(MonomialOrder::Lex).ok() == Some(expected)
        });
    let divisible = middle.iter().all(|gj| gj.divide_linear(&y0_factor).is_ok());

    let row0_points = PointSet::new(cover.lines[0].members.clone())?;
    let mut row_ideal = bm(&row0_points, order).sorted_g(order);
    row_ideal.reverse();

    let checks = vec![
        Check {
            name: "generator_count",
            passed: s == nu + 2,
        },
        Check {
            name: "x_generator",
            passed: g.first() == Some(&x_gen),
        },
        Check {
            name: "y_generator",
            passed: g.last() == Some(&y_gen),
        },
        Check {
            name: "middle_leading_monomials",
            passed: middle_lm,
        },
        Check {
            name: "y0_divisibility",
            passed: divisible,
        },
        Check {
            name: "longest_row_ideal",
            passed: row_ideal == vec![x_gen, y0_factor],
        },
    ];
    Ok(TowerReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Compares the grlex basis of the quasi-x-tower set `points` with the basis
/// of its derived tower `points ∪ base`, divided through by `y - y_B` after
/// dropping the pure-x generator.
///
/// Fails with [`Error::InexactDivision`] if some generator is not divisible.
pub fn quotient_check(points: &PointSet, base: &PointSet) -> Result<bool> {
    let order = MonomialOrder::GrLex;
    let union = derive_tower(points, base)?;
    let y_base = Polynomial::linear(Var::Y, &base.points()[0].y);
    let union_g = bm(&union, order).g;
    let mut quotients = union_g
        .iter()
        .filter(|g| g.leading_monomial(order).map(|t| t.y > 0).unwrap_or(false))
        .map(|g| g.divide_linear(&y_base))
        .collect::<Result<Vec<_>>>()?;
    quotients.sort_by_key(|p| order.key(p.leading_monomial(order).expect("nonzero")));
    Ok(bm(points, order).sorted_g(order) == quotients)
}

/// `true` iff `φ_h(u_k)` is `1` for `h = k` and `0` for `h > k`, and the nodes
/// are exactly the points.
pub fn verify_newton(basis: &NewtonBasis, points: &PointSet) -> bool {
    if basis.elements.len() != points.len() || basis.nodes.len() != points.len() {
        return false;
    }
    let distinct: HashSet<_> = basis.nodes.iter().collect();
    if distinct.len() != points.len() || !basis.nodes.iter().all(|u| points.contains(u)) {
        return false;
    }
    basis.elements.iter().enumerate().all(|(h, e)| {
        basis.nodes[..=h].iter().enumerate().all(|(k, u)| {
            let v = e.evaluate(u);
            if h == k {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::drinb;
    use crate::field::FieldSpec;

    fn pts(field: FieldSpec, raw: &[(i64, i64)]) -> PointSet {
        PointSet::from_pairs(
            field,
            raw.iter()
                .map(|&(x, y)| (field.from_i64(x), field.from_i64(y))),
        )
        .unwrap()
    }

    fn tower() -> PointSet {
        pts(
            FieldSpec::Prime(37),
            &[(0, 5), (1, 5), (2, 5), (3, 5), (1, 2), (3, 2), (2, 8)],
        )
    }

    #[test]
    fn bm_output_verifies() {
        let s = tower();
        for order in MonomialOrder::ALL {
            let report = verify_groebner(&s, &bm(&s, order), order);
            assert!(report.passed, "{order}: {report:?}");
        }
    }

    #[test]
    fn perturbed_coefficient_fails_vanishing() {
        let s = tower();
        let mut out = bm(&s, MonomialOrder::GrLex);
        let f = s.field();
        out.g[0].add_term(Bidegree::ONE, &f.one());
        let report = verify_groebner(&s, &out, MonomialOrder::GrLex);
        assert!(report.failed(GroebnerCondition::Vanishing));
    }

    #[test]
    fn redundant_generator_fails_minimality() {
        let s = tower();
        let mut out = bm(&s, MonomialOrder::GrLex);
        let extra = out.g[0].mul_monomial(Bidegree::new(1, 0));
        out.g.push(extra);
        let report = verify_groebner(&s, &out, MonomialOrder::GrLex);
        assert!(report.failed(GroebnerCondition::Minimality));
        assert!(!report.failed(GroebnerCondition::Vanishing));
    }

    #[test]
    fn short_escalier_fails_staircase() {
        let s = tower();
        let mut out = bm(&s, MonomialOrder::GrLex);
        out.n.pop();
        assert!(
            verify_groebner(&s, &out, MonomialOrder::GrLex).failed(GroebnerCondition::Staircase)
        );
    }

    #[test]
    fn tower_structure_holds() {
        let report = check_tower_structure(&tower()).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn one_line_tower() {
        let s = pts(FieldSpec::Rational, &[(0, 3), (4, 3), (7, 3)]);
        let report = check_tower_structure(&s).unwrap();
        assert!(report.passed);
        let g = bm(&s, MonomialOrder::GrLex).g;
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn structure_check_rejects_quasi_sets() {
        let s = pts(FieldSpec::Rational, &[(0, 0), (1, 0), (2, 0), (9, 1)]);
        assert!(matches!(
            check_tower_structure(&s),
            Err(Error::ClassificationMismatch("x_tower"))
        ));
    }

    #[test]
    fn minimal_quotient_instance() {
        let f = FieldSpec::Prime(43);
        // rows of 3 and 1, the single abscissa off the longest row
        let xi = pts(f, &[(0, 1), (1, 1), (2, 1), (5, 2)]);
        let base = pts(f, &[(0, 0), (1, 0), (2, 0), (5, 0), (7, 0)]);
        assert!(quotient_check(&xi, &base).unwrap());
    }

    #[test]
    fn newton_check_detects_corruption() {
        let s = tower();
        let mut basis = drinb(&s, MonomialOrder::GrLex).unwrap();
        assert!(verify_newton(&basis, &s));
        basis.elements[3].scale = basis.elements[3].scale.clone() + s.field().one();
        assert!(!verify_newton(&basis, &s));
        let single = pts(FieldSpec::Rational, &[(1, 1)]);
        assert!(verify_newton(
            &drinb(&single, MonomialOrder::Lex).unwrap(),
            &single
        ));
    }
}
