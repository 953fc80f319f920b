//! Exact bivariate Lagrange interpolation on tower and quasi-tower point
//! sets, and reduced Gröbner bases of their vanishing ideals.
//!
//! The crate classifies point sets by their horizontal and vertical line
//! covers, builds degree-reducing monomial and Newton bases in closed form
//! where the geometry allows it, and computes vanishing ideals with the
//! Buchberger–Möller algorithm and with a variant that seeds it from the
//! closed-form bases.

pub mod bases;
pub mod bench;
pub mod bm;
pub mod error;
pub mod field;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod monomial;
pub mod oracle;
pub mod plot;
pub mod polynomial;
pub mod qtbm;

pub use bases::{drimb, drinb, newton_interpolate, NewtonBasis, NewtonBasisElement};
pub use bench::{bench, bench_with, to_csv, Algo, BenchConfig, BenchRecord, Runners};
pub use bm::{bm, bm_interpolate, GroebnerOutput};
pub use error::{Error, Result};
pub use field::{parse_scalar, FieldElement, FieldSpec};
pub use generate::{generate, generate_base, Flavor, GeneratorConfig};
pub use geometry::{
    build_line_cover, classify, derive_tower, is_lower, lower_set, Axis, Classification, LineCover,
    LowerSet, Point, PointSet,
};
pub use io::{parse_points, parse_values, points_to_csv};
pub use monomial::{Bidegree, MonomialOrder};
pub use oracle::{
    check_tower_structure, quotient_check, verify_groebner, verify_newton, GroebnerCondition,
    GroebnerReport, TowerReport,
};
pub use plot::{plot, plot_svg};
pub use polynomial::{Polynomial, Var};
pub use qtbm::{border, build_c, qtbm, BorderWorklist, TriangularMatrix};
