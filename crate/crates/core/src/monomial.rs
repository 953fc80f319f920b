//! Bivariate monomials and the four monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exponent pair of `x^x * y^y`.
///
/// Serializes as a two-element array `[i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Bidegree {
    pub x: u32,
    pub y: u32,
}

impl Bidegree {
    pub const ONE: Bidegree = Bidegree { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Bidegree { x, y }
    }

    pub fn total_degree(self) -> u32 {
        self.x + self.y
    }

    /// True if `self` divides `other`.
    pub fn divides(self, other: Bidegree) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn times_x(self) -> Self {
        Bidegree::new(self.x + 1, self.y)
    }

    pub fn times_y(self) -> Self {
        Bidegree::new(self.x, self.y + 1)
    }
}

/// Monomial product.
impl std::ops::Mul for Bidegree {
    type Output = Bidegree;

    fn mul(self, other: Bidegree) -> Bidegree {
        Bidegree::new(self.x + other.x, self.y + other.y)
    }
}

impl From<(u32, u32)> for Bidegree {
    fn from((x, y): (u32, u32)) -> Self {
        Bidegree { x, y }
    }
}

impl From<Bidegree> for (u32, u32) {
    fn from(b: Bidegree) -> Self {
        (b.x, b.y)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write_var(f, "x", a),
            (0, b) => write_var(f, "y", b),
            (a, b) => {
                write_var(f, "x", a)?;
                write!(f, "*")?;
                write_var(f, "y", b)
            }
        }
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, var: &str, exp: u32) -> fmt::Result {
    if exp == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{exp}")
    }
}

/// Monomial orders, always with `y ≺ x`.
///
/// `InvLex` compares the y-exponent first and `GrevLex` breaks total-degree
/// ties by `InvLex`. In two variables this makes grevlex y-dominant on ties,
/// the mirror image of grlex, which pairs {lex, grlex} with x-line covers
/// and {invlex, grevlex} with y-line covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    InvLex,
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 4] = [
        MonomialOrder::Lex,
        MonomialOrder::InvLex,
        MonomialOrder::GrLex,
        MonomialOrder::GrevLex,
    ];

    pub fn compare(self, s: Bidegree, t: Bidegree) -> Ordering {
        self.key(s).cmp(&self.key(t))
    }

    /// A tuple whose lexicographic order realizes this monomial order.
    pub fn key(self, t: Bidegree) -> (u32, u32, u32) {
        match self {
            MonomialOrder::Lex => (t.x, t.y, 0),
            MonomialOrder::InvLex => (t.y, t.x, 0),
            MonomialOrder::GrLex => (t.x + t.y, t.x, t.y),
            MonomialOrder::GrevLex => (t.x + t.y, t.y, t.x),
        }
    }

    /// Sorts increasingly under this order.
    pub fn sort(self, monomials: &mut [Bidegree]) {
        monomials.sort_by_key(|&t| self.key(t));
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::InvLex => "invlex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for MonomialOrder {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "invlex" => Ok(MonomialOrder::InvLex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(Error::Parse(format!("unknown monomial order {other:?}"))),
        }
    }
}
