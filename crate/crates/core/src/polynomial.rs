//! Sparse bivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldElement, FieldSpec};
use crate::monomial::{Bidegree, MonomialOrder};

/// Which variable a linear factor lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// A polynomial in `F[x, y]`. No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    terms: BTreeMap<Bidegree, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(Bidegree::ONE, c)
    }

    pub fn monomial(t: Bidegree, c: FieldElement) -> Self {
        let mut p = Self::zero(c.spec());
        if !c.is_zero() {
            p.terms.insert(t, c);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Self
    where
        I: IntoIterator<Item = (Bidegree, FieldElement)>,
    {
        let mut p = Self::zero(field);
        for (t, c) in terms {
            p.add_term(t, &c);
        }
        p
    }

    /// `var - root`.
    pub fn linear(var: Var, root: &FieldElement) -> Self {
        let field = root.spec();
        let t = match var {
            Var::X => Bidegree::new(1, 0),
            Var::Y => Bidegree::new(0, 1),
        };
        Self::from_terms(field, [(t, field.one()), (Bidegree::ONE, -root)])
    }

    /// Expands `∏ (var - r)` over `roots`.
    pub fn product_of_linears(field: FieldSpec, var: Var, roots: &[FieldElement]) -> Self {
        roots.iter().fold(Self::constant(field.one()), |acc, r| {
            &acc * &Self::linear(var, r)
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Bidegree, &FieldElement)> {
        self.terms.iter().map(|(t, c)| (*t, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.terms.keys().copied()
    }

    pub fn coefficient(&self, t: Bidegree) -> FieldElement {
        self.terms
            .get(&t)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * t` in place.
    pub fn add_term(&mut self, t: Bidegree, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Result<Bidegree> {
        self.terms
            .keys()
            .copied()
            .max_by_key(|&t| order.key(t))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self, order: MonomialOrder) -> Result<FieldElement> {
        let lm = self.leading_monomial(order)?;
        Ok(self.terms[&lm].clone())
    }

    pub fn is_monic(&self, order: MonomialOrder) -> bool {
        self.leading_coefficient(order)
            .map(|c| c.is_one())
            .unwrap_or(false)
    }

    /// Terms in strictly decreasing order.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Bidegree, &FieldElement)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|&(t, _)| std::cmp::Reverse(order.key(t)));
        v
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(t, a)| (*t, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Bidegree) -> Self {
        Polynomial {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (*t * m, a.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let max_x = self.terms.keys().map(|t| t.x).max().unwrap_or(0) as usize;
        let max_y = self.terms.keys().map(|t| t.y).max().unwrap_or(0) as usize;
        let powers = |base: &FieldElement, n: usize| {
            let mut v = Vec::with_capacity(n + 1);
            v.push(self.field.one());
            for k in 0..n {
                let next = &v[k] * base;
                v.push(next);
            }
            v
        };
        let xp = powers(x, max_x);
        let yp = powers(y, max_y);
        self.terms.iter().fold(self.field.zero(), |acc, (t, c)| {
            acc + &(&(c * &xp[t.x as usize]) * &yp[t.y as usize])
        })
    }

    /// Exact quotient by a univariate linear polynomial `a*x + b` or `a*y + b`.
    ///
    /// Fails with [`Error::InexactDivision`] when the remainder is nonzero.
    pub fn divide_linear(&self, factor: &Polynomial) -> Result<Polynomial> {
        let (var, root, lead) = factor.as_univariate_linear()?;
        // Group coefficients by the other variable's exponent, then run
        // synthetic division along `var`.
        let mut columns: BTreeMap<u32, BTreeMap<u32, FieldElement>> = BTreeMap::new();
        for (t, c) in &self.terms {
            let (along, other) = match var {
                Var::X => (t.x, t.y),
                Var::Y => (t.y, t.x),
            };
            columns.entry(other).or_default().insert(along, c.clone());
        }
        let lead_inv = lead.inv()?;
        let mut quotient = Polynomial::zero(self.field);
        for (other, column) in columns {
            let top = *column.keys().next_back().expect("nonempty column");
            let mut carry = self.field.zero();
            for k in (0..=top).rev() {
                let c = column.get(&k).cloned().unwrap_or_else(|| self.field.zero());
                let acc = c + &(&carry * &root);
                if k == 0 {
                    if !acc.is_zero() {
                        return Err(Error::InexactDivision);
                    }
                } else {
                    let t = match var {
                        Var::X => Bidegree::new(k - 1, other),
                        Var::Y => Bidegree::new(other, k - 1),
                    };
                    quotient.add_term(t, &(&acc * &lead_inv));
                    carry = acc;
                }
            }
        }
        Ok(quotient)
    }

    /// Returns `(var, root, lead)` for `lead * (var - root)`.
    fn as_univariate_linear(&self) -> Result<(Var, FieldElement, FieldElement)> {
        let x = Bidegree::new(1, 0);
        let y = Bidegree::new(0, 1);
        let constant = self.coefficient(Bidegree::ONE);
        let other_terms = self.terms.keys().filter(|&&t| t != Bidegree::ONE);
        let mut var = None;
        for &t in other_terms {
            let v = if t == x {
                Var::X
            } else if t == y {
                Var::Y
            } else {
                return Err(Error::InvalidFactor);
            };
            if var.replace(v).is_some() {
                return Err(Error::InvalidFactor);
            }
        }
        let var = var.ok_or(Error::InvalidFactor)?;
        let lead = self.coefficient(if var == Var::X { x } else { y });
        let root = -(&constant * &lead.inv()?);
        Ok((var, root, lead))
    }

    /// Text form with terms decreasing under `order`, e.g. `x^7 - 3*x^2*y + 1/5`.
    pub fn format(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if t == Bidegree::ONE {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&t.to_string());
            } else {
                out.push_str(&format!("{magnitude}*{t}"));
            }
        }
        out
    }

    /// Parses the text form produced by [`Polynomial::format`].
    ///
    /// Accepts `-` or `−` for subtraction and any term order.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Polynomial> {
        let malformed = |reason: &str| Error::MalformedPolynomial {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let normalized: String = text
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if normalized.is_empty() {
            return Err(malformed("empty"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (k, ch) in normalized.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if k == 0 {
                    negative = ch == '-';
                    continue;
                }
                if current.is_empty() {
                    return Err(malformed("dangling sign"));
                }
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(malformed("dangling sign"));
        }
        pieces.push((negative, current));

        let mut p = Polynomial::zero(field);
        for (negative, piece) in pieces {
            let mut coeff = field.one();
            let mut mono = Bidegree::ONE;
            for factor in piece.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| malformed("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "x" => mono.x += exp,
                    "y" => mono.y += exp,
                    _ if factor.contains('^') => return Err(malformed("exponent on a scalar")),
                    _ => coeff = coeff * parse_scalar(base, field)?,
                }
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(mono, &coeff);
        }
        Ok(p)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(*t, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(*t, &-c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(t, c)| (*t, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                out.add_term(*s * *t, &(a * b));
            }
        }
        out
    }
}
