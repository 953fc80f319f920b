//! Exact scalars over the rationals and prime fields.
//!
//! Every value carries its field with it. Mixing fields is a programming
//! error: the `checked_*` methods report it, the operator impls panic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field: ℚ or 𝔽_p with `p < 2^31` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rational => {
                FieldElement::Rational(Box::new(BigRational::from_integer(n.into())))
            }
            FieldSpec::Prime(p) => FieldElement::Modular {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_u64(self, n: u64) -> FieldElement {
        match self {
            FieldSpec::Rational => {
                FieldElement::Rational(Box::new(BigRational::from_integer(n.into())))
            }
            FieldSpec::Prime(p) => FieldElement::Modular {
                value: (n % p as u64) as u32,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Number of elements, or `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(p as u64),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `rational`, `Q`, or a prime modulus such as `37`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rational" | "Q" | "q" | "QQ" => Ok(FieldSpec::Rational),
            _ => {
                let p: u64 = s
                    .strip_prefix("F")
                    .unwrap_or(s)
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`] in canonical form.
///
/// Rationals are gcd-reduced with positive denominator (guaranteed by
/// `BigRational`); residues lie in `[0, p)`. Structural equality is
/// therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(Box<BigRational>),
    Modular { value: u32, modulus: u32 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rational,
            FieldElement::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::FieldMismatch(self.spec().to_string(), other.spec().to_string())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(Box::new(a.as_ref() + b.as_ref())))
            }
            (
                FieldElement::Modular {
                    value: a,
                    modulus: p,
                },
                FieldElement::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let s = *a as u64 + *b as u64;
                Ok(FieldElement::Modular {
                    value: (s % *p as u64) as u32,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(Box::new(a.as_ref() * b.as_ref())))
            }
            (
                FieldElement::Modular {
                    value: a,
                    modulus: p,
                },
                FieldElement::Modular {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(FieldElement::Modular {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            }),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse; extended Euclid over 𝔽_p.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldElement::Rational(r) => Ok(FieldElement::Rational(Box::new(r.recip()))),
            FieldElement::Modular { value, modulus } => {
                let (mut r0, mut r1) = (*modulus as i64, *value as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Ok(FieldElement::Modular {
                    value: t0.rem_euclid(*modulus as i64) as u32,
                    modulus: *modulus,
                })
            }
        }
    }

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(Box::new(-r.as_ref())),
            FieldElement::Modular { value, modulus } => FieldElement::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self -= a * b`, the inner step of every row reduction.
    pub fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        match (&mut *self, a, b) {
            (
                FieldElement::Modular { value, modulus },
                FieldElement::Modular { value: x, .. },
                FieldElement::Modular { value: y, .. },
            ) => {
                let p = *modulus as u64;
                let prod = (*x as u64 * *y as u64) % p;
                *value = ((*value as u64 + p - prod) % p) as u32;
            }
            _ => *self = &*self - &(a * b),
        }
    }

    /// Approximate value, for plotting only.
    pub fn to_f64(&self) -> f64 {
        match self {
            FieldElement::Rational(r) => {
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
            FieldElement::Modular { value, .. } => *value as f64,
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order on ℚ, residue order on 𝔽_p; used only for deterministic
/// sorting of line levels and line members.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (
                FieldElement::Modular {
                    value: a,
                    modulus: p,
                },
                FieldElement::Modular {
                    value: b,
                    modulus: q,
                },
            ) => p.cmp(q).then(a.cmp(b)),
            (FieldElement::Rational(_), FieldElement::Modular { .. }) => Ordering::Less,
            (FieldElement::Modular { .. }, FieldElement::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Serialized as its canonical text form, e.g. `"25/6"`.
impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Serialized as `"rational"` or the prime.
impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Parses an integer, `a/b` fraction, or `d.ddd` decimal into `spec`.
///
/// Decimals are exact: `"0.2"` is `1/5`, never a binary float.
pub fn parse_scalar(text: &str, spec: FieldSpec) -> Result<FieldElement> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let t = text.trim();
    let (num, den) = if let Some((a, b)) = t.split_once('/') {
        let a = parse_int(a.trim()).ok_or_else(malformed)?;
        let b = b.trim();
        if b.starts_with(['+', '-']) {
            return Err(malformed());
        }
        let b = parse_int(b).ok_or_else(malformed)?;
        (a, b)
    } else if let Some((int_part, frac_part)) = t.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let digits_ok = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
        if !digits_ok(int_digits) || !digits_ok(frac_part) {
            return Err(malformed());
        }
        let mut n: BigInt = format!("{int_digits}{frac_part}")
            .parse()
            .map_err(|_| malformed())?;
        if neg {
            n = -n;
        }
        (n, BigInt::from(10u32).pow(frac_part.len() as u32))
    } else {
        (parse_int(t).ok_or_else(malformed)?, BigInt::one())
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match spec {
        FieldSpec::Rational => Ok(FieldElement::Rational(Box::new(BigRational::new(num, den)))),
        FieldSpec::Prime(p) => {
            let reduce = |n: &BigInt| -> u64 {
                n.mod_floor(&BigInt::from(p))
                    .to_u64()
                    .expect("residue fits in u64")
            };
            let n = spec.from_u64(reduce(&num));
            let d = spec.from_u64(reduce(&den));
            n.checked_div(&d)
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -n } else { n })
}

impl FieldElement {
    /// Sign for display purposes: only rationals can be negative.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Modular { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        parse_scalar(s, FieldSpec::Rational).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&q("1/3") + &q("1/6"), q("1/2"));
        let f37 = FieldSpec::Prime(37);
        assert_eq!(f37.from_i64(36) + f37.from_i64(2), f37.one());
        assert_eq!(&q("7/9") + &q("0"), q("7/9"));
    }

    #[test]
    fn inverse_examples() {
        let f37 = FieldSpec::Prime(37);
        assert_eq!(f37.from_i64(2).inv().unwrap(), f37.from_i64(19));
        assert_eq!(q("7/20").inv().unwrap(), q("20/7"));
        assert_eq!(f37.one().inv().unwrap(), f37.one());
        assert!(matches!(f37.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(q("0").inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(q("0.2"), q("1/5"));
        assert_eq!(q("1.45"), q("29/20"));
        assert_eq!(q("-0.25"), q("-1/4"));
        assert_eq!(q("6/2"), q("3"));
        let f37 = FieldSpec::Prime(37);
        assert_eq!(parse_scalar("40", f37).unwrap(), f37.from_i64(3));
        assert_eq!(parse_scalar("-1", f37).unwrap(), f37.from_i64(36));
        assert_eq!(parse_scalar("1/2", f37).unwrap(), f37.from_i64(19));
        assert_eq!(parse_scalar("0.5", f37).unwrap(), f37.from_i64(19));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "abc", "1/", "/2", "1.", ".5", "1/-2", "1e5", "--1", "1.2.3",
        ] {
            assert!(
                matches!(
                    parse_scalar(bad, FieldSpec::Rational),
                    Err(Error::MalformedScalar(_))
                ),
                "{bad:?}"
            );
        }
        assert!(matches!(
            parse_scalar("3/37", FieldSpec::Prime(37)),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            parse_scalar("1/0", FieldSpec::Rational),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            parse_scalar("0.1", FieldSpec::Prime(5)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = FieldSpec::Prime(37).one();
        let b = FieldSpec::Prime(43).one();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(
            a.checked_mul(&q("1")),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(37).is_ok());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(39).is_err());
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert_eq!(
            "rational".parse::<FieldSpec>().unwrap(),
            FieldSpec::Rational
        );
        assert_eq!("43".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(43));
        assert!("44".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn sub_mul_assign_matches_operators() {
        let f = FieldSpec::Prime(43);
        let mut v = f.from_i64(5);
        v.sub_mul_assign(&f.from_i64(7), &f.from_i64(11));
        assert_eq!(v, f.from_i64(5 - 77));
        let mut r = q("1/2");
        r.sub_mul_assign(&q("1/3"), &q("3/4"));
        assert_eq!(r, q("1/4"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q("4/8").to_string(), "1/2");
        assert_eq!(q("-6/3").to_string(), "-2");
        assert_eq!(
            parse_scalar("-1", FieldSpec::Prime(7)).unwrap().to_string(),
            "6"
        );
    }
}
