//! Exact scalar fields of characteristic 2.
//!
//! Two families are provided: finite fields `GF(2^k)` given by an irreducible
//! modulus ([`Gf2k`]) and rational function fields `GF(2^k)(t)` with elements
//! kept as reduced fractions ([`RationalFunctionField`]).  Both implement the
//! [`Field`] trait; element values are plain data interpreted relative to a
//! field handle, and [`Fe`] pairs a value with its field when a self-contained
//! scalar is needed.
//!
//! The Artin–Schreier map `x ↦ x² + x` and the quotient `F/℘(F)` are exposed
//! through [`Field::artin_schreier_solve`] and [`Field::artin_schreier_class`].
//! Over finite fields the class of `a` is its absolute trace; over function
//! fields it is reported as undecided.

mod gf2k;
pub mod poly;
mod ratfn;

use std::fmt;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

pub use gf2k::Gf2k;
pub use ratfn::{Fraction, RationalFunctionField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("modulus {0} is not irreducible over GF(2)")]
    Reducible(String),
    #[error("extension degree {0} outside the supported range 1..=16")]
    UnsupportedDegree(u32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("Artin-Schreier class is undecided over {0}")]
    Undecided(String),
    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
}

impl ScalarError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        ScalarError::Parse { input: input.to_string(), reason: reason.into() }
    }
}

/// A field of characteristic 2 with exact arithmetic.
///
/// Negation is the identity and subtraction coincides with addition.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform element for finite fields; a small random fraction otherwise.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// All elements in a fixed order, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn size(&self) -> Option<u64>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    /// Header string that parses back to this field.
    fn name(&self) -> String;

    /// Root `x` of `x² + x = a` whose constant coefficient is zero, if any.
    fn artin_schreier_solve(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, ScalarError>;
    /// `false` iff `a ∈ ℘(F)`.
    fn artin_schreier_class(&self, a: &Self::Elem) -> Result<bool, ScalarError>;
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, b)
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }
    fn from_bool(&self, b: bool) -> Self::Elem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
    fn is_finite(&self) -> bool {
        self.size().is_some()
    }
}

/// A field element bundled with its field.
///
/// Arithmetic between elements of different fields is refused: the checked
/// methods return [`ScalarError::FieldMismatch`] and the operator impls panic.
#[derive(Clone, Debug)]
pub struct Fe<F: Field> {
    field: F,
    value: F::Elem,
}

impl<F: Field> Fe<F> {
    pub fn new(field: &F, value: F::Elem) -> Self {
        Fe { field: field.clone(), value }
    }
    pub fn parse(field: &F, s: &str) -> Result<Self, ScalarError> {
        Ok(Fe::new(field, field.parse_elem(s)?))
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn value(&self) -> &F::Elem {
        &self.value
    }
    pub fn into_value(self) -> F::Elem {
        self.value
    }
    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field.name(), other.field.name()))
        }
    }
    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Fe::new(&self.field, self.field.add(&self.value, &other.value)))
    }
    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(Fe::new(&self.field, self.field.mul(&self.value, &other.value)))
    }
    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        self.field
            .div(&self.value, &other.value)
            .map(|v| Fe::new(&self.field, v))
            .ok_or(ScalarError::DivisionByZero)
    }
    pub fn inv(&self) -> Option<Self> {
        self.field.inv(&self.value).map(|v| Fe::new(&self.field, v))
    }
    pub fn artin_schreier_class(&self) -> Result<bool, ScalarError> {
        self.field.artin_schreier_class(&self.value)
    }
    pub fn artin_schreier_solve(&self) -> Result<Option<Self>, ScalarError> {
        Ok(self.field.artin_schreier_solve(&self.value)?.map(|v| Fe::new(&self.field, v)))
    }
}

impl<F: Field> PartialEq for Fe<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl<F: Field> Eq for Fe<F> {}

impl<F: Field> fmt::Display for Fe<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}

impl<F: Field> std::ops::Add for &Fe<F> {
    type Output = Fe<F>;
    fn add(self, rhs: Self) -> Fe<F> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<F: Field> std::ops::Mul for &Fe<F> {
    type Output = Fe<F>;
    fn mul(self, rhs: Self) -> Fe<F> {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// A field chosen at run time from a textual header.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Binary(Gf2k),
    Rational(RationalFunctionField),
}

/// Parses `gf2`, `gf<2^k>` (default modulus), `gf<2^k>:<modulus in g>`, and
/// any of these followed by `(t)` for the rational function field over it.
pub fn parse_field_header(header: &str) -> Result<AnyField, ScalarError> {
    let h = header.trim();
    if let Some(base) = h.strip_suffix("(t)") {
        let base = parse_binary_header(base)?;
        return Ok(AnyField::Rational(RationalFunctionField::new(&base)));
    }
    parse_binary_header(h).map(AnyField::Binary)
}

fn parse_binary_header(h: &str) -> Result<Gf2k, ScalarError> {
    let (size_part, modulus) = match h.split_once(':') {
        Some((s, m)) => (s.trim(), Some(m.trim())),
        None => (h.trim(), None),
    };
    let digits = size_part
        .strip_prefix("gf")
        .or_else(|| size_part.strip_prefix("GF"))
        .ok_or_else(|| ScalarError::parse(h, "field header must start with gf"))?;
    let q: u64 = digits
        .parse()
        .map_err(|_| ScalarError::parse(h, "field size is not an integer"))?;
    if q < 2 || !q.is_power_of_two() {
        return Err(ScalarError::parse(h, "field size must be a power of 2"));
    }
    let k = q.trailing_zeros();
    match modulus {
        None => Gf2k::with_default_modulus(k),
        Some(m) => {
            let bits = gf2k::parse_gf2_poly(m, 'g')?;
            let field = Gf2k::from_modulus_bits(bits)?;
            if field.degree() != k {
                return Err(ScalarError::parse(h, "modulus degree does not match field size"));
            }
            Ok(field)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        for h in ["gf2", "gf4:g^2+g+1", "gf16:g^4+g+1", "gf2(t)", "gf4:g^2+g+1(t)"] {
            let f = parse_field_header(h).unwrap();
            let name = match &f {
                AnyField::Binary(b) => b.name(),
                AnyField::Rational(r) => r.name(),
            };
            assert_eq!(parse_field_header(&name).unwrap(), f);
        }
        assert!(parse_field_header("gf6").is_err());
        assert!(parse_field_header("gf4:g^2+1").is_err());
        assert!(parse_field_header("gf8:g^2+g+1").is_err());
    }

    #[test]
    fn fe_refuses_mixed_fields() {
        let f2 = Gf2k::gf2();
        let f4 = Gf2k::gf4();
        let a = Fe::new(&f2, f2.one());
        let b = Fe::new(&f4, f4.one());
        assert!(matches!(a.try_add(&b), Err(ScalarError::FieldMismatch(_, _))));
        assert_eq!((&a + &a).to_string(), "0");
    }

    #[test]
    #[should_panic]
    fn fe_operator_panics_on_mixed_fields() {
        let f2 = Gf2k::gf2();
        let f4 = Gf2k::gf4();
        let _ = &Fe::new(&f2, f2.one()) * &Fe::new(&f4, f4.one());
    }
}
