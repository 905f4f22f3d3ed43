//! Scalar fields used by the linear-algebra engine.
//!
//! Two modes are supported: `f64` with an absolute rank threshold, and exact
//! rationals ([`Q`]) where every decision is made without rounding.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Default float rank threshold.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Rank-decision threshold. Exact scalars ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol(pub f64);

impl Tol {
    pub const EXACT: Tol = Tol(0.0);

    pub fn epsilon(self) -> f64 {
        self.0
    }
}

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_EPSILON)
    }
}

/// Scalar mode as configured by a caller (CLI flag or input document).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMode {
    Float { epsilon: f64 },
    Exact,
}

impl ScalarMode {
    pub fn tol(self) -> Tol {
        match self {
            ScalarMode::Float { epsilon } => Tol(epsilon),
            ScalarMode::Exact => Tol::EXACT,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Float { .. } => "float",
            ScalarMode::Exact => "exact",
        }
    }
}

/// A field the engine can row-reduce over.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Whether the value counts as zero at threshold `tol`.
    fn negligible(&self, tol: Tol) -> bool;

    /// Magnitude used to pick pivots.
    fn magnitude(&self) -> f64;

    fn to_f64(&self) -> f64;

    /// Canonical text form: `p/q` or an integer for rationals, shortest
    /// round-trip decimal for floats.
    fn render(&self) -> String;

    /// Parses `p/q`, integers and decimals.
    fn parse(text: &str) -> Option<Self>;

    /// Tolerance appropriate for this scalar type when none is given.
    fn default_tol() -> Tol {
        if Self::EXACT {
            Tol::EXACT
        } else {
            Tol::default()
        }
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn negligible(&self, tol: Tol) -> bool {
        self.abs() <= tol.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        // -0.0 renders as 0
        if *self == 0.0 {
            "0".to_string()
        } else {
            format!("{}", self)
        }
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().ok()?;
            let d: f64 = d.trim().parse().ok()?;
            if d == 0.0 {
                return None;
            }
            Some(n / d)
        } else {
            text.parse().ok().filter(|v: &f64| v.is_finite())
        }
    }
}

impl Field for Q {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Q::new(BigInt::from(num), BigInt::from(den))
    }

    fn negligible(&self, _tol: Tol) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(Q::new(n, d));
        }
        if let Ok(n) = BigInt::from_str(text) {
            return Some(Q::from_integer(n));
        }
        parse_decimal(text)
    }
}

/// Exact value of a plain decimal literal such as `-0.125` or `3e-2`.
fn parse_decimal(text: &str) -> Option<Q> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", int_part, frac_part);
    let mut value = Q::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Q::from_integer(BigInt::from(10));
    for _ in 0..scale.unsigned_abs() {
        if scale > 0 {
            value = value * ten.clone();
        } else {
            value = value / ten.clone();
        }
    }
    Some(if negative { -value } else { value })
}

/// Wrapper that renders a vector of scalars compactly.
pub struct Rendered<'a, T: Field>(pub &'a [T]);

impl<T: Field> Display for Rendered<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v.render())?;
        }
        write!(f, ")")
    }
}

/// Shorthand for exact integers in tests and fixtures.
pub fn qi(v: i64) -> Q {
    Q::from_i64(v)
}

/// Shorthand for exact fractions.
pub fn qr(num: i64, den: i64) -> Q {
    Q::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        assert_eq!(Q::parse("3/6"), Some(qr(1, 2)));
        assert_eq!(Q::parse("-4"), Some(qi(-4)));
        assert_eq!(Q::parse("0.125"), Some(qr(1, 8)));
        assert_eq!(Q::parse("-2.5e1"), Some(qi(-25)));
        assert_eq!(Q::parse("1/0"), None);
        assert_eq!(Q::parse("abc"), None);
        assert_eq!(f64::parse("1/4"), Some(0.25));
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(qr(6, -4).render(), "-3/2");
        assert_eq!(qi(7).render(), "7");
        assert_eq!((-0.0f64).render(), "0");
    }

    #[test]
    fn negligibility_depends_on_mode() {
        assert!(1e-12f64.negligible(Tol(1e-9)));
        assert!(!1e-6f64.negligible(Tol(1e-9)));
        assert!(!qr(1, 1_000_000_000_000).negligible(Tol(1.0)));
    }
}
