//! Scalar traits.
//!
//! Everything algebraic in the crate (brackets, BCH, PBW straightening) is
//! written against [`Scalar`], a field-like type that can be multiplied by an
//! exact rational. Operations that need decidable equality (ranks, membership,
//! Jacobi checks) additionally require [`ExactScalar`], which is implemented
//! for [`Rational`] and [`Gaussian`] only.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Gaussian rational `a + b·i` with rational parts.
pub type Gaussian = Complex<BigRational>;

pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Multiplies by an exact rational constant.
    fn scale(&self, q: &Rational) -> Self;
}

pub trait ExactScalar: Scalar + Eq + Hash {
    fn from_rational(q: Rational) -> Self;

    /// `|x|²`, always rational for the exact types.
    fn norm_sqr(&self) -> Rational;

    /// The value as a rational if its imaginary part vanishes.
    fn to_real(&self) -> Option<Rational>;

    /// Parses `"p/q"`, `"p/q+r/s i"`, `"r/s i"` and plain integers or decimals.
    fn parse_str(s: &str) -> Result<Self, Error>;

    /// Canonical string form used by the JSON files.
    fn to_text(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl ExactScalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn norm_sqr(&self) -> Rational {
        self * self
    }

    fn to_real(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn parse_str(s: &str) -> Result<Self, Error> {
        let g = Gaussian::parse_str(s)?;
        if g.im.is_zero() {
            Ok(g.re)
        } else {
            Err(Error::Parse(format!("expected a real rational, got {s:?}")))
        }
    }

    fn to_text(&self) -> String {
        rational_text(self)
    }
}

impl Scalar for Gaussian {
    fn scale(&self, q: &Rational) -> Self {
        Complex::new(&self.re * q, &self.im * q)
    }
}

impl ExactScalar for Gaussian {
    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }

    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn to_real(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn parse_str(s: &str) -> Result<Self, Error> {
        parse_gaussian(s)
    }

    fn to_text(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => rational_text(&self.re),
            (true, false) => format!("{} i", rational_text(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                format!(
                    "{}{}{} i",
                    rational_text(&self.re),
                    sign,
                    rational_text(&self.im.abs())
                )
            }
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn scale(&self, q: &Rational) -> Self {
                self * (q.to_f64().unwrap_or(f64::NAN) as $t)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

pub fn rational_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses a real rational written as an integer, a fraction or a decimal
/// (`"-3"`, `"7/2"`, `"0.125"`, `"1e-3"`). Decimals are converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Rational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Ok(if negative { -value } else { value })
}

fn parse_gaussian(s: &str) -> Result<Gaussian, Error> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("not a Gaussian rational: {s:?}"));
    let Some(body) = compact.strip_suffix('i') else {
        return Ok(Gaussian::from_rational(parse_rational(&compact)?));
    };
    // Split at the last sign that is not the leading one and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.trim_start_matches('+')).map_err(|_| bad())?,
    };
    Ok(Complex::new(parse_rational(re).map_err(|_| bad())?, im))
}

/// Shorthand for building rationals in code and tests.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
