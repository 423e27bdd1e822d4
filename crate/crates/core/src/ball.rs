//! Certified high-precision real intervals.
//!
//! A [`Ball`] is a closed interval `[lo, hi]` with MPFR endpoints. Every
//! operation rounds the lower endpoint down and the upper endpoint up, so the
//! exact real result of the corresponding exact computation is always
//! contained in the returned interval. Binary operations work at the larger
//! of the two operand precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rug::float::{Constant, Round, Special};
use rug::integer::Order;
use rug::ops::Pow;
use rug::{Float, Integer};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::scalar::{ExactScalar, Rational, Scalar};

/// Precision used for balls created without an explicit context
/// (`Zero::zero`, `One::one`).
pub const FLOOR_PRECISION: u32 = 64;

#[derive(Clone)]
pub struct Ball {
    lo: Float,
    hi: Float,
}

pub(crate) fn to_rug_integer(n: &BigInt) -> Integer {
    let (sign, digits) = n.to_u32_digits();
    let mut out = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        out = -out;
    }
    out
}

pub(crate) fn to_rug_rational(q: &Rational) -> rug::Rational {
    rug::Rational::from((to_rug_integer(q.numer()), to_rug_integer(q.denom())))
}

impl Ball {
    /// Interval from explicit endpoints; panics if `lo > hi`.
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        assert!(
            lo.is_nan() || hi.is_nan() || lo <= hi,
            "ball endpoints out of order"
        );
        Ball { lo, hi }
    }

    pub fn exact_zero(prec: u32) -> Self {
        Ball {
            lo: Float::with_val(prec, 0),
            hi: Float::with_val(prec, 0),
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Ball {
            lo: Float::with_val_round(prec, n, Round::Down).0,
            hi: Float::with_val_round(prec, n, Round::Up).0,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let r = to_rug_rational(q);
        Ball {
            lo: Float::with_val_round(prec, &r, Round::Down).0,
            hi: Float::with_val_round(prec, &r, Round::Up).0,
        }
    }

    /// Encloses an `f64`; exact since every `f64` fits in 53 bits.
    /// `|c|` for an exact scalar; exact for reals, a square root otherwise.
    pub fn modulus<S: ExactScalar>(c: &S, prec: u32) -> Self {
        match c.to_real() {
            Some(q) => Ball::from_rational(&num_traits::Signed::abs(&q), prec),
            None => Ball::from_rational(&c.norm_sqr(), prec).sqrt(),
        }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        let v = Float::with_val(prec.max(53), x);
        Ball {
            lo: v.clone(),
            hi: v,
        }
    }

    /// The whole real line; the result of dividing by an interval containing zero.
    pub fn entire(prec: u32) -> Self {
        Ball {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn e(prec: u32) -> Self {
        Self::from_i64(1, prec).exp()
    }

    pub fn pi(prec: u32) -> Self {
        Ball {
            lo: Float::with_val_round(prec, Constant::Pi, Round::Down).0,
            hi: Float::with_val_round(prec, Constant::Pi, Round::Up).0,
        }
    }

    pub fn precision(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn mid(&self) -> Float {
        let p = self.precision() + 1;
        let mut m = Float::with_val(p, &self.lo + &self.hi);
        m /= 2;
        m
    }

    /// Half-width, rounded up.
    pub fn radius(&self) -> Float {
        if !self.is_finite() {
            return Float::with_val(self.precision(), Special::Infinity);
        }
        let mut w = Float::with_val_round(self.precision(), &self.hi - &self.lo, Round::Up).0;
        w /= 2;
        w
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.precision(), self.lo.abs_ref());
        let b = Float::with_val(self.precision(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius().to_f64_round(Round::Up)
    }

    pub fn contains(&self, other: &Ball) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let r = to_rug_rational(q);
        self.lo <= r && r <= self.hi
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when every point of `self` is strictly below every point of `other`.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Ball) -> bool {
        self.hi <= other.lo
    }

    pub fn with_precision(&self, prec: u32) -> Ball {
        Ball {
            lo: Float::with_val_round(prec, &self.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi, Round::Up).0,
        }
    }

    pub fn abs(&self) -> Ball {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self.clone()
        } else {
            Ball {
                lo: Float::with_val(self.precision(), 0),
                hi: self.mag(),
            }
        }
    }

    pub fn max(&self, other: &Ball) -> Ball {
        let p = self.precision().max(other.precision());
        let pick = |a: &Float, b: &Float| Float::with_val(p, if a > b { a } else { b });
        Ball {
            lo: pick(&self.lo, &other.lo),
            hi: pick(&self.hi, &other.hi),
        }
    }

    pub fn min(&self, other: &Ball) -> Ball {
        -((-self.clone()).max(&(-other.clone())))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Ball) -> Ball {
        let p = self.precision().max(other.precision());
        Ball {
            lo: Float::with_val(
                p,
                if self.lo < other.lo {
                    &self.lo
                } else {
                    &other.lo
                },
            ),
            hi: Float::with_val(
                p,
                if self.hi > other.hi {
                    &self.hi
                } else {
                    &other.hi
                },
            ),
        }
    }

    /// Widens the upper endpoint by a nonnegative amount.
    pub fn add_upper_slack(&self, slack: &Ball) -> Ball {
        let p = self.precision();
        Ball {
            lo: self.lo.clone(),
            hi: Float::with_val_round(p, &self.hi + &slack.hi, Round::Up).0,
        }
    }

    fn monotone(&self, f: impl Fn(&Float, Round) -> Float) -> Ball {
        Ball {
            lo: f(&self.lo, Round::Down),
            hi: f(&self.hi, Round::Up),
        }
    }

    pub fn exp(&self) -> Ball {
        self.monotone(|x, r| {
            let mut y = x.clone();
            y.exp_round(r);
            y
        })
    }

    /// Natural logarithm; the lower endpoint is clamped to zero first, so the
    /// result is only meaningful for positive intervals.
    pub fn ln(&self) -> Ball {
        self.clamp_nonneg().monotone(|x, r| {
            let mut y = x.clone();
            y.ln_round(r);
            y
        })
    }

    pub fn sqrt(&self) -> Ball {
        self.root(2)
    }

    /// Principal `k`-th root of a nonnegative interval (negative parts are clamped away).
    pub fn root(&self, k: u32) -> Ball {
        assert!(k >= 1, "root of order zero");
        if k == 1 {
            return self.clamp_nonneg();
        }
        self.clamp_nonneg().monotone(|x, r| {
            let mut y = x.clone();
            y.root_round(k, r);
            y
        })
    }

    pub fn powi(&self, n: u32) -> Ball {
        if n == 0 {
            return Ball::from_i64(1, self.precision());
        }
        if self.lo >= 0 {
            let p = self.precision();
            return self.monotone(|x, r| Float::with_val_round(p, x.pow(n), r).0);
        }
        let mut acc = Ball::from_i64(1, self.precision());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        if n.is_multiple_of(2) {
            acc.clamp_nonneg()
        } else {
            acc
        }
    }

    /// `x^y` for a positive base interval and a real exponent interval.
    pub fn pow(&self, exponent: &Ball) -> Ball {
        (self.ln() * exponent.clone()).exp()
    }

    fn clamp_nonneg(&self) -> Ball {
        let p = self.precision();
        let zero = Float::with_val(p, 0);
        Ball {
            lo: if self.lo < 0 {
                zero.clone()
            } else {
                self.lo.clone()
            },
            hi: if self.hi < 0 { zero } else { self.hi.clone() },
        }
    }

    /// `n!` as a ball.
    pub fn factorial(n: u32, prec: u32) -> Ball {
        let f = Integer::from(Integer::factorial(n));
        Ball {
            lo: Float::with_val_round(prec, &f, Round::Down).0,
            hi: Float::with_val_round(prec, &f, Round::Up).0,
        }
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_string(&self, digits: usize) -> String {
        self.mid().to_string_radix(10, Some(digits))
    }

    pub fn radius_string(&self) -> String {
        let r = self.radius();
        if r.is_zero() {
            "0".to_string()
        } else {
            Float::with_val_round(64, &r, Round::Up)
                .0
                .to_string_radix(10, Some(6))
        }
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ± {}]", self.mid_string(20), self.radius_string())
    }
}

/// Serialised as decimal midpoint and radius strings.
impl Serialize for Ball {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let digits = (self.precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        let mut st = serializer.serialize_struct("Ball", 2)?;
        st.serialize_field("mid", &self.mid_string(digits.max(17)))?;
        st.serialize_field("radius", &self.radius_string())?;
        st.end()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid_string(30), self.radius_string())
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, rhs: Ball) -> Ball {
        let p = self.precision().max(rhs.precision());
        Ball {
            lo: Float::with_val_round(p, &self.lo + &rhs.lo, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &rhs.hi, Round::Up).0,
        }
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, rhs: Ball) -> Ball {
        self + (-rhs)
    }
}

fn min_max(prods: impl Fn(Round) -> [Float; 4]) -> Ball {
    let lows = prods(Round::Down);
    let highs = prods(Round::Up);
    let lo = lows
        .into_iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .unwrap();
    let hi = highs
        .into_iter()
        .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
        .unwrap();
    Ball { lo, hi }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, rhs: Ball) -> Ball {
        let p = self.precision().max(rhs.precision());
        if self.lo >= 0 && rhs.lo >= 0 {
            return Ball {
                lo: Float::with_val_round(p, &self.lo * &rhs.lo, Round::Down).0,
                hi: Float::with_val_round(p, &self.hi * &rhs.hi, Round::Up).0,
            };
        }
        // 0 · ∞ never occurs for finite operands; infinite balls stay infinite.
        min_max(|r| {
            [
                Float::with_val_round(p, &self.lo * &rhs.lo, r).0,
                Float::with_val_round(p, &self.lo * &rhs.hi, r).0,
                Float::with_val_round(p, &self.hi * &rhs.lo, r).0,
                Float::with_val_round(p, &self.hi * &rhs.hi, r).0,
            ]
        })
    }
}

impl Div for Ball {
    type Output = Ball;
    fn div(self, rhs: Ball) -> Ball {
        let p = self.precision().max(rhs.precision());
        if rhs.lo <= 0 && rhs.hi >= 0 {
            return Ball::entire(p);
        }
        min_max(|r| {
            [
                Float::with_val_round(p, &self.lo / &rhs.lo, r).0,
                Float::with_val_round(p, &self.lo / &rhs.hi, r).0,
                Float::with_val_round(p, &self.hi / &rhs.lo, r).0,
                Float::with_val_round(p, &self.hi / &rhs.hi, r).0,
            ]
        })
    }
}

impl Zero for Ball {
    fn zero() -> Ball {
        Ball::exact_zero(FLOOR_PRECISION)
    }

    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
}

impl One for Ball {
    fn one() -> Ball {
        Ball::from_i64(1, FLOOR_PRECISION)
    }
}

impl Scalar for Ball {
    fn scale(&self, q: &Rational) -> Ball {
        if q.is_zero() || self.is_exact_zero() {
            return Ball::exact_zero(self.precision());
        }
        let p = self.precision();
        let r = to_rug_rational(q);
        let a = Float::with_val_round(p, &self.lo * &r, Round::Down).0;
        let b = Float::with_val_round(p, &self.hi * &r, Round::Up).0;
        if r.cmp0() == Ordering::Less {
            let a2 = Float::with_val_round(p, &self.hi * &r, Round::Down).0;
            let b2 = Float::with_val_round(p, &self.lo * &r, Round::Up).0;
            Ball { lo: a2, hi: b2 }
        } else {
            Ball { lo: a, hi: b }
        }
    }
}
