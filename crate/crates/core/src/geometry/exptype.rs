//! Weighted sup norms `|f|_η = sup_t |f(t)| e^{-r σ(t)}` of polynomials in
//! the first-kind coordinates, bracketed from both sides.
//!
//! Upper: a monomial `c t^d` has `|c t^d| ≤ |c| σ^D` with `D = Σ d_i w_i`,
//! and `sup_σ σ^D e^{-rσ} = (D/(re))^D`; summing over terms bounds `|f|_η`.
//! Lower: a float search over dilation rays picks a point, at which the
//! weighted value is evaluated with certified intervals at a rational point.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::geometry::sigma_of;
use crate::pbw::UElement;
use crate::sampling::stream;
use crate::scalar::Rational;

/// `Σ c_d t^d` over coordinate exponents `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordPolynomial {
    dim: usize,
    terms: Vec<(Vec<u32>, Rational)>,
}

impl CoordPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, Rational)>) -> Result<Self> {
        if let Some((d, _)) = terms.iter().find(|(d, _)| d.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: d.len(),
            });
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(CoordPolynomial { dim, terms })
    }

    /// The coordinate function `t_i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut d = vec![0; dim];
        d[i] = 1;
        CoordPolynomial {
            dim,
            terms: vec![(d, Rational::one())],
        }
    }

    /// Same format as enveloping-algebra elements:
    /// `{"terms":[{"alpha":[…],"c":"p/q"}]}`.
    pub fn from_json(dim: usize, text: &str) -> Result<Self> {
        let u = UElement::<Rational>::from_json(dim, text)?;
        let terms = u
            .terms()
            .iter()
            .map(|(a, c)| (a.0.clone(), c.clone()))
            .collect();
        CoordPolynomial::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<u32>, Rational)] {
        &self.terms
    }

    pub fn eval(&self, t: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(d, c)| {
                let mut v = c.clone();
                for (x, &p) in t.iter().zip(d) {
                    for _ in 0..p {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    fn eval_f64(&self, t: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(d, c)| {
                let mut v = c.to_f64().unwrap_or(0.0);
                for (x, &p) in t.iter().zip(d) {
                    v *= x.powi(p as i32);
                }
                v
            })
            .sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpTypeBracket {
    pub lower: Ball,
    pub upper: Ball,
    /// Rational point attaining the lower bound.
    #[serde(skip)]
    pub witness: Vec<Rational>,
}

impl ExpTypeBracket {
    pub fn consistent(&self) -> bool {
        self.lower.lo() <= self.upper.hi()
    }

    /// `upper / lower` from the float enclosures; infinite if `lower` is 0.
    pub fn ratio(&self) -> f64 {
        self.upper.hi_f64() / self.lower.lo_f64()
    }
}

/// Certified `|f(t)| e^{-r σ(t)}` at a rational point.
pub fn weighted_value(
    f: &CoordPolynomial,
    t: &[Rational],
    weights: &[u32],
    r: &Rational,
    prec: u32,
) -> Result<Ball> {
    let v = Ball::from_rational(&f.eval(t).abs(), prec);
    let sigma = sigma_of(t, weights, prec)?;
    Ok(v * (-(Ball::from_rational(r, prec) * sigma)).exp())
}

/// `Σ |c| (D/(re))^D` with `0^0 = 1`.
pub fn upper_bound(f: &CoordPolynomial, weights: &[u32], r: &Rational, prec: u32) -> Ball {
    let re = Ball::from_rational(r, prec) * Ball::e(prec);
    f.terms.iter().fold(Ball::exact_zero(prec), |acc, (d, c)| {
        let deg: u32 = d.iter().zip(weights).map(|(p, w)| p * w).sum();
        let term = if deg == 0 {
            Ball::one().with_precision(prec)
        } else {
            (Ball::from_i64(deg as i64, prec) / re.clone()).powi(deg)
        };
        acc + term * Ball::from_rational(&c.abs(), prec)
    })
}

fn weighted_f64(f: &CoordPolynomial, u: &[f64], weights: &[u32], z: f64, r: f64) -> f64 {
    let t: Vec<f64> = u
        .iter()
        .zip(weights)
        .map(|(x, &w)| x * z.powi(w as i32))
        .collect();
    f.eval_f64(&t).abs() * (-r * z).exp()
}

/// Maximises `z ↦ |f(δ_z u)| e^{-rz}` on a ray through a point with `σ(u) = 1`,
/// by a coarse scan followed by golden-section refinement.
fn ray_max(f: &CoordPolynomial, u: &[f64], weights: &[u32], r: f64) -> (f64, f64) {
    let top: f64 = f
        .terms
        .iter()
        .map(|(d, _)| d.iter().zip(weights).map(|(p, w)| p * w).sum::<u32>())
        .max()
        .unwrap_or(0) as f64;
    let zmax = 4.0 * (top + 1.0) / r;
    let steps = 200;
    let mut best = (0.0, weighted_f64(f, u, weights, 0.0, r));
    for s in 1..=steps {
        let z = zmax * s as f64 / steps as f64;
        let v = weighted_f64(f, u, weights, z, r);
        if v > best.1 {
            best = (z, v);
        }
    }
    let h = zmax / steps as f64;
    let (mut a, mut b) = ((best.0 - h).max(0.0), best.0 + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if weighted_f64(f, u, weights, c, r) >= weighted_f64(f, u, weights, d, r) {
            b = d;
        } else {
            a = c;
        }
    }
    let z = (a + b) / 2.0;
    let v = weighted_f64(f, u, weights, z, r);
    if v > best.1 {
        (z, v)
    } else {
        best
    }
}

fn to_rational(x: f64) -> Rational {
    const DEN: i64 = 1 << 40;
    let n = BigInt::from_f64((x * DEN as f64).round()).unwrap_or_else(BigInt::zero);
    Rational::new(n, BigInt::from(DEN))
}

/// Brackets `|f|_η` for `η = e^{rσ}`. The lower bound searches axis rays,
/// box corners and `budget` random directions.
pub fn exp_type_norm(
    f: &CoordPolynomial,
    r: &Rational,
    weights: &[u32],
    budget: u64,
    seed: u64,
    prec: u32,
) -> Result<ExpTypeBracket> {
    let m = weights.len();
    if f.dim != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: f.dim,
        });
    }
    if !r.is_positive() {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let rf = r.to_f64().unwrap_or(f64::NAN);
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut u = vec![0.0; m];
            u[i] = s;
            dirs.push(u);
        }
    }
    if m <= 10 {
        for mask in 0..(1u32 << m) {
            dirs.push(
                (0..m)
                    .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                    .collect(),
            );
        }
    }
    for k in 0..budget {
        let mut rng = stream(seed, k);
        dirs.push(
            (0..m)
                .map(|_| rand::Rng::random_range(&mut rng, -1.0..=1.0))
                .collect(),
        );
    }
    let mut best = (Vec::new(), 0.0, f64::NEG_INFINITY);
    for u in dirs {
        let (z, v) = ray_max(f, &u, weights, rf);
        if v > best.2 {
            best = (u, z, v);
        }
    }
    let (u, z, _) = best;
    let witness: Vec<Rational> = u
        .iter()
        .zip(weights)
        .map(|(x, &w)| to_rational(x * z.powi(w as i32)))
        .collect();
    // the identity is always a candidate, certified exactly
    let at_point = weighted_value(f, &witness, weights, r, prec)?;
    let origin = vec![Rational::zero(); m];
    let at_origin = weighted_value(f, &origin, weights, r, prec)?;
    let (lower, witness) = if at_origin.lo() >= at_point.lo() {
        (at_origin, origin)
    } else {
        (at_point, witness)
    };
    Ok(ExpTypeBracket {
        lower,
        upper: upper_bound(f, weights, r, prec),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn constant_is_exact() {
        let f = CoordPolynomial::new(3, vec![(vec![0, 0, 0], qi(1))]).unwrap();
        let b = exp_type_norm(&f, &qi(1), &[1, 1, 2], 8, 0, 128).unwrap();
        assert!(b.lower.contains_rational(&qi(1)) && b.lower.radius_f64() == 0.0);
        assert!(b.upper.contains_rational(&qi(1)));
    }

    #[test]
    fn linear_coordinate_matches_calculus() {
        // sup u e^{-ru} = 1/(re)
        let f = CoordPolynomial::coordinate(3, 0);
        let r = q(3, 2);
        let b = exp_type_norm(&f, &r, &[1, 1, 2], 8, 0, 128).unwrap();
        let exact = 1.0 / (1.5 * std::f64::consts::E);
        assert!((b.upper.mid_f64() - exact).abs() < 1e-15);
        assert!((b.lower.mid_f64() - exact).abs() < 1e-9);
        assert!(b.consistent());
    }

    #[test]
    fn heisenberg_centre_at_r_two() {
        let f = CoordPolynomial::coordinate(3, 2);
        let b = exp_type_norm(&f, &qi(2), &[1, 1, 2], 16, 1, 128).unwrap();
        let exact = (-2f64).exp();
        assert!((b.upper.mid_f64() - exact).abs() < 1e-15);
        assert!(b.consistent() && b.ratio() < 1.0 + 1e-6);
    }

    #[test]
    fn polynomial_brackets_are_ordered() {
        let f = CoordPolynomial::from_json(
            3,
            r#"{"terms":[{"alpha":[1,1,0],"c":"1"},{"alpha":[0,0,1],"c":"-1/2"},{"alpha":[0,0,0],"c":"1/4"}]}"#,
        )
        .unwrap();
        let b = exp_type_norm(&f, &qi(1), &[1, 1, 2], 64, 3, 128).unwrap();
        assert!(b.consistent() && b.ratio() < 10.0, "{b:?}");
    }
}
