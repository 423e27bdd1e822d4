//! Fitted domination bounds `y ≤ C x + D` between length-like functions,
//! validated on fresh samples.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::Ball;
use crate::bch::{Group, GroupElement};
use crate::error::{Error, Result};
use crate::geometry::sigma_of;
use crate::sampling::Sampler;
use crate::scalar::{rational_text, Rational, Scalar};

/// Relative safety margin added to fitted constants before validation.
pub const DEFAULT_MARGIN: f64 = 0.1;

/// Decimal grid the fitted constants are rounded up to.
const GRID: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub comparison: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    pub train_n: usize,
    pub test_n: usize,
    pub violations: usize,
    pub seed: u64,
}

impl EquivalenceReport {
    pub fn accepted(&self) -> bool {
        self.violations == 0
    }
}

/// A certified `(x, y)` observation.
#[derive(Clone, Debug)]
pub struct Observation {
    pub x: Ball,
    pub y: Ball,
}

/// Fits `(C, D)` with `y ≤ C x + D` on every point. The slope is the
/// largest ratio `y / x` over the far half of the points (`x` at or above
/// the median), so bounded samples cannot collapse it to zero; `D` is the
/// smallest offset covering all points. Both are then inflated by `margin`.
pub fn fit_envelope(points: &[(f64, f64)], margin: f64) -> (f64, f64) {
    if points.is_empty() {
        return (0.0, 0.0);
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    let median = xs[xs.len() / 2];
    let c0 = points
        .iter()
        .filter(|p| p.0 >= median && p.0 > 0.0)
        .map(|p| p.1 / p.0)
        .fold(0.0, f64::max);
    let d0 = points
        .iter()
        .map(|p| p.1 - c0 * p.0)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(0.0);
    (c0 * (1.0 + margin), d0 + margin * (1.0 + d0.abs()))
}

/// Rounds a nonnegative float up to the decimal grid, as an exact rational.
pub fn round_up(x: f64) -> Rational {
    let scaled = (x * GRID as f64).ceil();
    let n = BigInt::from_f64(scaled).unwrap_or_else(BigInt::zero);
    Rational::new(n, BigInt::from(GRID))
}

/// Whether `y ≤ C x + D` holds certainly for the observation.
pub fn dominated(obs: &Observation, c: &Rational, d: &Rational) -> bool {
    let prec = obs.x.precision().max(obs.y.precision());
    let bound = obs.x.scale(c) + Ball::from_rational(d, prec);
    obs.y.certainly_le(&bound)
}

/// Fits on `train`, counts uncertified points of `test`.
pub fn fit_and_validate(
    comparison: &str,
    train: &[Observation],
    test: &[Observation],
    seed: u64,
    margin: f64,
) -> EquivalenceReport {
    let pts: Vec<(f64, f64)> = train.iter().map(|o| (o.x.hi_f64(), o.y.hi_f64())).collect();
    let (c, d) = fit_envelope(&pts, margin);
    let (c, d) = (round_up(c), round_up(d));
    let violations = test.iter().filter(|o| !dominated(o, &c, &d)).count();
    EquivalenceReport {
        comparison: comparison.to_string(),
        c: rational_text(&c),
        d: rational_text(&d),
        train_n: train.len(),
        test_n: test.len(),
        violations,
        seed,
    }
}

/// `(max{σ(g_1), σ(g_2)}, σ(g_1 g_2))` for a pair of group elements.
pub fn product_observation(
    group: &Group<Rational>,
    g1: &[Rational],
    g2: &[Rational],
    prec: u32,
) -> Result<Observation> {
    let w = group.weights();
    let s1 = sigma_of(g1, w, prec)?;
    let s2 = sigma_of(g2, w, prec)?;
    let prod = group.mul(
        &GroupElement::new(g1.to_vec()),
        &GroupElement::new(g2.to_vec()),
    )?;
    Ok(Observation {
        x: s1.max(&s2),
        y: sigma_of(&prod.coords, w, prec)?,
    })
}

fn observations(
    group: &Group<Rational>,
    sampler: &Sampler,
    range: std::ops::Range<u64>,
    prec: u32,
) -> Result<Vec<Observation>> {
    range
        .into_par_iter()
        .map(|k| {
            product_observation(
                group,
                &sampler.sample(2 * k),
                &sampler.sample(2 * k + 1),
                prec,
            )
        })
        .collect()
}

/// Fits `σ(g_1 g_2) ≤ C max{σ(g_1), σ(g_2)} + D` on `n_train` sampled pairs
/// and validates on `n_test` fresh ones.
pub fn subpoly_estimate(
    group: &Group<Rational>,
    n_train: usize,
    n_test: usize,
    sampler: &Sampler,
    prec: u32,
) -> Result<EquivalenceReport> {
    if n_train == 0 {
        return Err(Error::InvalidArgument(
            "need at least one training pair".into(),
        ));
    }
    let train = observations(group, sampler, 0..n_train as u64, prec)?;
    let test = observations(
        group,
        sampler,
        n_train as u64..(n_train + n_test) as u64,
        prec,
    )?;
    Ok(fit_and_validate(
        "sigma(g1*g2) vs max sigma",
        &train,
        &test,
        sampler.seed(),
        DEFAULT_MARGIN,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::filtration::AdaptedAlgebra;
    use crate::scalar::qi;

    fn group(name: &str) -> Group<Rational> {
        let alg = bundled::by_name(name).unwrap();
        Group::from_adapted(&AdaptedAlgebra::from_lower_central_series(&alg).unwrap())
    }

    #[test]
    fn envelope_covers_training_points() {
        let pts = vec![(1.0, 2.5), (2.0, 3.0), (10.0, 14.0), (5.0, 5.0), (0.0, 0.4)];
        let (c, d) = fit_envelope(&pts, 0.0);
        assert!(pts.iter().all(|p| p.1 <= c * p.0 + d + 1e-12));
        assert!(c > 0.0);
    }

    #[test]
    fn inverse_pairs_give_zero() {
        let g = group("heisenberg3");
        let x = vec![qi(3), qi(-2), qi(5)];
        let inv: Vec<Rational> = x.iter().map(|t| -t.clone()).collect();
        let obs = product_observation(&g, &x, &inv, 128).unwrap();
        assert!(obs.y.is_exact_zero());
    }

    #[test]
    fn abelian_bound_two_zero() {
        let g = group("abelian");
        let s = Sampler::new(g.weights(), 100, 11);
        let test = observations(&g, &s, 0..300, 128).unwrap();
        assert!(test.iter().all(|o| dominated(o, &qi(2), &qi(0))));
    }

    #[test]
    fn heisenberg_fit_validates() {
        let g = group("heisenberg3");
        let s = Sampler::new(g.weights(), 100, 5);
        let rep = subpoly_estimate(&g, 500, 500, &s, 128).unwrap();
        assert!(rep.accepted(), "{rep:?}");
        assert_eq!(rep.seed, 5);
        let json = serde_json::to_value(&rep).unwrap();
        assert!(json.get("C").is_some() && json.get("D").is_some());
    }
}
