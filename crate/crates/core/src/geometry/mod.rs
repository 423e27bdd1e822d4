//! Homogeneous norms, dilations and word-length geometry of the group.
//!
//! `σ(g) = max_i |t_i|^{1/w_i}` on first-kind coordinates and `σ̄` the same
//! on second-kind coordinates. Everything else here compares these to each
//! other and to constructive word lengths.

pub mod exptype;
pub mod normtrick;
pub mod scheme;
pub mod subpoly;

use crate::ball::Ball;
use crate::bch::{Group, GroupElement};
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};

pub use exptype::{exp_type_norm, CoordPolynomial, ExpTypeBracket};
pub use normtrick::{adapted_norm, ball_bound_check, corcbh_constant, NormSpec};
pub use scheme::{word_factorize, CommutatorScheme, Factorization};
pub use subpoly::{subpoly_estimate, EquivalenceReport};

fn check_len(coords: usize, weights: &[u32]) -> Result<()> {
    if coords != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            got: coords,
        });
    }
    Ok(())
}

/// `max_i |t_i|^{1/w_i}`; the identity gives exactly zero.
pub fn sigma_of<S: ExactScalar>(coords: &[S], weights: &[u32], prec: u32) -> Result<Ball> {
    check_len(coords.len(), weights)?;
    let mut best = Ball::exact_zero(prec);
    for (t, &w) in coords.iter().zip(weights) {
        if t.is_zero() {
            continue;
        }
        best = best.max(&Ball::modulus(t, prec).root(w));
    }
    Ok(best)
}

/// [`sigma_of`] for interval coordinates.
pub fn sigma_of_balls(coords: &[Ball], weights: &[u32]) -> Result<Ball> {
    check_len(coords.len(), weights)?;
    let prec = coords.iter().map(Ball::precision).max().unwrap_or(64);
    let mut best = Ball::exact_zero(prec);
    for (t, &w) in coords.iter().zip(weights) {
        best = best.max(&t.abs().root(w));
    }
    Ok(best)
}

/// A quick floating-point `σ` for sampling and fitting; not certified.
pub fn sigma_f64(coords: &[Rational], weights: &[u32]) -> f64 {
    use num_traits::ToPrimitive;
    coords
        .iter()
        .zip(weights)
        .map(|(t, &w)| {
            t.to_f64()
                .unwrap_or(f64::INFINITY)
                .abs()
                .powf(1.0 / w as f64)
        })
        .fold(0.0, f64::max)
}

pub fn sigma<S: ExactScalar>(group: &Group<S>, g: &GroupElement<S>, prec: u32) -> Result<Ball> {
    sigma_of(&g.coords, group.weights(), prec)
}

/// `σ̄(g)`, through the second-kind coordinates of `g`.
pub fn sigma_bar<S: ExactScalar>(group: &Group<S>, g: &GroupElement<S>, prec: u32) -> Result<Ball> {
    let bar = group.first_to_second(g)?;
    sigma_of(&bar.coords, group.weights(), prec)
}

/// The grading automorphism `δ_z : e_i ↦ z^{w_i} e_i`. Because it is an
/// automorphism of `g`, it acts on first- and second-kind coordinates alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dilation<S> {
    pub z: S,
}

impl<S: ExactScalar> Dilation<S> {
    pub fn new(z: S) -> Self {
        Dilation { z }
    }

    pub fn apply(&self, coords: &[S], weights: &[u32]) -> Result<Vec<S>> {
        check_len(coords.len(), weights)?;
        Ok(coords
            .iter()
            .zip(weights)
            .map(|(t, &w)| {
                let mut zw = S::one();
                for _ in 0..w {
                    zw = zw * self.z.clone();
                }
                t.clone() * zw
            })
            .collect())
    }

    /// `δ_z ∘ δ_w = δ_{zw}`.
    pub fn compose(&self, other: &Dilation<S>) -> Dilation<S> {
        Dilation::new(self.z.clone() * other.z.clone())
    }
}

pub fn dilate<S: ExactScalar>(
    group: &Group<S>,
    g: &GroupElement<S>,
    z: &S,
) -> Result<GroupElement<S>> {
    Ok(GroupElement::new(
        Dilation::new(z.clone()).apply(&g.coords, group.weights())?,
    ))
}

/// `δ_z` for a real interval `z`.
pub fn dilate_balls(coords: &[Ball], weights: &[u32], z: &Ball) -> Result<Vec<Ball>> {
    check_len(coords.len(), weights)?;
    Ok(coords
        .iter()
        .zip(weights)
        .map(|(t, &w)| t.clone() * z.powi(w))
        .collect())
}
