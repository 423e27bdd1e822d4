//! Layer-scaled norms on `g` with small bracket constants, and the ball
//! bound `‖V_j‖ ≤ n^j` for products of `n` unit generators of `v_1`.
//!
//! The norms are `‖Σ_s V_s‖ = Σ_s λ_s ‖V_s‖_s`, where `‖·‖_s` is the ℓ¹ norm
//! of the F-basis coordinates of weight `s`. Any such norm satisfies
//! `‖V_s‖ ≤ ‖V‖`. For the bracket bound, a nested bracket of basis vectors
//! of total weight `W` lands in `g_W`, so with `λ_s = ε^{s-1}` its norm
//! carries a factor `ε^{p-1}` over the product of the factor norms; by
//! multilinearity and ℓ¹ it suffices to check basis tuples.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bch::Group;
use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::sampling::{rational, stream};
use crate::scalar::{rational_text, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormSpec {
    weights: Vec<u32>,
    /// `λ_s` for `s = 1..=k`.
    scales: Vec<Rational>,
    /// Largest `‖[e_{i_1}, […]]‖ / Π ‖e_{i_s}‖` over basis tuples of length ≥ 2.
    pub achieved: Rational,
    pub target: Option<Rational>,
    pub epsilon: Rational,
}

impl NormSpec {
    /// `λ_s = ε^{s-1}`.
    pub fn geometric(weights: &[u32], epsilon: &Rational) -> Self {
        let k = weights.iter().copied().max().unwrap_or(1);
        let mut scales = Vec::with_capacity(k as usize);
        let mut lam = Rational::one();
        for _ in 0..k {
            scales.push(lam.clone());
            lam *= epsilon;
        }
        NormSpec {
            weights: weights.to_vec(),
            scales,
            achieved: Rational::zero(),
            target: None,
            epsilon: epsilon.clone(),
        }
    }

    pub fn scales(&self) -> &[Rational] {
        &self.scales
    }

    pub fn scale(&self, layer: u32) -> &Rational {
        &self.scales[layer as usize - 1]
    }

    pub fn norm(&self, v: &[Rational]) -> Rational {
        v.iter()
            .zip(&self.weights)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &w)| c.abs() * self.scale(w))
            .sum()
    }

    /// `‖V_j‖` for the weight-`j` component of `v`.
    pub fn layer_norm(&self, v: &[Rational], j: u32) -> Rational {
        v.iter()
            .zip(&self.weights)
            .filter(|(c, &w)| w == j && !c.is_zero())
            .map(|(c, _)| c.abs())
            .sum::<Rational>()
            * self.scale(j)
    }

    /// `‖[e_{i_1}, […]]‖ / Π ‖e_{i_s}‖` maximised over all basis tuples of
    /// length `2..=k`.
    pub fn bracket_constant(&self, brackets: &[BasisBracket]) -> Rational {
        brackets
            .iter()
            .map(|b| {
                let denom: Rational = b.factors.iter().map(|&w| self.scale(w).clone()).product();
                self.norm(&b.value) / denom
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// A nonzero nested bracket of basis vectors.
#[derive(Clone, Debug)]
pub struct BasisBracket {
    pub tuple: Vec<usize>,
    /// Weights of the factors.
    pub factors: Vec<u32>,
    pub value: Vec<Rational>,
}

/// Every nonzero `[e_{i_1}, [e_{i_2}, …, e_{i_p}]]` with `2 ≤ p ≤ k`. Tuples of
/// total weight above `k` vanish and are skipped.
pub fn basis_brackets(group: &Group<Rational>) -> Vec<BasisBracket> {
    let w = group.weights();
    let m = group.dim();
    let k = group.class() as u32;
    let alg = group.algebra();
    let mut out = Vec::new();
    // (suffix tuple, its weight, its value), grown leftwards
    let mut frontier: Vec<(Vec<usize>, u32, Vec<Rational>)> = (0..m)
        .map(|i| (vec![i], w[i], alg.basis_vector(i)))
        .collect();
    for _p in 2..=k {
        let mut next = Vec::new();
        for (tuple, weight, value) in &frontier {
            for i in 0..m {
                if weight + w[i] > k {
                    continue;
                }
                let v = alg.ad_basis(i, value);
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut t = vec![i];
                t.extend(tuple);
                next.push((t, weight + w[i], v));
            }
        }
        for (t, _, v) in &next {
            out.push(BasisBracket {
                factors: t.iter().map(|&i| w[i]).collect(),
                tuple: t.clone(),
                value: v.clone(),
            });
        }
        frontier = next;
    }
    out
}

/// `(Σ_U |γ_U|)^{-1}`, where `γ_U` are the coefficients of
/// `V_0 ∗ (V_1 + ⋯ + V_k) = V_0 + Σ_j V_j + Σ_U γ_U V_U` inherited from the
/// BCH series: each two-letter word `W` with coefficient `c(W)` contributes
/// `k^{#Y(W)}` words `U`, all with `|γ_U| = |c(W)|`. `None` for class one,
/// where the sum is empty.
pub fn corcbh_constant(group: &Group<Rational>) -> Option<Rational> {
    let k = group.class() as u64;
    let total: Rational = group
        .table()
        .terms()
        .iter()
        .filter(|(w, _)| w.len() >= 2)
        .map(|(w, c)| {
            let ys = (w.len() - w.count_x()) as u32;
            c.abs() * Rational::from_integer(num_traits::Pow::pow(BigInt::from(k), ys))
        })
        .sum();
    (!total.is_zero()).then(|| Rational::one() / total)
}

/// Searches `ε = 2^{-n}`, `n = 0..max_steps`, for a geometric layer norm
/// whose bracket constant is at most `target`.
pub fn adapted_norm(
    group: &Group<Rational>,
    target: Option<&Rational>,
    max_steps: usize,
) -> Result<NormSpec> {
    let brackets = basis_brackets(group);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut eps = Rational::one();
    let mut best: Option<Rational> = None;
    for _ in 0..=max_steps {
        let mut spec = NormSpec::geometric(group.weights(), &eps);
        let c = spec.bracket_constant(&brackets);
        let ok = match target {
            None => true,
            Some(t) => c <= *t,
        };
        if ok {
            spec.achieved = c;
            spec.target = target.cloned();
            return Ok(spec);
        }
        best = Some(best.map_or(c.clone(), |b: Rational| b.min(c)));
        eps *= &half;
    }
    Err(Error::SearchExhausted {
        steps: max_steps,
        best: best.map(|b| rational_text(&b)).unwrap_or_default(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallViolation {
    pub word: u64,
    /// Number of letters multiplied so far.
    pub n: usize,
    pub layer: u32,
    pub norm: String,
}

/// A random element of `v_1` with `‖X‖ ≤ 1`; every other draw sits on the
/// unit sphere.
fn unit_letter<R: rand::Rng>(rng: &mut R, spec: &NormSpec, weights: &[u32]) -> Vec<Rational> {
    let mut x: Vec<Rational> = weights
        .iter()
        .map(|&w| {
            if w == 1 {
                rational(rng, 8, 8)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let n = spec.norm(&x);
    if n.is_zero() {
        return x;
    }
    let normalize = rng.random_bool(0.5) || n > Rational::one();
    if normalize {
        for c in x.iter_mut() {
            *c = &*c / &n;
        }
    }
    x
}

/// For `n_words` random words of lengths `1..=max_len` over unit elements of
/// `v_1`, multiplies from the right and checks `‖V_j‖ ≤ n^j` exactly after
/// every letter.
pub fn ball_bound_check(
    group: &Group<Rational>,
    spec: &NormSpec,
    n_words: u64,
    max_len: usize,
    seed: u64,
) -> ValidationReport<BallViolation> {
    let weights = group.weights().to_vec();
    let k = group.class() as u32;
    let per_word: Vec<ValidationReport<BallViolation>> = (0..n_words)
        .into_par_iter()
        .map(|word| {
            let mut rng = stream(seed, word);
            let len = rand::Rng::random_range(&mut rng, 1..=max_len.max(1));
            let letters: Vec<Vec<Rational>> = (0..len)
                .map(|_| unit_letter(&mut rng, spec, &weights))
                .collect();
            let mut report = ValidationReport::new();
            let mut acc = vec![Rational::zero(); weights.len()];
            for (step, x) in letters.iter().rev().enumerate() {
                acc = group.bch(x, &acc);
                let n = step + 1;
                let mut power = Rational::one();
                for j in 1..=k {
                    power *= Rational::from_integer(BigInt::from(n));
                    let v = spec.layer_norm(&acc, j);
                    report.record((v > power).then(|| BallViolation {
                        word,
                        n,
                        layer: j,
                        norm: rational_text(&v),
                    }));
                }
            }
            report
        })
        .collect();
    let mut total = ValidationReport::new();
    for r in per_word {
        total.merge(r);
    }
    total
}

/// Layer components `V_j` of `v` keyed by layer, for reporting.
pub fn layer_norms(spec: &NormSpec, v: &[Rational], class: u32) -> HashMap<u32, Rational> {
    (1..=class).map(|j| (j, spec.layer_norm(v, j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::filtration::AdaptedAlgebra;
    use crate::scalar::{q, qi};

    fn group(name: &str) -> Group<Rational> {
        let alg = bundled::by_name(name).unwrap();
        Group::from_adapted(&AdaptedAlgebra::from_lower_central_series(&alg).unwrap())
    }

    #[test]
    fn heisenberg_constant() {
        let g = group("heisenberg3");
        // ¼[X, Y] − ¼[Y, X]: two words, each with one Y and k = 2 layers.
        assert_eq!(corcbh_constant(&g), Some(qi(1)));
        let spec = adapted_norm(&g, Some(&q(1, 3)), 20).unwrap();
        assert_eq!(spec.achieved, q(1, 4));
        assert_eq!(basis_brackets(&g).len(), 2);
        assert_eq!(spec.layer_norm(&[qi(1), qi(-2), qi(3)], 1), qi(3));
    }

    #[test]
    fn abelian_needs_no_search() {
        let g = group("abelian");
        assert_eq!(corcbh_constant(&g), None);
        let spec = adapted_norm(&g, None, 0).unwrap();
        assert_eq!(spec.achieved, qi(0));
    }

    #[test]
    fn favre_search_and_exhaustion() {
        let g = group("favre7");
        let c = corcbh_constant(&g).unwrap();
        let spec = adapted_norm(&g, Some(&c), 64).unwrap();
        assert!(spec.achieved <= c);
        assert!(matches!(
            adapted_norm(&g, Some(&c), 0),
            Err(Error::SearchExhausted { .. })
        ));
    }

    #[test]
    fn ball_bound_small_run() {
        for name in ["abelian", "heisenberg3", "favre7"] {
            let g = group(name);
            let c = corcbh_constant(&g);
            let spec = adapted_norm(&g, c.as_ref(), 64).unwrap();
            let rep = ball_bound_check(&g, &spec, 20, 12, 3);
            assert!(rep.is_ok(), "{name}: {:?}", rep.violations.first());
            assert!(rep.checked > 0);
        }
    }
}
