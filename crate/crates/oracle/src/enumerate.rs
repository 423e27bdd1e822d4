//! Brute-force enumeration of multi-indices by weight.

use nilgeom::Rational;
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

/// `count[w] = #{α : w(α) = w}` for `w ≤ w_max`, by visiting every `α`.
pub fn weight_counts(weights: &[u32], w_max: u32) -> Vec<u64> {
    fn go(weights: &[u32], budget: u32, used: u32, count: &mut [u64]) {
        match weights.split_first() {
            None => count[used as usize] += 1,
            Some((&w, rest)) => {
                let mut u = used;
                while u <= budget {
                    go(rest, budget, u, count);
                    u += w;
                }
            }
        }
    }
    let mut count = vec![0; w_max as usize + 1];
    go(weights, w_max, 0, &mut count);
    count
}

/// `Σ_{w(α) ≤ w_max} (σ / w(α))^{w(α)}`, exactly, with `0^0 = 1`.
pub fn phi_truncated(weights: &[u32], sigma: &Rational, w_max: u32) -> Rational {
    weight_counts(weights, w_max)
        .into_iter()
        .enumerate()
        .map(|(w, n)| {
            let term = if w == 0 {
                Rational::one()
            } else {
                Pow::pow(sigma / Rational::from_integer(BigInt::from(w)), w as u32)
            };
            term * Rational::from_integer(BigInt::from(n))
        })
        .fold(Rational::zero(), |a, b| a + b)
}
