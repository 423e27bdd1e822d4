//! Closed forms checked against the general machinery.

use nilgeom::Rational;
use num_bigint::BigInt;
use num_traits::{One, Pow};

/// `n! (r / (n w))^{n w}` for rational `r`, exactly.
pub fn power_norm(w: u32, n: u32, r: &Rational) -> Rational {
    let mut fact = Rational::one();
    for k in 2..=n {
        fact *= Rational::from_integer(BigInt::from(k));
    }
    let nw = n * w;
    fact * Pow::pow(r / Rational::from_integer(BigInt::from(nw)), nw)
}

/// `lim_n ‖e_i^n‖_r^{1/n} n^{w-1} = (r/w)^w / e`, from Stirling's
/// `(n!)^{1/n} ~ n/e`.
pub fn decay_limit(w: u32, r: f64) -> f64 {
    (r / w as f64).powi(w as i32) / std::f64::consts::E
}
