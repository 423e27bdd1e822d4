//! BCH through the free associative algebra: expand `log(e^X e^Y)` as
//! noncommutative polynomials, then map each degree-`n` word to `1/n` times
//! its left-normed bracket (Dynkin–Specht–Wever).

use std::collections::BTreeMap;

use nilgeom::{LieAlgebra, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Words over `{0 = X, 1 = Y}`.
pub type Poly = BTreeMap<Vec<u8>, Rational>;

fn add_into(p: &mut Poly, w: Vec<u8>, c: Rational) {
    let e = p.entry(w).or_insert_with(Rational::zero);
    *e += c;
}

fn mul(a: &Poly, b: &Poly, k: usize) -> Poly {
    let mut out = Poly::new();
    for (u, c) in a {
        for (v, d) in b {
            if u.len() + v.len() > k {
                continue;
            }
            let mut w = u.clone();
            w.extend(v);
            add_into(&mut out, w, c * d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn exp_letter(letter: u8, k: usize) -> Poly {
    let mut out = Poly::new();
    let mut fact = Rational::one();
    for n in 0..=k {
        if n > 0 {
            fact *= Rational::from_integer(BigInt::from(n));
        }
        out.insert(vec![letter; n], Rational::one() / &fact);
    }
    out
}

/// Homogeneous components of `log(e^X e^Y)` up to degree `k`.
pub fn bch_series(k: usize) -> Poly {
    let mut u = mul(&exp_letter(0, k), &exp_letter(1, k), k);
    u.remove(&Vec::new());
    let mut out = Poly::new();
    let mut power = u.clone();
    for n in 1..=k {
        let sign = if n % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let scale = sign / Rational::from_integer(BigInt::from(n));
        for (w, c) in &power {
            add_into(&mut out, w.clone(), c * &scale);
        }
        power = mul(&power, &u, k);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `log(exp x exp y)` in `alg`, truncated at degree `class`.
pub fn bch(
    alg: &LieAlgebra<Rational>,
    x: &[Rational],
    y: &[Rational],
    class: usize,
) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); alg.dim()];
    for (w, c) in bch_series(class) {
        let pick = |l: u8| if l == 0 { x.to_vec() } else { y.to_vec() };
        let mut acc = pick(w[0]);
        for &l in &w[1..] {
            acc = alg.bracket(&acc, &pick(l));
        }
        let scale = c / Rational::from_integer(BigInt::from(w.len()));
        for (o, a) in out.iter_mut().zip(acc) {
            *o += a * &scale;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn low_degree_terms() {
        let s = bch_series(3);
        assert_eq!(s[&vec![0]], q(1, 1));
        assert_eq!(s[&vec![0, 1]], q(1, 2));
        assert_eq!(s[&vec![1, 0]], q(-1, 2));
        // 1/12 [X,[X,Y]] expands to X X Y / 12 − X Y X / 6 + Y X X / 12
        assert_eq!(s[&vec![0, 0, 1]], q(1, 12));
        assert_eq!(s[&vec![0, 1, 0]], q(-1, 6));
    }
}
