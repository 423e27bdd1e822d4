//! PBW normal forms by literal rewriting in the free algebra: repeatedly
//! replace the leftmost descent `e_a e_b` (`a > b`) by `e_b e_a + [e_a, e_b]`.

use std::collections::BTreeMap;

use nilgeom::{LieAlgebra, Rational};
use num_traits::Zero;

/// `Σ c_α e^α` keyed by exponent vectors.
pub type Element = BTreeMap<Vec<u32>, Rational>;

fn word_of(alpha: &[u32]) -> Vec<usize> {
    alpha
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize))
        .collect()
}

/// Normal form of a product of basis words.
pub fn normal_form(alg: &LieAlgebra<Rational>, words: BTreeMap<Vec<usize>, Rational>) -> Element {
    let m = alg.dim();
    let mut pending = words;
    let mut out = Element::new();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]) else {
            let mut alpha = vec![0; m];
            for &i in &w {
                alpha[i] += 1;
            }
            *out.entry(alpha).or_insert_with(Rational::zero) += c;
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        *pending.entry(swapped).or_insert_with(Rational::zero) += &c;
        for (k, d) in alg.structure(w[p], w[p + 1]) {
            let mut v = w[..p].to_vec();
            v.push(*k);
            v.extend(&w[p + 2..]);
            *pending.entry(v).or_insert_with(Rational::zero) += &c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn product(alg: &LieAlgebra<Rational>, x: &Element, y: &Element) -> Element {
    let mut words = BTreeMap::new();
    for (a, c) in x {
        for (b, d) in y {
            let mut w = word_of(a);
            w.extend(word_of(b));
            *words.entry(w).or_insert_with(Rational::zero) += c * d;
        }
    }
    normal_form(alg, words)
}
