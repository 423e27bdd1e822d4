//! The enveloping algebra `U(g)` on the PBW basis `e^α = e_1^{α_1} ⋯ e_m^{α_m}`.
//!
//! Products are brought to normal form with the commutation rule
//! `e_j e_i = e_i e_j + [e_j, e_i]`. The straightening is organised as
//! left multiplication of a normal monomial by one generator,
//!
//! ```text
//! e_j · e^β = e_i · (e_j · e^{β-ε_i}) + Σ_k c_{ji}^k e_k · e^{β-ε_i}
//! ```
//!
//! where `i` is the first occupied slot of `β` and `i < j`; results are
//! memoised per `(j, β)`. Indices must be those of an F-basis, so brackets
//! only ever move to later indices and the recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::filtration::{weight_of, MultiIndex};
use crate::scalar::{ExactScalar, Scalar};

/// A finitely supported element `Σ c_α e^α` of `U(g)`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UElement<S> {
    dim: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> UElement<S> {
    pub fn zero(dim: usize) -> Self {
        UElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(MultiIndex::zero(dim), S::one())
    }

    /// The generator `e_i` (zero-based).
    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i, 1), S::one())
    }

    pub fn monomial(alpha: MultiIndex, c: S) -> Self {
        let mut x = Self::zero(alpha.len());
        x.add_term(alpha, c);
        x
    }

    /// The image of `v ∈ g` under `g ⊂ U(g)`.
    pub fn from_vector(v: &[S]) -> Self {
        let mut x = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            x.add_term(MultiIndex::unit(v.len(), i, 1), c.clone());
        }
        x
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut x = Self::zero(dim);
        for (a, c) in terms {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            x.add_term(a, c);
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, S> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<&S> {
        self.terms.get(alpha)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &UElement<S>, c: &S) {
        for (a, d) in &other.terms {
            self.add_term(a.clone(), c.clone() * d.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Largest `w(α)` in the support, `None` for zero.
    pub fn max_weight(&self, weights: &[u32]) -> Option<u32> {
        self.terms
            .keys()
            .map(|a| weight_of(weights, a).expect("index length"))
            .max()
    }

    /// Smallest `w(α)` in the support, `None` for zero.
    pub fn min_weight(&self, weights: &[u32]) -> Option<u32> {
        self.terms
            .keys()
            .map(|a| weight_of(weights, a).expect("index length"))
            .min()
    }

    /// Largest total degree `|α|` in the support.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }
}

impl<S: Scalar> Add for &UElement<S> {
    type Output = UElement<S>;

    fn add(self, rhs: &UElement<S>) -> UElement<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &S::one());
        out
    }
}

impl<S: Scalar> Sub for &UElement<S> {
    type Output = UElement<S>;

    fn sub(self, rhs: &UElement<S>) -> UElement<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &-S::one());
        out
    }
}

impl<S: Scalar> Neg for &UElement<S> {
    type Output = UElement<S>;

    fn neg(self) -> UElement<S> {
        self.scale(&-S::one())
    }
}

#[derive(Serialize, Deserialize)]
struct UElementFile {
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    alpha: Vec<u32>,
    c: String,
}

impl<S: ExactScalar> UElement<S> {
    /// Parses `{"terms": [{"alpha": [..], "c": "p/q"}, …]}`.
    pub fn from_json(dim: usize, text: &str) -> Result<Self> {
        let file: UElementFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(file.terms.len());
        for t in file.terms {
            terms.push((MultiIndex(t.alpha), S::parse_str(&t.c)?));
        }
        Self::from_terms(dim, terms)
    }

    pub fn to_json(&self) -> String {
        let file = UElementFile {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| TermRecord {
                    alpha: a.0.clone(),
                    c: c.to_text(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("element serializes")
    }
}

/// Multiplication in `U(g)` with a straightening cache.
///
/// The cache only grows; keep one multiplier per algebra for a batch of
/// products and drop it afterwards.
pub struct PbwMultiplier<'a, S> {
    alg: &'a LieAlgebra<S>,
    memo: HashMap<(usize, MultiIndex), UElement<S>>,
}

impl<'a, S: Scalar> PbwMultiplier<'a, S> {
    pub fn new(alg: &'a LieAlgebra<S>) -> Self {
        PbwMultiplier {
            alg,
            memo: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        self.alg
    }

    /// `e_j · e^β` in normal form.
    pub fn left_mul_generator(&mut self, j: usize, beta: &MultiIndex) -> UElement<S> {
        let m = self.alg.dim();
        let first = beta.0.iter().position(|&a| a > 0);
        let i = match first {
            Some(i) if i < j => i,
            _ => {
                let mut a = beta.clone();
                a.0[j] += 1;
                return UElement::monomial(a, S::one());
            }
        };
        let key = (j, beta.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut rest = beta.clone();
        rest.0[i] -= 1;
        let mut out = UElement::zero(m);
        let inner = self.left_mul_generator(j, &rest);
        for (gamma, c) in &inner.terms {
            let moved = self.left_mul_generator(i, gamma);
            out.add_scaled(&moved, c);
        }
        let bracket: Vec<(usize, S)> = self.alg.structure(j, i).to_vec();
        for (k, c) in bracket {
            let moved = self.left_mul_generator(k, &rest);
            out.add_scaled(&moved, &c);
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// `e^α · e^β` in normal form.
    pub fn mul_monomials(&mut self, alpha: &MultiIndex, beta: &MultiIndex) -> UElement<S> {
        let mut acc = UElement::monomial(beta.clone(), S::one());
        for i in (0..alpha.len()).rev() {
            for _ in 0..alpha.0[i] {
                let mut next = UElement::zero(acc.dim);
                for (gamma, c) in &acc.terms {
                    let moved = self.left_mul_generator(i, gamma);
                    next.add_scaled(&moved, c);
                }
                acc = next;
            }
        }
        acc
    }

    pub fn mul(&mut self, x: &UElement<S>, y: &UElement<S>) -> Result<UElement<S>> {
        let m = self.alg.dim();
        if x.dim != m || y.dim != m {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = UElement::zero(m);
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let p = self.mul_monomials(a, b);
                out.add_scaled(&p, &(c.clone() * d.clone()));
            }
        }
        Ok(out)
    }

    pub fn pow(&mut self, x: &UElement<S>, n: u32) -> Result<UElement<S>> {
        let mut acc = UElement::one(self.alg.dim());
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `xy − yx`.
    pub fn commutator(&mut self, x: &UElement<S>, y: &UElement<S>) -> Result<UElement<S>> {
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        Ok(&xy - &yx)
    }
}

/// One-shot product; prefer [`PbwMultiplier`] for many products.
pub fn pbw_mul<S: Scalar>(
    alg: &LieAlgebra<S>,
    x: &UElement<S>,
    y: &UElement<S>,
) -> Result<UElement<S>> {
    PbwMultiplier::new(alg).mul(x, y)
}

/// All multi-indices of weight at most `bound`, in lexicographic order.
pub fn monomials_up_to_weight(weights: &[u32], bound: u32) -> Vec<MultiIndex> {
    fn rec(weights: &[u32], slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot == weights.len() {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        let mut a = 0;
        while a * weights[slot] <= left {
            cur.push(a);
            rec(weights, slot + 1, left - a * weights[slot], cur, out);
            cur.pop();
            a += 1;
        }
    }
    assert!(weights.iter().all(|&w| w > 0), "weights are positive");
    let mut out = Vec::new();
    rec(
        weights,
        0,
        bound,
        &mut Vec::with_capacity(weights.len()),
        &mut out,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::filtration::AdaptedAlgebra;
    use crate::scalar::{q, qi, Rational};

    fn mi(a: &[u32]) -> MultiIndex {
        MultiIndex(a.to_vec())
    }

    #[test]
    fn heisenberg_relation() {
        let h = bundled::heisenberg3();
        let e1 = UElement::<Rational>::generator(3, 0);
        let e2 = UElement::<Rational>::generator(3, 1);
        let p = pbw_mul(&h, &e2, &e1).unwrap();
        let expected =
            UElement::from_terms(3, [(mi(&[1, 1, 0]), qi(1)), (mi(&[0, 0, 1]), qi(-1))]).unwrap();
        assert_eq!(p, expected);
        let one = UElement::one(3);
        assert_eq!(pbw_mul(&h, &one, &p).unwrap(), p);
        assert_eq!(pbw_mul(&h, &p, &one).unwrap(), p);
    }

    #[test]
    fn heisenberg_square_of_e1e2() {
        // (e1e2)(e1e2) = e1(e1e2 - e3)e2 = e1²e2² - e1e2e3
        let h = bundled::heisenberg3();
        let x = UElement::monomial(mi(&[1, 1, 0]), qi(1));
        let p = pbw_mul(&h, &x, &x).unwrap();
        let expected =
            UElement::from_terms(3, [(mi(&[2, 2, 0]), qi(1)), (mi(&[1, 1, 1]), qi(-1))]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn commutators_match_brackets() {
        let ad = AdaptedAlgebra::from_lower_central_series(&bundled::favre7()).unwrap();
        let alg = ad.algebra();
        let mut mul = PbwMultiplier::new(alg);
        for i in 0..7 {
            for j in 0..7 {
                let x = UElement::generator(7, i);
                let y = UElement::generator(7, j);
                let lhs = mul.commutator(&x, &y).unwrap();
                let rhs =
                    UElement::from_vector(&alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j)));
                assert_eq!(lhs, rhs, "[e{}, e{}]", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn associativity_on_small_elements() {
        let ad = AdaptedAlgebra::from_lower_central_series(&bundled::favre7()).unwrap();
        let mut mul = PbwMultiplier::new(ad.algebra());
        let x = UElement::from_terms(
            7,
            [
                (mi(&[0, 2, 1, 0, 0, 0, 0]), q(1, 2)),
                (mi(&[1, 0, 0, 0, 0, 0, 0]), qi(3)),
            ],
        )
        .unwrap();
        let y = UElement::from_terms(
            7,
            [
                (mi(&[0, 1, 0, 1, 0, 0, 0]), qi(-1)),
                (mi(&[0, 0, 0, 0, 0, 0, 1]), qi(2)),
            ],
        )
        .unwrap();
        let z = UElement::from_terms(7, [(mi(&[2, 0, 0, 0, 1, 0, 0]), q(2, 3))]).unwrap();
        let xy = mul.mul(&x, &y).unwrap();
        let yz = mul.mul(&y, &z).unwrap();
        assert_eq!(mul.mul(&xy, &z).unwrap(), mul.mul(&x, &yz).unwrap());
    }

    #[test]
    fn support_weight_never_drops() {
        let ad = AdaptedAlgebra::from_lower_central_series(&bundled::favre7()).unwrap();
        let w = ad.weights().to_vec();
        let mons = monomials_up_to_weight(&w, 4);
        let mut mul = PbwMultiplier::new(ad.algebra());
        for a in &mons {
            for b in &mons {
                let p = mul.mul_monomials(a, b);
                let floor = weight_of(&w, a).unwrap() + weight_of(&w, b).unwrap();
                assert!(p.min_weight(&w).unwrap() >= floor);
            }
        }
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_up_to_weight(&[1, 1, 2], 2);
        // 1, e1, e2, e1², e1e2, e2², e3
        assert_eq!(m.len(), 7);
        assert!(m.contains(&mi(&[0, 0, 1])));
    }

    #[test]
    fn json_round_trip() {
        let x = UElement::<Rational>::from_json(
            3,
            r#"{"terms":[{"alpha":[1,0,2],"c":"-3/4"},{"alpha":[0,0,0],"c":"2"}]}"#,
        )
        .unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.coeff(&mi(&[1, 0, 2])), Some(&q(-3, 4)));
        assert_eq!(UElement::<Rational>::from_json(3, &x.to_json()).unwrap(), x);
        assert!(UElement::<Rational>::from_json(2, &x.to_json()).is_err());
    }
}
