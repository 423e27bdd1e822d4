//! Positive filtrations, adapted bases and weights.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{unit, Subspace};
use crate::report::ValidationReport;
use crate::scalar::ExactScalar;

/// A decreasing chain `g = g_1 ⊃ g_2 ⊃ ⋯ ⊃ g_k ⊃ g_{k+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration<S> {
    layers: Vec<Subspace<S>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiltrationViolation {
    NotFullSpace {
        dim: usize,
    },
    NotDecreasing {
        layer: usize,
    },
    /// `[g_i, g_j] ⊄ g_{i+j}` (one-based layers).
    Bracket {
        i: usize,
        j: usize,
    },
}

impl<S: ExactScalar> Filtration<S> {
    /// Wraps user-supplied layers `g_1, …, g_k`; call [`Filtration::check`]
    /// before relying on the filtration axioms.
    pub fn new(layers: Vec<Subspace<S>>) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::InvalidFiltration("no layers".into()));
        };
        let n = first.ambient();
        if layers.iter().any(|l| l.ambient() != n) {
            return Err(Error::InvalidFiltration(
                "layers live in different spaces".into(),
            ));
        }
        if layers.last().is_some_and(Subspace::is_zero) {
            return Err(Error::InvalidFiltration(
                "the last listed layer g_k must be nonzero".into(),
            ));
        }
        Ok(Filtration { layers })
    }

    /// Nilpotency class `k`: the index of the last nonzero layer.
    pub fn class(&self) -> usize {
        self.layers.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.layers.iter().map(Subspace::dim).collect()
    }

    /// `g_j` for `j ≥ 1`; the zero space beyond the class.
    pub fn layer(&self, j: usize) -> Subspace<S> {
        assert!(j >= 1, "layers are one-based");
        self.layers
            .get(j - 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient()))
    }

    pub fn layers(&self) -> &[Subspace<S>] {
        &self.layers
    }

    pub fn ambient(&self) -> usize {
        self.layers[0].ambient()
    }

    /// `max{j : v ∈ g_j}`; `None` for the zero vector.
    pub fn weight_of_vector(&self, v: &[S]) -> Option<u32> {
        if v.iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut w = 0;
        for (j, layer) in self.layers.iter().enumerate() {
            if layer.contains(v) {
                w = j + 1;
            } else {
                break;
            }
        }
        Some(w as u32)
    }

    /// Checks `g_1 = g`, strict decrease, and `[g_i, g_j] ⊆ g_{i+j}` on
    /// spanning sets.
    pub fn check(&self, alg: &LieAlgebra<S>) -> ValidationReport<FiltrationViolation> {
        let mut report = ValidationReport::new();
        let n = alg.dim();
        report.record(
            (self.layers[0].dim() != n).then_some(FiltrationViolation::NotFullSpace {
                dim: self.layers[0].dim(),
            }),
        );
        for j in 1..self.layers.len() {
            let ok = self.layers[j - 1].contains_subspace(&self.layers[j])
                && self.layers[j].dim() < self.layers[j - 1].dim();
            report.record((!ok).then_some(FiltrationViolation::NotDecreasing { layer: j + 1 }));
        }
        let k = self.class();
        for i in 1..=k {
            for j in i..=k {
                let target = self.layer(i + j);
                let gi = self.layer(i);
                let gj = self.layer(j);
                let ok = gi.basis().iter().all(|x| {
                    gj.basis()
                        .iter()
                        .all(|y| target.contains(&alg.bracket(x, y)))
                });
                report.record((!ok).then_some(FiltrationViolation::Bracket { i, j }));
            }
        }
        report
    }
}

/// `g_1 = g`, `g_{i+1} = [g, g_i]`, stopping at the first zero term.
pub fn lower_central_series<S: ExactScalar>(alg: &LieAlgebra<S>) -> Result<Filtration<S>> {
    let n = alg.dim();
    let mut layers = vec![Subspace::full(n)];
    loop {
        let current = layers.last().unwrap();
        let mut next = Subspace::zero(n);
        for a in 0..n {
            for v in current.basis() {
                next.insert(alg.ad_basis(a, v));
            }
        }
        if next.is_zero() {
            break;
        }
        if next.dim() == current.dim() {
            return Err(Error::NotNilpotent {
                stable_dim: next.dim(),
            });
        }
        layers.push(next);
    }
    Filtration::new(layers)
}

/// An ordered basis adapted to a filtration, with its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBasis<S> {
    vectors: Vec<Vec<S>>,
    weights: Vec<u32>,
}

impl<S: ExactScalar> FBasis<S> {
    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Whether the weights are nondecreasing, equal to the filtration
    /// weight of each vector, and `g_j = span{e_i : w_i ≥ j}` for all `j`.
    pub fn is_adapted_to(&self, filt: &Filtration<S>) -> bool {
        if self.vectors.len() != filt.ambient() {
            return false;
        }
        if self.weights.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        if self
            .vectors
            .iter()
            .zip(&self.weights)
            .any(|(v, &w)| filt.weight_of_vector(v) != Some(w))
        {
            return false;
        }
        (1..=filt.class()).all(|j| {
            let span = Subspace::span(
                filt.ambient(),
                self.vectors
                    .iter()
                    .zip(&self.weights)
                    .filter(|(_, &w)| w as usize >= j)
                    .map(|(v, _)| v.clone()),
            );
            span == filt.layer(j)
        })
    }
}

/// Builds an F-basis. If `candidates` (default: the standard basis) is
/// already adapted it is returned, stably sorted by weight. Otherwise a basis
/// is grown from `g_k` upward: at each layer the candidate vectors lying in
/// `g_j` are tried first, then the echelon rows of `g_j`, keeping whatever
/// enlarges the span of the layers above.
pub fn f_basis<S: ExactScalar>(filt: &Filtration<S>, candidates: Option<&[Vec<S>]>) -> FBasis<S> {
    let n = filt.ambient();
    let standard: Vec<Vec<S>> = (0..n).map(|i| unit(n, i)).collect();
    let candidates = candidates.unwrap_or(&standard);

    if candidates.len() == n && Subspace::span(n, candidates.iter().cloned()).dim() == n {
        let mut tagged: Vec<(u32, Vec<S>)> = candidates
            .iter()
            .map(|v| (filt.weight_of_vector(v).unwrap_or(0), v.clone()))
            .collect();
        tagged.sort_by_key(|(w, _)| *w);
        let basis = FBasis {
            weights: tagged.iter().map(|(w, _)| *w).collect(),
            vectors: tagged.into_iter().map(|(_, v)| v).collect(),
        };
        if basis.is_adapted_to(filt) {
            return basis;
        }
    }

    let k = filt.class();
    let mut span = Subspace::zero(n);
    let mut by_layer: Vec<Vec<Vec<S>>> = vec![Vec::new(); k + 1];
    for j in (1..=k).rev() {
        let layer = filt.layer(j);
        let pool = candidates
            .iter()
            .filter(|v| layer.contains(v))
            .chain(layer.basis().iter());
        for v in pool {
            if span.dim() == layer.dim() {
                break;
            }
            if span.insert(v.clone()) {
                by_layer[j].push(v.clone());
            }
        }
    }
    let mut vectors = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (j, vs) in by_layer.into_iter().enumerate().skip(1) {
        for v in vs {
            vectors.push(v);
            weights.push(j as u32);
        }
    }
    FBasis { vectors, weights }
}

/// A PBW exponent vector `α ∈ Z_+^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    pub fn unit(m: usize, i: usize, power: u32) -> Self {
        let mut a = vec![0; m];
        a[i] = power;
        MultiIndex(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α! = Π α_i!`.
    pub fn factorial(&self) -> BigUint {
        self.0.iter().fold(BigUint::one(), |acc, &a| {
            (1..=a).fold(acc, |acc, k| acc * BigUint::from(k))
        })
    }
}

/// `w(α) = Σ w_i α_i`.
pub fn weight_of(weights: &[u32], alpha: &MultiIndex) -> Result<u32> {
    if weights.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            got: alpha.len(),
        });
    }
    Ok(weights.iter().zip(&alpha.0).map(|(w, a)| w * a).sum())
}

/// Complements `v_j = span{e_i : w_i = j}` with `v_j ⊕ g_{j+1} = g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    /// `members[j - 1]` lists the F-basis indices of weight `j`.
    members: Vec<Vec<usize>>,
}

impl LayerDecomposition {
    pub fn class(&self) -> usize {
        self.members.len()
    }

    /// Basis indices spanning `v_j` (one-based `j`).
    pub fn layer(&self, j: usize) -> &[usize] {
        &self.members[j - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

/// Groups the basis by weight and verifies the direct-sum property exactly.
pub fn layer_decomposition<S: ExactScalar>(
    filt: &Filtration<S>,
    basis: &FBasis<S>,
) -> Result<LayerDecomposition> {
    if !basis.is_adapted_to(filt) {
        return Err(Error::NotAdapted(
            "basis does not match the filtration".into(),
        ));
    }
    let k = filt.class();
    let n = filt.ambient();
    let mut members = vec![Vec::new(); k];
    for (i, &w) in basis.weights().iter().enumerate() {
        members[w as usize - 1].push(i);
    }
    for j in 1..=k {
        let v = Subspace::span(
            n,
            members[j - 1].iter().map(|&i| basis.vectors()[i].clone()),
        );
        let next = filt.layer(j + 1);
        let direct = v.dim() + next.dim() == filt.layer(j).dim();
        if !direct || v.sum(&next) != filt.layer(j) {
            return Err(Error::NotAdapted(format!("v_{j} ⊕ g_{} ≠ g_{j}", j + 1)));
        }
    }
    Ok(LayerDecomposition { members })
}

/// A nilpotent algebra rewritten in an F-basis: coordinates everywhere
/// downstream (group elements, PBW monomials) refer to this basis.
#[derive(Clone, Debug)]
pub struct AdaptedAlgebra<S> {
    original: LieAlgebra<S>,
    filtration: Filtration<S>,
    basis: FBasis<S>,
    algebra: LieAlgebra<S>,
    layers: LayerDecomposition,
}

impl<S: ExactScalar> AdaptedAlgebra<S> {
    /// Lower central series and the F-basis grown from the standard basis.
    pub fn from_lower_central_series(alg: &LieAlgebra<S>) -> Result<Self> {
        let filt = lower_central_series(alg)?;
        let basis = f_basis(&filt, None);
        Self::new(alg, filt, basis)
    }

    pub fn new(alg: &LieAlgebra<S>, filtration: Filtration<S>, basis: FBasis<S>) -> Result<Self> {
        let violations = filtration.check(alg);
        if !violations.is_ok() {
            return Err(Error::InvalidFiltration(format!(
                "{:?}",
                violations.violations
            )));
        }
        let layers = layer_decomposition(&filtration, &basis)?;
        let algebra = alg.change_basis(basis.vectors())?;
        Ok(AdaptedAlgebra {
            original: alg.clone(),
            filtration,
            basis,
            algebra,
            layers,
        })
    }

    /// Structure constants in the F-basis.
    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.algebra
    }

    pub fn original(&self) -> &LieAlgebra<S> {
        &self.original
    }

    pub fn filtration(&self) -> &Filtration<S> {
        &self.filtration
    }

    pub fn basis(&self) -> &FBasis<S> {
        &self.basis
    }

    pub fn layers(&self) -> &LayerDecomposition {
        &self.layers
    }

    pub fn weights(&self) -> &[u32] {
        self.basis.weights()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn class(&self) -> usize {
        self.filtration.class()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::scalar::{qi, Rational};

    #[test]
    fn heisenberg_series_and_weights() {
        let h = bundled::heisenberg3();
        let f = lower_central_series(&h).unwrap();
        assert_eq!(f.dims(), vec![3, 1]);
        assert_eq!(f.class(), 2);
        assert!(f.check(&h).is_ok());
        let b = f_basis(&f, None);
        assert_eq!(b.weights(), &[1, 1, 2]);
        let d = layer_decomposition(&f, &b).unwrap();
        assert_eq!(d.layer(1), &[0, 1]);
        assert_eq!(d.layer(2), &[2]);
    }

    #[test]
    fn favre_series_and_weights() {
        let alg = bundled::favre7();
        let f = lower_central_series(&alg).unwrap();
        assert_eq!(f.dims(), vec![7, 5, 4, 3, 2, 1]);
        assert!(f.check(&alg).is_ok());
        let b = f_basis(&f, None);
        assert_eq!(b.weights(), &[1, 1, 2, 3, 4, 5, 6]);
        let d = layer_decomposition(&f, &b).unwrap();
        assert_eq!(d.dims(), vec![2, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn abelian_single_layer() {
        let a = bundled::abelian(4);
        let f = lower_central_series(&a).unwrap();
        assert_eq!(f.dims(), vec![4]);
        let b = f_basis(&f, None);
        assert_eq!(b.weights(), &[1, 1, 1, 1]);
        assert_eq!(layer_decomposition(&f, &b).unwrap().dims(), vec![4]);
    }

    #[test]
    fn non_nilpotent_is_an_error() {
        let text = r#"{"dim":3,"brackets":[
            {"i":1,"j":2,"coeffs":{"3":"1"}},
            {"i":1,"j":3,"coeffs":{"2":"1"}}]}"#;
        let alg = LieAlgebra::<Rational>::from_json(text).unwrap();
        assert_eq!(
            lower_central_series(&alg),
            Err(Error::NotNilpotent { stable_dim: 2 })
        );
    }

    #[test]
    fn unadapted_basis_is_completed() {
        let h = bundled::heisenberg3();
        let f = lower_central_series(&h).unwrap();
        // e1 + e3, e3 + e2, e1 + e2 + e3 span g but none of them lies in g_2.
        let cands = vec![
            vec![qi(1), qi(0), qi(1)],
            vec![qi(0), qi(1), qi(1)],
            vec![qi(1), qi(1), qi(1)],
        ];
        let b = f_basis(&f, Some(&cands));
        assert!(b.is_adapted_to(&f));
        assert_eq!(b.weights(), &[1, 1, 2]);
        assert_eq!(b.vectors()[2], vec![qi(0), qi(0), qi(1)]);
        assert_eq!(b.vectors()[0], cands[0]);
    }

    #[test]
    fn adapted_basis_is_sorted_not_replaced() {
        let h = bundled::heisenberg3();
        let f = lower_central_series(&h).unwrap();
        let cands = vec![
            vec![qi(0), qi(0), qi(5)],
            vec![qi(1), qi(2), qi(0)],
            vec![qi(0), qi(1), qi(7)],
        ];
        let b = f_basis(&f, Some(&cands));
        assert_eq!(
            b.vectors(),
            &[cands[1].clone(), cands[2].clone(), cands[0].clone()]
        );
    }

    #[test]
    fn weight_of_examples() {
        assert_eq!(
            weight_of(&[1, 1, 2], &MultiIndex(vec![1, 0, 2])).unwrap(),
            5
        );
        assert_eq!(
            weight_of(
                &[1, 1, 2, 3, 4, 5, 6],
                &MultiIndex(vec![0, 1, 0, 0, 0, 0, 1])
            )
            .unwrap(),
            7
        );
        assert_eq!(weight_of(&[1, 1, 2], &MultiIndex::zero(3)).unwrap(), 0);
        assert!(weight_of(&[1, 1], &MultiIndex::zero(3)).is_err());
    }

    #[test]
    fn user_filtration_is_checked() {
        let h = bundled::heisenberg3();
        // g_2 = span{e1} violates [g_1, g_1] ⊆ g_2.
        let bad = Filtration::new(vec![
            Subspace::full(3),
            Subspace::span(3, [vec![qi(1), qi(0), qi(0)]]),
        ])
        .unwrap();
        assert!(!bad.check(&h).is_ok());
        // A coarser valid filtration: g_1 = g, g_2 = g_3 = span{e3}? Not strictly
        // decreasing, so rejected too.
        let flat = Filtration::new(vec![
            Subspace::full(3),
            Subspace::span(3, [vec![qi(0), qi(0), qi(1)]]),
            Subspace::span(3, [vec![qi(0), qi(0), qi(1)]]),
        ])
        .unwrap();
        assert!(!flat.check(&h).is_ok());
        // g_3 = span{e3} with g_2 = span{e2, e3} is a valid positive filtration.
        let ok = Filtration::new(vec![
            Subspace::full(3),
            Subspace::span(3, [vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]]),
            Subspace::span(3, [vec![qi(0), qi(0), qi(1)]]),
        ])
        .unwrap();
        assert!(ok.check(&h).is_ok());
        assert_eq!(f_basis(&ok, None).weights(), &[1, 2, 3]);
    }
}
