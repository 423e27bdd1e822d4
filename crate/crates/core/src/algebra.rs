//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::{ExactScalar, Scalar};

/// One structure-constant record `[e_i, e_j] = Σ_k coeffs[k] e_k`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket<S> {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<S>,
}

/// A problem with how the bracket table was written down, as opposed to a
/// failure of the Jacobi identity.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConventionIssue {
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraViolation {
    Convention(ConventionIssue),
    /// Basis triple (one-based) whose Jacobi sum is nonzero, with the residual.
    Jacobi {
        triple: [usize; 3],
        residual: Vec<String>,
    },
}

/// A Lie algebra over `S` with basis `e_0..e_{m-1}`.
///
/// Only pairs `i < j` need to be specified; `[e_j, e_i] = -[e_i, e_j]` and
/// `[e_i, e_i] = 0` are implied by the storage.
#[derive(Clone, Debug)]
pub struct LieAlgebra<S> {
    dim: usize,
    // table[i * dim + j] = sparse coefficients of [e_i, e_j]
    table: Vec<Vec<(usize, S)>>,
    issues: Vec<ConventionIssue>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: vec![Vec::new(); dim * dim],
            issues: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sparse coefficients of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn convention_issues(&self) -> &[ConventionIssue] {
        &self.issues
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.dim, "bracket operand length");
        assert_eq!(y.len(), self.dim, "bracket operand length");
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let entries = self.structure(i, j);
                if entries.is_empty() {
                    continue;
                }
                let xy = xi.clone() * yj.clone();
                for (k, c) in entries {
                    out[*k] = out[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        out
    }

    /// `[e_i, y]`.
    pub fn ad_basis(&self, i: usize, y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (k, c) in self.structure(i, j) {
                out[*k] = out[*k].clone() + yj.clone() * c.clone();
            }
        }
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        LieAlgebra {
            dim: self.dim,
            table: self
                .table
                .iter()
                .map(|e| e.iter().map(|(k, c)| (*k, f(c))).collect())
                .collect(),
            issues: self.issues.clone(),
        }
    }
}

impl<S: ExactScalar> LieAlgebra<S> {
    /// Builds the algebra from bracket records. Index and length errors are
    /// structural and rejected; convention problems (a nonzero `[e_i, e_i]`,
    /// or a pair given twice inconsistently) are recorded and surface in
    /// [`LieAlgebra::validate`].
    pub fn new(dim: usize, brackets: Vec<Bracket<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut table: Vec<Option<Vec<S>>> = vec![None; dim * dim];
        let mut issues = Vec::new();
        for b in brackets {
            for idx in [b.i, b.j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx + 1,
                        dim,
                    });
                }
            }
            if b.coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.coeffs.len(),
                });
            }
            if b.i == b.j {
                if b.coeffs.iter().any(|c| !c.is_zero()) {
                    issues.push(ConventionIssue {
                        i: b.i + 1,
                        j: b.j + 1,
                        reason: "nonzero self-bracket".into(),
                    });
                }
                continue;
            }
            let (lo, hi, coeffs) = if b.i < b.j {
                (b.i, b.j, b.coeffs)
            } else {
                (b.j, b.i, b.coeffs.into_iter().map(|c| -c).collect())
            };
            match &table[lo * dim + hi] {
                Some(existing) if *existing != coeffs => issues.push(ConventionIssue {
                    i: b.i + 1,
                    j: b.j + 1,
                    reason: "pair specified twice with inconsistent values".into(),
                }),
                Some(_) => {}
                None => {
                    table[hi * dim + lo] = Some(coeffs.iter().map(|c| -c.clone()).collect());
                    table[lo * dim + hi] = Some(coeffs);
                }
            }
        }
        let table = table
            .into_iter()
            .map(|e| {
                e.map(|v| {
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .unwrap_or_default()
            })
            .collect();
        Ok(LieAlgebra { dim, table, issues })
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        crate::linalg::unit(self.dim, i)
    }

    /// The bracket table as dense records for `i < j` with nonzero value.
    pub fn brackets(&self) -> Vec<Bracket<S>> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let e = self.structure(i, j);
                if e.is_empty() {
                    continue;
                }
                let mut coeffs = vec![S::zero(); self.dim];
                for (k, c) in e {
                    coeffs[*k] = c.clone();
                }
                out.push(Bracket { i, j, coeffs });
            }
        }
        out
    }

    /// Checks the storage convention and the Jacobi identity on every basis
    /// triple. The report is empty iff the table defines a Lie algebra.
    pub fn validate(&self) -> ValidationReport<AlgebraViolation> {
        let mut report = ValidationReport::new();
        for issue in &self.issues {
            report.record(Some(AlgebraViolation::Convention(issue.clone())));
        }
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    let sum: Vec<S> = a
                        .into_iter()
                        .zip(b)
                        .zip(c)
                        .map(|((a, b), c)| a + b + c)
                        .collect();
                    let failed = sum.iter().any(|x| !x.is_zero());
                    report.record(failed.then(|| AlgebraViolation::Jacobi {
                        triple: [i + 1, j + 1, k + 1],
                        residual: sum.iter().map(ExactScalar::to_text).collect(),
                    }));
                }
            }
        }
        report
    }

    /// Structure constants in a new basis. `basis[a]` holds the old
    /// coordinates of the new vector `f_a`; fails if the vectors are dependent.
    pub fn change_basis(&self, basis: &[Vec<S>]) -> Result<LieAlgebra<S>> {
        if basis.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: basis.len(),
            });
        }
        // Coordinates in the new basis: c = v · inv where rows of `basis` are the f_a.
        let inv = crate::linalg::invert(basis)
            .ok_or_else(|| Error::NotAdapted("basis vectors are linearly dependent".into()))?;
        let to_new = |v: &[S]| -> Vec<S> {
            (0..self.dim)
                .map(|a| {
                    v.iter()
                        .zip(&inv)
                        .fold(S::zero(), |acc, (x, row)| acc + x.clone() * row[a].clone())
                })
                .collect()
        };
        let mut brackets = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let coeffs = to_new(&self.bracket(&basis[a], &basis[b]));
                if coeffs.iter().any(|c| !c.is_zero()) {
                    brackets.push(Bracket { i: a, j: b, coeffs });
                }
            }
        }
        LieAlgebra::new(self.dim, brackets)
    }

    /// Whether every imaginary part of every structure constant vanishes.
    pub fn is_real(&self) -> bool {
        self.table
            .iter()
            .all(|e| e.iter().all(|(_, c)| c.to_real().is_some()))
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            dim: self.dim,
            brackets: self
                .brackets()
                .into_iter()
                .map(|b| BracketRecord {
                    i: b.i + 1,
                    j: b.j + 1,
                    coeffs: b
                        .coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| ((k + 1).to_string(), c.to_text()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let mut brackets = Vec::with_capacity(file.brackets.len());
        for rec in &file.brackets {
            if rec.i == 0 || rec.j == 0 {
                return Err(Error::Parse("bracket indices are one-based".into()));
            }
            let mut coeffs = vec![S::zero(); file.dim];
            for (k, v) in &rec.coeffs {
                let k: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient index {k:?}")))?;
                if k == 0 || k > file.dim {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        dim: file.dim,
                    });
                }
                coeffs[k - 1] = S::parse_str(v)?;
            }
            brackets.push(Bracket {
                i: rec.i - 1,
                j: rec.j - 1,
                coeffs,
            });
        }
        LieAlgebra::new(file.dim, brackets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra serializes")
    }
}

/// On-disk form: `{"dim": m, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}]}`
/// with one-based indices and rationals written as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::scalar::{qi, Gaussian, Rational};
    use num_traits::Zero;

    fn e(m: usize, i: usize) -> Vec<Rational> {
        crate::linalg::unit(m, i)
    }

    #[test]
    fn heisenberg_bracket() {
        let h = bundled::heisenberg3();
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)), e(3, 2));
        assert_eq!(h.bracket(&e(3, 1), &e(3, 0)), vec![qi(0), qi(0), qi(-1)]);
        let x = vec![qi(2), qi(-3), qi(5)];
        assert!(h.bracket(&x, &x).iter().all(|c| c.is_zero()));
        assert!(h.validate().is_ok());
    }

    #[test]
    fn favre_bracket() {
        let f = bundled::favre7();
        let minus_e6: Vec<Rational> = e(7, 5).into_iter().map(|c| -c).collect();
        assert_eq!(f.bracket(&e(7, 1), &e(7, 2)), minus_e6);
        assert_eq!(f.bracket(&e(7, 0), &e(7, 3)), e(7, 4));
        assert!(f.validate().is_ok());
    }

    #[test]
    fn abelian_is_valid() {
        for m in 1..6 {
            let a = LieAlgebra::<Rational>::abelian(m);
            assert!(a.validate().is_ok());
            assert!(a.is_abelian());
        }
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [e1,e2] = e3 together with [e1,e3] = e1:
        // J(e1,e2,e3) = [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]]
        //             = 0 + [e2, -e1] + 0 = e3.
        let text = r#"{"dim":3,"brackets":[
            {"i":1,"j":2,"coeffs":{"3":"1"}},
            {"i":1,"j":3,"coeffs":{"1":"1"}}]}"#;
        let alg = LieAlgebra::<Rational>::from_json(text).unwrap();
        let report = alg.validate();
        assert_eq!(
            report.violations,
            vec![AlgebraViolation::Jacobi {
                triple: [1, 2, 3],
                residual: vec!["0".into(), "0".into(), "1".into()],
            }]
        );
    }

    #[test]
    fn heisenberg_with_extra_bracket_still_satisfies_jacobi() {
        // [e1,e2] = e3, [e1,e3] = e2 is a (solvable) Lie algebra.
        let text = r#"{"dim":3,"brackets":[
            {"i":1,"j":2,"coeffs":{"3":"1"}},
            {"i":1,"j":3,"coeffs":{"2":"1"}}]}"#;
        let alg = LieAlgebra::<Rational>::from_json(text).unwrap();
        assert!(alg.validate().is_ok());
    }

    #[test]
    fn convention_issues_and_structural_errors() {
        let text = r#"{"dim":2,"brackets":[
            {"i":1,"j":1,"coeffs":{"2":"1"}},
            {"i":1,"j":2,"coeffs":{"2":"1"}},
            {"i":2,"j":1,"coeffs":{"2":"1"}}]}"#;
        let alg = LieAlgebra::<Rational>::from_json(text).unwrap();
        let report = alg.validate();
        assert_eq!(report.violations.len(), 2);

        let oob = r#"{"dim":2,"brackets":[{"i":1,"j":3,"coeffs":{}}]}"#;
        assert!(matches!(
            LieAlgebra::<Rational>::from_json(oob),
            Err(Error::IndexOutOfRange { .. })
        ));
        let short = LieAlgebra::<Rational>::new(
            2,
            vec![Bracket {
                i: 0,
                j: 1,
                coeffs: vec![qi(1)],
            }],
        );
        assert!(matches!(short, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gaussian_coefficients_parse() {
        let text = r#"{"dim":3,"brackets":[{"i":1,"j":2,"coeffs":{"3":"1/2+1 i"}}]}"#;
        let alg = LieAlgebra::<Gaussian>::from_json(text).unwrap();
        assert!(!alg.is_real());
        assert!(alg.validate().is_ok());
        let back = LieAlgebra::<Gaussian>::from_json(&alg.to_json()).unwrap();
        assert_eq!(back.brackets(), alg.brackets());
    }

    #[test]
    fn change_basis_preserves_brackets() {
        let h = bundled::heisenberg3();
        // f1 = e1 + e2, f2 = e2, f3 = 2 e3: [f1, f2] = e3 = f3 / 2.
        let basis = vec![
            vec![qi(1), qi(1), qi(0)],
            vec![qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), qi(2)],
        ];
        let g = h.change_basis(&basis).unwrap();
        assert_eq!(
            g.bracket(&e(3, 0), &e(3, 1)),
            vec![qi(0), qi(0), crate::scalar::q(1, 2)]
        );
        assert!(g.validate().is_ok());
    }
}
