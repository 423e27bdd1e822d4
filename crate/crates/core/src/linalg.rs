//! Exact linear algebra over [`ExactScalar`] fields.

use crate::scalar::ExactScalar;

/// A subspace of `S^n` stored as a reduced row-echelon spanning set.
///
/// Pivot columns are chosen lowest index first, so two spans of the same
/// subspace produce identical rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<S> {
    ambient: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: ExactScalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<S>>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon rows, one per dimension.
    pub fn basis(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating against the pivot rows.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = S::one() / r[p].clone();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        // Clear column p from the existing rows to stay fully reduced.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace<S>) -> Subspace<S> {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }
}

pub fn unit<S: ExactScalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

pub fn rank<S: ExactScalar>(ambient: usize, vectors: &[Vec<S>]) -> usize {
    Subspace::span(ambient, vectors.iter().cloned()).dim()
}

/// Coefficients `c` with `Σ c_k columns[k] = target`, or `None` if `target`
/// is outside the span. When the columns are dependent the solution sets the
/// later redundant columns to zero.
pub fn solve<S: ExactScalar>(columns: &[Vec<S>], target: &[S]) -> Option<Vec<S>> {
    let n = target.len();
    let k = columns.len();
    // Augmented rows: equation i reads Σ_c columns[c][i] x_c = target[i].
    let mut rows: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut r: Vec<S> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        let inv = S::one() / rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if rows[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut x = vec![S::zero(); k];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[r][k].clone();
    }
    Some(x)
}

/// Inverse of a square matrix given as rows, or `None` if singular.
pub fn invert<S: ExactScalar>(matrix: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<S>> = matrix
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "square matrix");
            let mut row = r.clone();
            row.extend(unit::<S>(n, i));
            row
        })
        .collect();
    for col in 0..n {
        let pr = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pr);
        let inv = S::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `Σ_k v[k] · rows[k]`.
pub fn combine<S: ExactScalar>(coeffs: &[S], rows: &[Vec<S>]) -> Vec<S> {
    let n = rows.first().map_or(0, Vec::len);
    let mut out = vec![S::zero(); n];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn span_and_membership() {
        let s = Subspace::span(3, [v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 2, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        assert_eq!(s.pivots(), &[0, 1]);
        let t = Subspace::span(3, [v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(s, t, "canonical echelon form");
    }

    #[test]
    fn solve_and_invert() {
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[1, 1, 2])];
        let x = solve(&cols, &v(&[2, 3, 5])).unwrap();
        assert_eq!(combine(&x, &cols), v(&[2, 3, 5]));
        assert_eq!(x[2], qi(0), "redundant column left at zero");
        assert!(solve(&cols, &v(&[0, 0, 1])).is_none());

        let m = vec![v(&[2, 1]), v(&[1, 1])];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![v(&[1, -1]), v(&[-1, 2])]);
        assert!(invert(&[v(&[1, 2]), v(&[2, 4])]).is_none());
        assert_eq!(rank(2, &[v(&[1, 2]), v(&[2, 4])]), 1);
    }
}
