//! Lower central series dimensions by explicit spanning sets and row
//! reduction.

use nilgeom::{LieAlgebra, Rational};
use num_traits::Zero;

/// A row-echelon basis of the span of `vectors`.
pub fn row_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vectors
        .iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                let src = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(src) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// `[dim g_1, dim g_2, …]` with `g_{j+1} = [g, g_j]`, stopping before zero.
pub fn lcs_dims(alg: &LieAlgebra<Rational>) -> Vec<usize> {
    let m = alg.dim();
    let basis: Vec<Vec<Rational>> = (0..m).map(|i| alg.basis_vector(i)).collect();
    let mut layer = basis.clone();
    let mut dims = Vec::new();
    while !layer.is_empty() && dims.len() <= m {
        dims.push(layer.len());
        let spanning: Vec<Vec<Rational>> = basis
            .iter()
            .flat_map(|a| layer.iter().map(move |v| alg.bracket(a, v)))
            .collect();
        layer = row_basis(&spanning);
    }
    dims
}
