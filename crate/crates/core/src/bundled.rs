//! The algebras shipped with the crate.
//!
//! `abelian_m.json` is a template: its `dim` is a placeholder and
//! [`abelian`] builds the algebra for any dimension.

use crate::algebra::LieAlgebra;
use crate::scalar::Rational;

pub const HEISENBERG3_JSON: &str = include_str!("../data/heisenberg3.json");
pub const FAVRE7_JSON: &str = include_str!("../data/favre7.json");
pub const ABELIAN_M_JSON: &str = include_str!("../data/abelian_m.json");

/// Dimension used for the abelian algebra when none is requested.
pub const DEFAULT_ABELIAN_DIM: usize = 3;

/// `[e1, e2] = e3`.
pub fn heisenberg3() -> LieAlgebra<Rational> {
    LieAlgebra::from_json(HEISENBERG3_JSON).expect("bundled heisenberg3.json")
}

/// The 7-dimensional filiform algebra with `[e1, e_i] = e_{i+1}` (i = 2..6),
/// `[e2, e3] = -e6`, `[e3, e4] = e7`, `[e2, e4] = [e2, e5] = -e7`.
pub fn favre7() -> LieAlgebra<Rational> {
    LieAlgebra::from_json(FAVRE7_JSON).expect("bundled favre7.json")
}

pub fn abelian(dim: usize) -> LieAlgebra<Rational> {
    LieAlgebra::abelian(dim)
}

/// Resolves `heisenberg3`, `favre7`, `abelian` or `abelian:<m>`.
pub fn by_name(name: &str) -> Option<LieAlgebra<Rational>> {
    let name = name.trim_end_matches(".json");
    match name {
        "heisenberg3" => Some(heisenberg3()),
        "favre7" => Some(favre7()),
        "abelian" | "abelian_m" => Some(abelian(DEFAULT_ABELIAN_DIM)),
        _ => {
            let m = name
                .strip_prefix("abelian:")
                .or_else(|| name.strip_prefix("abelian_"))?;
            m.parse().ok().filter(|&m| m > 0).map(abelian)
        }
    }
}

/// The three algebras every harness runs on, with display names.
pub fn all() -> Vec<(&'static str, LieAlgebra<Rational>)> {
    vec![
        ("abelian3", abelian(DEFAULT_ABELIAN_DIM)),
        ("heisenberg3", heisenberg3()),
        ("favre7", favre7()),
    ]
}
