//! Exact computations on nilpotent Lie algebras and their simply connected
//! groups: filtrations and weights, the BCH group law, PBW straightening with
//! the weighted prenorms `‖x‖_r = Σ |c_α| α! M_α r^{w(α)}`, and the
//! homogeneous-norm / word-length geometry of the group.
//!
//! The algebraic core is generic over [`Scalar`]; the concrete instances used
//! throughout are exact [`Rational`] and [`Gaussian`] coefficients, with
//! certified [`Ball`] intervals wherever roots or transcendental functions
//! appear.

pub mod algebra;
pub mod ball;
pub mod bch;
pub mod bundled;
pub mod error;
pub mod filtration;
pub mod geometry;
pub mod linalg;
pub mod norms;
pub mod pbw;
pub mod report;
pub mod sampling;
pub mod scalar;

pub use algebra::LieAlgebra;
pub use ball::Ball;
pub use bch::{BchTable, Group, GroupElement, SecondKindCoords, Word};
pub use error::{Error, Result};
pub use filtration::{AdaptedAlgebra, FBasis, Filtration, MultiIndex};
pub use norms::WeightSequence;
pub use pbw::{PbwMultiplier, UElement};
pub use report::ValidationReport;
pub use scalar::{ExactScalar, Gaussian, Rational, Scalar};

pub type RationalAlgebra = LieAlgebra<Rational>;
pub type GaussianAlgebra = LieAlgebra<Gaussian>;
pub type FloatAlgebra = LieAlgebra<f64>;
pub type BallAlgebra = LieAlgebra<Ball>;
pub type RationalGroup = Group<Rational>;
pub type BallGroup = Group<Ball>;
