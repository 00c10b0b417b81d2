//! Exact-arithmetic toolkit for orthogonality spaces.
//!
//! Everything here is computed over ℚ or the Eisenstein rationals ℚ(ω) —
//! no floating point anywhere. The crate has three layers:
//!
//! * [`scalar`] and [`ray`]: exact scalars and rays of K³, generic over
//!   the ground field via [`ExactScalar`], with the conjugated cross
//!   product and squared-cosine angle comparisons.
//! * [`greechie`] and [`mub`]: Greechie diagrams (vertices plus blocks),
//!   sub-diagram search, and the mutually-unbiased-bases configurations up
//!   to the two-center witness diagram that is realizable over ℚ(ω)³ but
//!   not over ℝ³.
//! * [`oml`], [`tao`], and [`embed`]: finite orthomodular lattices as
//!   bitset posets, the Kalmbach coatom extension, the nonnegative
//!   orthogonal representation of graphs, and the pipeline that strongly
//!   embeds any finite graph into the orthogonality graph of a finite OML.
//!
//! Concrete instantiations of the generic core are aliased at the crate
//! root: [`Vector3Q`], [`Vector3Qw`], [`RayQ`], [`RayQw`].

pub mod embed;
pub mod greechie;
pub mod mub;
pub mod oml;
pub mod ray;
pub mod scalar;
pub mod tao;

pub use ray::{Ray, RayAngle, RayError, Vector3};
pub use scalar::{ArithOp, Eisenstein, ExactScalar, FieldTag, Rational, Scalar, ScalarError};

/// Vector of ℚ³.
pub type Vector3Q = Vector3<Rational>;
/// Vector of ℚ(ω)³.
pub type Vector3Qw = Vector3<Eisenstein>;
/// Ray of ℚ³.
pub type RayQ = Ray<Rational>;
/// Ray of ℚ(ω)³.
pub type RayQw = Ray<Eisenstein>;
