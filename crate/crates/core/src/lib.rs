//! Exact umbral calculus on ladder representations of the Heisenberg group.
//!
//! The exact layer works with rational polynomials under a degree cap: every
//! catalog model is a basis `p_n` with lowering/raising operators and a vacuum
//! functional. On top of it sit the covariant transform to monomials, umbral
//! maps between models, generalized translations, and formal-series checks of
//! the Heisenberg group law. A separate floating-point layer evaluates the
//! Bessel-operator transmutations (Poisson, Hankel, heat kernel, cosine).

pub mod cli;
pub mod error;
pub mod exact;
pub mod model;
pub mod numeric;
pub mod report;
pub mod transform;
pub mod translation;
pub mod weyl;

pub use error::{Result, UmbraError};
pub use exact::{Functional, LinearOp, Poly, Rational};
pub use model::{verify_model, BesselParams, ModelKind, Parity, UmbralModel};
pub use report::{Status, VerificationReport};
