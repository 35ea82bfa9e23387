//! Certified bounds on the joint spectral radius (JSR) of a finite matrix set
//! and on the constrained joint spectral radius (CJSR) of a switched linear
//! system whose switching sequences are restricted by a deterministic finite
//! automaton.
//!
//! The constrained problem is attacked by lifting: the DFA transition
//! structure matrices `F_i` and the system matrices `A_i` combine into
//! `Phi_i = F_i (x) A_i`, and the CJSR of the constrained system equals the
//! JSR of the lifted arbitrary system. With the block norm of [`spectra`],
//! fixed-horizon brute force and Gripenberg-style branch and bound on the
//! lifted set give certified brackets for the constrained radius.
//!
//! All numeric code is generic over the scalar type through [`Scalar`];
//! `f64` aliases are exported at the crate root.

pub mod automaton;
pub mod error;
pub mod logical;
pub mod matrix;
pub mod radius;
pub mod scalar;
pub mod schema;
pub mod spectra;
pub mod stp;
pub mod systems;
pub mod word;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use automaton::{Dfa, StructureMatrices};
pub use logical::LogicalMatrix;
pub use matrix::Matrix;
pub use radius::{
    cjsr_bounds, cjsr_bounds_via_lift, cjsr_bounds_via_lift_with, cjsr_bounds_with, gripenberg,
    jsr_bounds, jsr_bounds_with, markovian_bounds, markovian_bounds_with, BoundOptions,
    BoundsResult, Effort,
};
pub use spectra::{NormKind, Spectrum};
pub use stp::DeltaVector;
pub use systems::{ArbitrarySystem, ConstrainedSystem, LiftedSystem, TProductSystem};
pub use word::Word;

/// Double-precision matrix, the type the CLI and JSON schema work with.
pub type Matrix64 = Matrix<f64>;
/// Single-precision matrix.
pub type Matrix32 = Matrix<f32>;
/// Double-precision arbitrary switching system.
pub type ArbitrarySystem64 = ArbitrarySystem<f64>;
/// Double-precision constrained switching system.
pub type ConstrainedSystem64 = ConstrainedSystem<f64>;
