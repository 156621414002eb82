//! Hartogs domains over bounded symmetric domains.
//!
//! The crate is layered bottom-up: [`scalar`] and [`jet`] provide the number
//! types, [`octonion`] and [`jordan`] the exceptional algebra, [`domains`] the
//! Cartan catalog and generic norms, [`potential`] the Kähler potentials and
//! metric tensors, [`geometry`] Christoffel symbols, curvature and geodesics,
//! [`embeddings`] polydisk embeddings and automorphism lifts, and [`verify`]
//! the seeded check catalog behind the command-line tool.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod domains;
pub mod embeddings;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod jordan;
pub mod linalg;
pub mod octonion;
pub mod potential;
pub mod sampling;
pub mod scalar;
pub mod verify;

pub use domains::{
    CartanDomainSpec, CartanKind, DomainInvariants, HartogsSpec, InvariantTuple, NormMode,
    SymmetricDomainSpec,
};
pub use error::{Error, Result};
pub use jordan::{JordanElement, TypeVElement};
pub use octonion::{ComplexOctonion, CrossVector, Octonion};
pub use potential::{AmbientPoint, HermitianMetric, PotentialKind};
pub use scalar::C64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
