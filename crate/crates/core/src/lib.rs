//! Exact symbolic computation with the post-Lie algebra of tilt and shift
//! derivations acting on multi-indices.
//!
//! The crate covers the post-Lie algebra `L` (and its ambient `L₀`), its
//! enveloping algebra with the Guin–Oudom product, the dual Hopf algebra and
//! the character group acting on polynomials and truncated series. Every
//! coefficient is an arbitrary-precision rational; nothing is approximate.
//!
//! Most operations that need caching hang off [`Engine`], which carries the
//! [`Config`] (dimension, α, space).

pub mod algebra;
pub mod config;
pub mod derivations;
pub mod duality;
pub mod engine;
pub mod envelope;
pub mod error;
pub mod group;
pub mod index;
pub mod postlie;
pub mod sample;
pub mod text;
mod util;

pub use algebra::{pairing, poly_mul, series_mul, Polynomial, TruncatedSeries};
pub use config::{Config, Space};
pub use derivations::{apply_shift, apply_tilt, closed_form_monomial, DerivationSymbol, RhoCache};
pub use duality::{Coaction, UTensor};
pub use engine::Engine;
pub use envelope::{BasisWord, UElement, Word};
pub use error::{Error, Result};
pub use group::{Character, Functional};
pub use index::{Grade, IndexSymbol, MultiIndex, NVec};
pub use postlie::{comp_bracket, in_space, pl_bracket, pl_product, DLetter, LElement, LGenerator};

/// Exact rational coefficient.
pub type Q = num_rational::BigRational;
