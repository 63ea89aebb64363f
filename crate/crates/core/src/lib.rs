//! Exact deformation quantization toolkit.
//!
//! The algebraic layers ([`exactalg`], [`hopf`], [`smash`], [`phase_space`],
//! [`udf`], [`structure`]) are generic over a coefficient field implementing
//! [`scalar::Coeff`]; [`wkbnum`] is generic over [`num_traits::Float`].

pub mod error;
pub mod exactalg;
pub mod hopf;
pub mod report;
pub mod phase_space;
pub mod smash;
pub mod structure;
pub mod udf;
pub mod verify;
pub mod wkbnum;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{rat, Coeff, GaussianRational};

/// Exact rational scalar.
pub type Rational = num::BigRational;
/// Polynomial with rational coefficients.
pub type QPoly = exactalg::Poly<Rational>;
/// Tensor element with rational coefficients.
pub type QTensor = exactalg::Tensor<Rational>;
