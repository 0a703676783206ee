//! Exact finite-field algebra, dual witnesses and protocol simulation for the
//! matrix rank, determinant and subspace intersection communication problems.
//!
//! The crate builds without `std` (it needs `alloc`). Floating-point work goes
//! through `libm` so results do not depend on the platform math library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dual;
pub mod error;
pub mod fourier_det;
pub mod gf;
pub mod matq;
pub mod numeric;
pub mod protocols;
pub mod qcomb;
pub mod rank_witness;
pub mod rng;
pub mod spectrum;
pub mod subspace_witness;
pub mod subspaces;

pub use error::{Error, Result};
pub use gf::{Field, FieldElem, FieldSpec, PhaseExponent};
pub use matq::MatQ;
pub use qcomb::BigRat;
pub use rng::RngStream;
pub use subspaces::Subspace;
