//! Construction and certification of strongest-nonlocal orthogonal state sets
//! in three- and four-party systems.

extern crate blas_src;

pub mod error;
pub mod exact;
pub mod ket;
pub mod space;

pub use error::{Error, Result};
pub use exact::{ExactScalar, ExactSum};
pub use ket::{inner, inner_exact, reshape, schmidt_rank, Ket};
pub use space::{decode, encode, BasisLabel, Dims, MeasuredSet};
