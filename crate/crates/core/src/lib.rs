//! Verification toolkit for polynomials with a root in every `Q_p` but none
//! in `Q`, built from 2-coverings of symmetric and alternating groups.

pub mod arith;
pub mod error;
pub mod galois;
pub mod local;
pub mod modp;
pub mod perm;
pub mod pipeline;
pub mod ratfactor;
pub mod resolvent;

pub use arith::{IntPoly, RatPoly};
pub use error::{Error, Result};
