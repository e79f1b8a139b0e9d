//! Exact path transforms on root-system spaces: Pitman and Littelmann
//! operators, duality involutions, i-trail formulas and the random-walk
//! machinery built on them.
//!
//! Crystallographic computations use exact big rationals; non-crystallographic
//! dihedral groups use `f64` with a fixed tolerance.

#![no_std]

extern crate alloc;

pub mod duality;
pub mod error;
pub mod itrail;
pub mod linalg;
pub mod littelmann;
pub mod pathcore;
pub mod pitman;
pub mod rootsys;
pub mod sample;
pub mod typea;
pub mod scalar;
pub mod stochsim;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use pathcore::{Path, ScalarPath};
pub use rootsys::{CoxeterDatum, Root, TypeLabel, Weight, WeylElement, WeylWord};
pub use scalar::{Rational, Scalar, APPROX_TOLERANCE};
