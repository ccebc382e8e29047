//! Spin-rotation and spin-gravity coupling of light: rotating-frame
//! geometry, effective optical media, Riemann–Silberstein fields, a
//! finite-difference helicity-mode solver, observer kinematics and
//! gravitoelectromagnetic fields of rotating bodies.

// Guards are written `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constants;
pub mod error;
pub mod fields;
pub mod gem;
pub mod geometry;
pub mod kinematics;
pub mod optics;
pub mod quadrature;
pub mod solver;

pub use constants::{Constants, NumericPolicy};
pub use error::{Error, ErrorClass, Result};
