//! Exact-arithmetic construction and verification of balancedly
//! multi-splittable partial Hadamard matrices, plus conversions among their
//! companion objects: orthogonal arrays, projective planes, BIBDs, embedded
//! Hadamard matrices, equiangular line sets, and the quaternary variant over
//! fourth roots of unity.
//!
//! Everything is integer arithmetic; there are no tolerances anywhere.

pub mod error;
pub mod gf;
pub mod mat;

pub use error::{Error, Result};
