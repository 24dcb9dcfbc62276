//! Dimensions, nonemptiness and exact verification for Nakajima quiver
//! varieties, quiver Brill-Noether loci and split parabolic quiver varieties.

#![allow(clippy::needless_range_loop)]

pub mod dims;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod roots;
pub mod selftest;

pub use error::{Error, Result};
pub use linalg::{RMatrix, Rational};
pub use quiver::{Arrow, CartanMatrix, DimVector, IntVector, Quiver, RepetitionKind, Vertex};
