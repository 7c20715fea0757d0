//! Exact counting of congruence classes, orbits and Fourier quantities for point
//! sets in `F_q^d` equipped with a non-degenerate quadratic form.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod groups;
pub mod linalg;
pub mod run;
pub mod sampling;
pub mod simplices;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{FormClass, FormKind, PointSet, QuadraticForm, Space, Vector};
pub use gf::{FieldElement, PrimeField};
