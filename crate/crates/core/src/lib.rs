//! Exact symbolic engine for Drinfel'd-twist deformations of differential
//! geometry on level-set submanifolds of ℝⁿ.

pub mod algebra_core;
pub mod cartan_calculus;
pub mod error;
pub mod hopf_twist;
pub mod models;
pub mod riemann_geometry;
pub mod sampling;
pub mod star_calculus;
pub mod submanifold;
pub mod twisted_geometry;

pub use error::{Error, Result};
