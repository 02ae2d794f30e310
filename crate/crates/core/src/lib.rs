//! Linking numbers, planar degree and generalised axisymmetric maps on the
//! solid torus, with sampling harnesses for their properties.

pub mod chart;
pub mod cli;
pub mod degree;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linking;
pub mod quadrature;
pub mod rng;
pub mod sobolev;
pub mod torus;

pub use error::{Error, Result};
