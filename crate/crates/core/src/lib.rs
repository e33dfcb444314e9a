//! Exact symbolic computations for Lie algebroids on affine charts.
//!
//! Everything is polynomial with rational coefficients: structure data,
//! connections, cochains and groupoid cochains. Identities are checked by
//! exact comparison, never numerically.

pub mod algebroid;
pub mod charclass;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod io;
pub mod jet;
pub mod library;
pub mod matrix;
pub mod poisson;
pub mod poly;
pub mod sparse;
pub mod vanest;

pub use algebroid::{LieAlgebroid, Representation, Section};
pub use cochain::Cochain;
pub use error::{Error, Result};
pub use poly::{Polynomial, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
