//! Dunkl kernels, generalized Bessel functions and intertwining operators
//! for the dihedral groups `I_k`.
//!
//! The closed forms live in [`kernels`]; they are checked against the exact
//! polynomial oracle in [`oracle`], which builds the intertwining operator
//! directly from Dunkl operators acting on [`poly2::Poly2`].

pub mod config;
pub mod dihedral;
pub mod dunklops;
pub mod kernels;
pub mod oracle;
pub mod poly2;
pub mod special;
pub mod transform;
pub mod verify;

pub use config::{Config, HumbertMethod};
pub use dihedral::{DihedralGroup, Multiplicity, Orbit, PlanePoint};
pub use dunklops::DunklContext;
pub use oracle::Intertwiner;
pub use poly2::{LinearMap2, Poly2, PolyError};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("linear system is ill-conditioned (condition number {cond:.3e})")]
    IllConditioned { cond: f64 },
    #[error("series did not converge after {terms} terms")]
    NonConvergence { terms: usize },
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
