//! Numerical laboratory for sharp and quantitative spectral inequalities.
//!
//! The crate computes Laplacian spectra (Dirichlet, Neumann, Steklov, Robin),
//! torsional rigidity and geometric asymmetry functionals on planar polygonal
//! domains and N-dimensional balls, and checks the classical sharp inequalities
//! (Faber-Krahn, Szego-Weinberger, Brock-Weinstock, Hong-Krahn-Szego,
//! Ashbaugh-Benguria, Kohler-Jobin, Bossel-Daners) together with their
//! quantitative improvements, using explicit constants where available.

pub mod ball_spectra;
pub mod config;
pub mod families;
pub mod geometry;
pub mod inequalities;
pub mod pde;
pub mod quad;
pub mod rearrangement;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("meshing failed: {0}")]
    Meshing(String),
    #[error("solver failed: {0}")]
    Solver(String),
    #[error("iteration did not converge: {context} (history: {history:?})")]
    NonConvergence { context: String, history: Vec<f64> },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
