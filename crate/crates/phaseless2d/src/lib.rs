//! Qualitative reconstruction of 2D acoustic scatterers from phaseless
//! total-field data.
//!
//! The crate simulates direct scattering by impenetrable obstacles
//! (sound-soft, sound-hard, impedance) and penetrable media, synthesizes
//! intensity-only measurements `|u(R x̂, d)|` on a circle of radius `R`,
//! and reconstructs the scatterer support with a spectral indicator built
//! from the eigensystem of a modified phaseless data operator. A far-field
//! reference pipeline and a set of numerical checks for the underlying
//! operator asymptotics are included.
//!
//! Start with the runnable programs under `examples/` — one per major
//! capability — or the `phaseless2d` binary for file-driven runs.

pub mod cli;
pub mod config;
pub mod forward;
pub mod geometry;
pub mod inversion;
pub mod io;
pub mod linalg;
pub mod operators;
pub mod specfun;
pub mod validation;

pub use forward::{
    add_noise, analytic_circle_farfield, simulate_farfield, simulate_phaseless, CircleKind,
    Condition, FarFieldMatrix, ForwardSolution, NoiseRecord, Obstacle, PhaselessDataset,
    ScatteringScene,
};
pub use geometry::{BoundaryCurve, CurveKind, DirectionSet, SamplingGrid};
pub use inversion::{
    indicator_value, normalize, reconstruct, reconstruct_from_farfield, test_vector,
    IndicatorField, TestVector,
};
pub use operators::{
    assemble_b_matrix, assemble_data_matrix, assemble_f_tilde, assemble_n_tilde, hermitian_split,
    matrix_abs, sharp, spectral_norm, OperatorMatrix, Provenance, SpectralOperator,
};
pub use validation::{
    check_farfield_asymptotics, check_operator_asymptotics, check_reciprocity,
    check_sharp_asymptotics, check_truncation_decay, DecayReport,
};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Point / vector in the plane.
pub type Vec2 = nalgebra::Vector2<f64>;

/// Errors surfaced by the numerical routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },
    #[error("scene is not admissible: {0}")]
    Admissibility(String),
    #[error("linear solve failed: {0}")]
    SingularSystem(String),
    #[error("discrete residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    Residual { residual: f64, tol: f64 },
    #[error("iterative solver did not converge: {0}")]
    NonConvergence(String),
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
