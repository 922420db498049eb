use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    PoleArgument(f64),
    #[error("gamma function overflows at x = {0}")]
    Overflow(f64),
    #[error("invalid fractional order {0}")]
    InvalidOrder(f64),
    #[error("evaluation did not converge: {0}")]
    NonConvergence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error in {path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("mesh validation failed: {0}")]
    MeshValidation(String),

    #[error("unsupported quadrature order {0} (supported: 1..=5)")]
    UnsupportedQuadrature(usize),
    #[error("singular Jacobian in element {element} (det = {det:e})")]
    SingularJacobian { element: usize, det: f64 },
    #[error("diffusion tensor is not positive semidefinite at ({x}, {y})")]
    IndefiniteDiffusion { x: f64, y: f64 },

    #[error("inconsistent boundary tags: {0}")]
    InconsistentTags(String),
    #[error("system has no free degrees of freedom")]
    EmptyFreeDofs,
    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("eigensolver failed: {0}")]
    EigenFailure(String),
    #[error("modal matrix is (near) defective: condition estimate {cond:e} exceeds {limit:e}")]
    Defective { cond: f64, limit: f64 },
    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("benchmark {0} has no closed-form solution")]
    NoExactSolution(String),
    #[error("exact solution vanishes at the probe point")]
    DivisionByZero,

    #[error("config error in field `{field}`: {msg}")]
    Config { field: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
