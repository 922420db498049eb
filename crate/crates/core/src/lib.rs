pub mod assembly;
pub mod benchmarks;
pub mod cli;
pub mod config;
pub mod elements;
pub mod error;
pub mod io;
pub mod mesh;
pub mod problem;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};
