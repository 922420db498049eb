//! Scalar special functions: Gamma, Bessel J0 and the one-parameter
//! Mittag-Leffler function on the complex plane.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod mittag_leffler;

pub use bessel::bessel_j0;
pub use gamma::gamma_fn;
pub use mittag_leffler::{mittag_leffler, mittag_leffler_real, MLConfig};

/// Complex argument/value type of the Mittag-Leffler function.
pub type ComplexScalar = num_complex::Complex64;
