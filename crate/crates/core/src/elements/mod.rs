//! Shape functions, quadrature and per-element matrices.

mod coefficients;
mod matrices;
mod quadrature;
mod shape;

pub use coefficients::{CoefficientField, Field};
pub use matrices::{
    default_quadrature_order, element_matrices, ElementMatrices, FaceCondition, FaceLoad,
};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use shape::{jacobian, physical_gradients, shape_values, ShapeEval};
