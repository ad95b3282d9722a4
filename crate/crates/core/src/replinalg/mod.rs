//! Exact linear algebra and the concrete representations everything else is
//! checked against.

pub mod closure;
pub mod echelon;
pub mod matrix;
pub mod poly;
pub mod rep;

pub use closure::{algebra_closure, AlgebraClosure};
pub use echelon::Echelon;
pub use matrix::ExactMatrix;
pub use poly::{minimal_polynomial, Poly};
pub use rep::{
    form_matrix, natural_rep, natural_weights, tensor_lift, tensor_power_rep, tower_degrees,
    tower_rep, Carrier, GeneratorSet, Representation,
};
