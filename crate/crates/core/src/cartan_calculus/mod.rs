//! Functions, vector fields, forms and tensors with Lie derivative, exterior
//! derivative, wedge, contraction and pairing.

pub mod field;
pub mod forms;
pub mod tensor;
pub mod vector;

pub use field::Field;
pub use forms::PForm;
pub use tensor::TensorField;
pub use vector::{constant_combination, constant_rank, VectorField};
