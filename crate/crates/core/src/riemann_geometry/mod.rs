//! Constant ambient metrics, the flat Levi-Civita connection, fundamental
//! forms of level sets, intrinsic curvature and symmetry checks.

pub mod connection;
pub mod curvature;
pub mod metric;
pub mod symmetry;

pub use connection::{first_form, flat_nabla, projected_nabla, second_form, second_form_closed};
pub use curvature::{gauss_curvature_tensor, gauss_residual, intrinsic_curvature, principal_curvatures, ricci, ricci_scalar, Principal, RicciConvention};
pub use metric::{Metric, Signature};
pub use symmetry::{equivariance_residual, is_killing, killing_residual, killing_residual_tangent};
