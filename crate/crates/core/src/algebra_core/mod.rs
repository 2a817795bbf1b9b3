//! Exact scalars, ν-series, polynomials over Laurent parameters, and
//! normal forms modulo level-set ideals.

pub mod fraction;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod series;

pub use fraction::{clear_parameter_denominators, Fraction, PolyModule, RationalFunction};
pub use ideal::{ideal_reduce, ReductionBasis};
pub use poly::{same_ring, Monomial, Polynomial, Ring, RingRef};
pub use scalar::Scalar;
pub use series::{NuSeries, DEFAULT_ORDER};
