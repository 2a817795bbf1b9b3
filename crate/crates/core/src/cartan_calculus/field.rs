use crate::algebra_core::{NuSeries, PolyModule, Polynomial, ReductionBasis, RingRef};
use crate::error::Result;

use super::VectorField;

/// Common interface of functions, vector fields, forms and tensors:
/// the carriers on which vector fields act by Lie derivative.
pub trait Field: Clone + std::fmt::Debug {
    fn ring(&self) -> &RingRef;
    /// Lie derivative `L_X(self)`.
    fn lie(&self, x: &VectorField) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn map_polys(&self, f: &dyn Fn(&Polynomial) -> Polynomial) -> Self;
    fn try_map_polys(&self, f: &dyn Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self>;

    fn neg(&self) -> Self {
        self.map_polys(&|p| p.neg())
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn scale(&self, s: &NuSeries) -> Self {
        self.map_polys(&|p| p.scale(s))
    }
    fn mul_poly(&self, h: &Polynomial) -> Self {
        self.map_polys(&|p| p.mul(h))
    }
    fn truncate(&self, n: usize) -> Self {
        self.map_polys(&|p| p.truncate(n))
    }
    fn conj(&self) -> Self {
        self.map_polys(&|p| p.conj())
    }
    fn nu_coeff(&self, k: usize) -> Self {
        self.map_polys(&|p| p.nu_coeff(k))
    }
    fn classical(&self) -> Self {
        self.nu_coeff(0)
    }
    fn reduce_mod(&self, b: &ReductionBasis) -> Result<Self> {
        self.try_map_polys(&|p| b.reduce(p))
    }
    /// Equality through the truncation caps.
    fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl<T: Field> PolyModule for T {
    fn mul_poly(&self, p: &Polynomial) -> Self {
        Field::mul_poly(self, p)
    }
    fn add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Field::sub(self, o)
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn reduce_mod(&self, b: &ReductionBasis) -> Result<Self> {
        Field::reduce_mod(self, b)
    }
}

impl Field for Polynomial {
    fn ring(&self) -> &RingRef {
        Polynomial::ring(self)
    }
    fn lie(&self, x: &VectorField) -> Self {
        x.apply(self)
    }
    fn add(&self, o: &Self) -> Self {
        Polynomial::add(self, o)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Polynomial::zero(Polynomial::ring(self))
    }
    fn map_polys(&self, f: &dyn Fn(&Polynomial) -> Polynomial) -> Self {
        f(self)
    }
    fn try_map_polys(&self, f: &dyn Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        f(self)
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn sub(&self, o: &Self) -> Self {
        Polynomial::sub(self, o)
    }
}
