use super::ideal::ReductionBasis;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use std::fmt;

/// Values that can be multiplied by polynomials and added.
pub trait PolyModule: Clone {
    fn mul_poly(&self, p: &Polynomial) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Reduce every polynomial entry modulo the basis.
    fn reduce_mod(&self, b: &ReductionBasis) -> Result<Self>;
}

/// `numerator / denominator` with a polynomial denominator.
#[derive(Clone, Debug)]
pub struct Fraction<T: PolyModule> {
    pub num: T,
    pub den: Polynomial,
}

pub type RationalFunction = Fraction<Polynomial>;

impl<T: PolyModule> Fraction<T> {
    pub fn new(num: T, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Singular("zero denominator".into()));
        }
        Ok(Fraction { num, den })
    }
    pub fn whole(num: T, ring: &super::RingRef) -> Self {
        Fraction { num, den: Polynomial::one(ring) }
    }
    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Fraction { num: self.num.add(&o.num), den: self.den.clone() };
        }
        Fraction { num: self.num.mul_poly(&o.den).add(&o.num.mul_poly(&self.den)), den: self.den.mul(&o.den) }
    }
    pub fn sub(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Fraction { num: self.num.sub(&o.num), den: self.den.clone() };
        }
        Fraction { num: self.num.mul_poly(&o.den).sub(&o.num.mul_poly(&self.den)), den: self.den.mul(&o.den) }
    }
    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        Fraction { num: self.num.mul_poly(&r.num), den: self.den.mul(&r.den) }
    }
    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Fraction { num: self.num.mul_poly(p), den: self.den.clone() }
    }
    /// Exact equality of rational values (cross-multiplied).
    pub fn equals(&self, o: &Self) -> bool {
        self.num.mul_poly(&o.den).sub(&o.num.mul_poly(&self.den)).is_zero()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// Representative modulo the ideal when the denominator reduces to a
    /// unit (scalar times parameter monomial).
    pub fn on_shell(&self, b: &ReductionBasis) -> Result<T> {
        let d = b.reduce(&self.den)?;
        let inv = d.unit_inverse().ok_or_else(|| Error::Singular(format!("denominator `{}` is not a unit modulo the ideal", d)))?;
        self.num.mul_poly(&inv).reduce_mod(b)
    }
}

impl RationalFunction {
    pub fn from_poly(p: Polynomial) -> Self {
        let ring = p.ring().clone();
        Fraction { num: p, den: Polynomial::one(&ring) }
    }
    pub fn mul(&self, o: &Self) -> Self {
        Fraction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }
    pub fn inv(&self) -> Result<Self> {
        Fraction::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
    /// Quotient rule.
    pub fn partial(&self, i: usize) -> Self {
        Fraction { num: self.num.partial(i).mul(&self.den).sub(&self.num.mul(&self.den.partial(i))), den: self.den.mul(&self.den) }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c == super::NuSeries::one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Split a polynomial with negative parameter powers into a rational
/// function whose denominator is a parameter monomial.
pub fn clear_parameter_denominators(p: &Polynomial) -> RationalFunction {
    let ring = p.ring().clone();
    let np = ring.nparams();
    let mut shift = vec![0i32; np];
    for m in p.terms().keys() {
        for (j, &e) in m.p.iter().enumerate() {
            shift[j] = shift[j].max(-e);
        }
    }
    let mono = super::poly::Monomial { c: vec![0; ring.dim()], p: shift.clone() };
    let num = p.mul_monomial(&mono, &super::NuSeries::one());
    let den = Polynomial::from_term(&ring, mono, super::NuSeries::one());
    Fraction { num, den }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Ring, Scalar};

    #[test]
    fn quotient_rule() {
        let r = Ring::standard("x", 2, &[]);
        let x = Polynomial::var(&r, 0);
        let q = RationalFunction::new(Polynomial::one(&r), x.clone()).unwrap();
        let d = q.partial(0);
        let expect = RationalFunction::new(Polynomial::int(&r, -1), x.mul(&x)).unwrap();
        assert!(d.equals(&expect));
    }

    #[test]
    fn on_shell_inverse() {
        let r = Ring::standard("x", 3, &["c"]);
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let e = x1.pow(2).add(&x2.pow(2));
        let f = e.scale_scalar(&Scalar::frac(1, 2)).sub(&Polynomial::param(&r, 0, 1));
        let b = ReductionBasis::new(&[f]).unwrap();
        let k = RationalFunction::new(Polynomial::one(&r), e).unwrap();
        let v = k.on_shell(&b).unwrap();
        assert_eq!(v, Polynomial::param(&r, 0, -1).scale_scalar(&Scalar::frac(1, 2)));
    }

    #[test]
    fn parameter_denominators() {
        let r = Ring::standard("x", 1, &["c"]);
        let p = Polynomial::param(&r, 0, -1).scale_scalar(&Scalar::int(-1));
        let q = clear_parameter_denominators(&p);
        assert_eq!(q.to_string(), "(-1)/(c)");
    }
}
