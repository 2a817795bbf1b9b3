use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Gaussian rational `re + i im` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn one() -> Self {
        Scalar::int(1)
    }
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }
    pub fn int(n: i64) -> Self {
        Scalar { re: rat(n, 1), im: BigRational::zero() }
    }
    pub fn frac(n: i64, d: i64) -> Self {
        Scalar { re: rat(n, d), im: BigRational::zero() }
    }
    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar { re: rat(re.0, re.1), im: rat(im.0, im.1) }
    }
    pub fn from_rational(r: BigRational) -> Self {
        Scalar { re: r, im: BigRational::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
    /// Exact square root when one exists in ℚ(i) for real inputs
    /// (negative rationals map to imaginary roots).
    pub fn sqrt_exact(&self) -> Option<Self> {
        if !self.is_real() {
            return None;
        }
        let neg = self.re.is_negative();
        let a = self.re.abs();
        let n = isqrt(a.numer())?;
        let d = isqrt(a.denom())?;
        let r = BigRational::new(n, d);
        Some(if neg { Scalar { re: BigRational::zero(), im: r } } else { Scalar { re: r, im: BigRational::zero() } })
    }
}

fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Scalar { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}
macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Grammar-compatible rendering: `3/2`, `i`, `-1/2*i`, `(1+2*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = !self.re.is_zero();
        let im = !self.im.is_zero();
        let imag = |r: &BigRational| -> String {
            if r.is_one() {
                "i".to_string()
            } else if (-r.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rat(r))
            }
        };
        match (re, im) {
            (false, false) => write!(f, "0"),
            (true, false) => write!(f, "{}", fmt_rat(&self.re)),
            (false, true) => write!(f, "{}", imag(&self.im)),
            (true, true) => {
                let s = imag(&self.im);
                if s.starts_with('-') {
                    write!(f, "({}{})", fmt_rat(&self.re), s)
                } else {
                    write!(f, "({}+{})", fmt_rat(&self.re), s)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::gaussian((1, 2), (-3, 4));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(Scalar::frac(9, 4).sqrt_exact(), Some(Scalar::frac(3, 2)));
        assert_eq!(Scalar::int(-4).sqrt_exact(), Some(&Scalar::int(2) * &Scalar::i()));
        assert_eq!(Scalar::int(2).sqrt_exact(), None);
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::frac(-3, 2).to_string(), "-3/2");
        assert_eq!(Scalar::gaussian((1, 1), (-1, 2)).to_string(), "(1-1/2*i)");
        assert_eq!(Scalar::i().to_string(), "i");
    }
}
