use super::scalar::Scalar;
use std::fmt;

/// Truncated power series in ν.
///
/// `cap == None` means the value is an exact polynomial in ν (nothing was
/// ever truncated away); `Some(n)` means coefficients above `ν^n` are unknown.
/// `exact` records that no nonzero coefficient has been discarded while
/// producing this value; it never flips back to `true`.
#[derive(Clone, Debug)]
pub struct NuSeries {
    coeffs: Vec<Scalar>,
    cap: Option<usize>,
    exact: bool,
}

pub const DEFAULT_ORDER: usize = 4;

fn min_cap(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl NuSeries {
    pub fn zero() -> Self {
        NuSeries { coeffs: Vec::new(), cap: None, exact: true }
    }
    pub fn scalar(s: Scalar) -> Self {
        NuSeries::from_coeffs(vec![s], None)
    }
    pub fn one() -> Self {
        NuSeries::scalar(Scalar::one())
    }
    /// `s ν^k`, optionally truncated at `cap`.
    pub fn monomial(s: Scalar, k: usize, cap: Option<usize>) -> Self {
        let mut v = vec![Scalar::zero(); k];
        v.push(s);
        NuSeries::from_coeffs(v, cap)
    }
    pub fn nu() -> Self {
        NuSeries::monomial(Scalar::one(), 1, None)
    }
    pub fn from_coeffs(coeffs: Vec<Scalar>, cap: Option<usize>) -> Self {
        let mut s = NuSeries { coeffs, cap, exact: true };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(n) = self.cap {
            if self.coeffs.len() > n + 1 {
                if self.coeffs[n + 1..].iter().any(|c| !c.is_zero()) {
                    self.exact = false;
                }
                self.coeffs.truncate(n + 1);
            }
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }
    pub fn cap(&self) -> Option<usize> {
        self.cap
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn mark_inexact(mut self) -> Self {
        self.exact = false;
        self
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Highest nonzero ν-power, if any.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Lowest nonzero ν-power, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.cap = min_cap(out.cap, Some(n));
        out.normalize();
        out
    }
    /// Same coefficients, cap replaced (used when lifting exact data into a
    /// truncated computation).
    pub fn with_cap(&self, cap: Option<usize>) -> Self {
        let mut out = self.clone();
        out.cap = cap;
        out.normalize();
        out
    }

    pub fn add(&self, o: &NuSeries) -> NuSeries {
        let len = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(len);
        for k in 0..len {
            let a = self.coeffs.get(k);
            let b = o.coeffs.get(k);
            v.push(match (a, b) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut s = NuSeries { coeffs: v, cap: min_cap(self.cap, o.cap), exact: self.exact && o.exact };
        s.normalize();
        s
    }
    pub fn sub(&self, o: &NuSeries) -> NuSeries {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> NuSeries {
        NuSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), cap: self.cap, exact: self.exact }
    }
    pub fn scale(&self, s: &Scalar) -> NuSeries {
        if s.is_zero() {
            return NuSeries { coeffs: Vec::new(), cap: self.cap, exact: self.exact };
        }
        NuSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect(), cap: self.cap, exact: self.exact }
    }
    /// Multiply by `ν^k`.
    pub fn shift(&self, k: usize) -> NuSeries {
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        let mut s = NuSeries { coeffs: v, cap: self.cap, exact: self.exact };
        if self.coeffs.is_empty() {
            s.coeffs.clear();
        }
        s.normalize();
        s
    }
    pub fn mul(&self, o: &NuSeries) -> NuSeries {
        let cap = min_cap(self.cap, o.cap);
        let exact = self.exact && o.exact;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return NuSeries { coeffs: Vec::new(), cap, exact };
        }
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let mut v = vec![Scalar::zero(); full];
        let mut dropped = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if matches!(cap, Some(n) if i + j > n) {
                    dropped = true;
                    continue;
                }
                let p = a * b;
                v[i + j] += &p;
            }
        }
        let mut s = NuSeries { coeffs: v, cap, exact: exact && !dropped };
        s.normalize();
        s
    }
    pub fn conj(&self) -> NuSeries {
        NuSeries { coeffs: self.coeffs.iter().map(|c| c.conj()).collect(), cap: self.cap, exact: self.exact }
    }
    /// Inverse in the truncated ring; needs a nonzero constant term and,
    /// unless the series is constant, a finite cap.
    pub fn inv(&self) -> Option<NuSeries> {
        let a0inv = self.coeff(0).inv()?;
        if self.is_constant() {
            return Some(NuSeries { coeffs: vec![a0inv], cap: self.cap, exact: self.exact });
        }
        let n = self.cap?;
        let mut b = vec![Scalar::zero(); n + 1];
        b[0] = a0inv.clone();
        for k in 1..=n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                let aj = self.coeff(j);
                if !aj.is_zero() {
                    acc += &(&aj * &b[k - j]);
                }
            }
            b[k] = -(&acc * &a0inv);
        }
        Some(NuSeries { coeffs: b, cap: Some(n), exact: self.exact }.normalized())
    }
    fn normalized(mut self) -> Self {
        self.normalize();
        self
    }
    pub fn pow(&self, k: u32) -> NuSeries {
        let mut out = NuSeries::one().with_cap(self.cap);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
    /// Value at ν = 0 as a series.
    pub fn classical(&self) -> NuSeries {
        NuSeries::from_coeffs(vec![self.coeff(0)], self.cap)
    }
    /// Coefficient-wise equality through the smaller of the two caps.
    pub fn agrees_with(&self, o: &NuSeries) -> bool {
        let cap = min_cap(self.cap, o.cap);
        let len = self.coeffs.len().max(o.coeffs.len());
        let upto = match cap {
            Some(n) => len.min(n + 1),
            None => len,
        };
        (0..upto).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl PartialEq for NuSeries {
    fn eq(&self, o: &Self) -> bool {
        self.agrees_with(o)
    }
}

impl From<Scalar> for NuSeries {
    fn from(s: Scalar) -> Self {
        NuSeries::scalar(s)
    }
}

/// Renders one `c*nu^k` factor list; callers append monomials.
pub(crate) fn term_strings(s: &NuSeries) -> Vec<(Scalar, usize)> {
    s.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), k)).collect()
}

impl fmt::Display for NuSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = term_strings(self);
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, k) in terms {
            let body = match k {
                0 => c.to_string(),
                _ => {
                    let nu = if k == 1 { "nu".to_string() } else { format!("nu^{}", k) };
                    if c.is_one() {
                        nu
                    } else if (-&c).is_one() {
                        format!("-{}", nu)
                    } else {
                        format!("{}*{}", c, nu)
                    }
                }
            };
            if first {
                write!(f, "{}", body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", body)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64], cap: Option<usize>) -> NuSeries {
        NuSeries::from_coeffs(v.iter().map(|&x| Scalar::int(x)).collect(), cap)
    }

    #[test]
    fn truncating_product_flags_loss() {
        let a = s(&[1, 1], Some(1));
        let b = a.mul(&a);
        assert_eq!(b.coeffs().len(), 2);
        assert!(!b.is_exact());
        let c = s(&[1, 0, 0], Some(3)).mul(&s(&[2, 3], Some(3)));
        assert!(c.is_exact());
    }

    #[test]
    fn exact_flag_monotone() {
        let lossy = s(&[1, 1], Some(1)).mul(&s(&[0, 1], Some(1)));
        assert!(!lossy.is_exact());
        assert!(!lossy.add(&NuSeries::one()).is_exact());
        assert!(!lossy.mul(&NuSeries::one()).is_exact());
    }

    #[test]
    fn inverse_series() {
        let a = s(&[1, 2, 3], Some(4));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).agrees_with(&NuSeries::one()));
    }

    #[test]
    fn display_matches_grammar() {
        let a = NuSeries::from_coeffs(vec![Scalar::one(), Scalar::i(), Scalar::frac(-1, 2)], None);
        assert_eq!(a.to_string(), "1 + i*nu - 1/2*nu^2");
    }
}
