use super::field::Field;
use crate::algebra_core::poly::{monomial_string, render_terms};
use crate::algebra_core::{same_ring, Polynomial, RingRef};
use crate::error::{Error, Result};
use std::fmt;

/// `X = X^i ∂_i` with polynomial components.
#[derive(Clone, Debug)]
pub struct VectorField {
    ring: RingRef,
    comps: Vec<Polynomial>,
}

impl VectorField {
    pub fn zero(ring: &RingRef) -> Self {
        VectorField { ring: ring.clone(), comps: (0..ring.dim()).map(|_| Polynomial::zero(ring)).collect() }
    }
    pub fn new(ring: &RingRef, comps: Vec<Polynomial>) -> Result<Self> {
        if comps.len() != ring.dim() {
            return Err(Error::DimensionMismatch { expected: ring.dim(), found: comps.len() });
        }
        for c in &comps {
            if !same_ring(c.ring(), ring) {
                return Err(Error::CoordinateMismatch(ring.id.clone(), c.ring().id.clone()));
            }
        }
        Ok(VectorField { ring: ring.clone(), comps })
    }
    /// Coordinate field `∂_i`.
    pub fn partial(ring: &RingRef, i: usize) -> Self {
        let mut v = VectorField::zero(ring);
        v.comps[i] = Polynomial::one(ring);
        v
    }
    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }
    pub fn comp(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }
    pub fn dim(&self) -> usize {
        self.comps.len()
    }
    /// `X(h) = X^i ∂_i h`.
    pub fn apply(&self, h: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = h.partial(i);
            if !d.is_zero() {
                out.add_assign(&c.mul(&d));
            }
        }
        out
    }
    /// `[X, Y]`.
    pub fn bracket(&self, y: &VectorField) -> VectorField {
        let comps = (0..self.dim()).map(|j| self.apply(&y.comps[j]).sub(&y.apply(&self.comps[j]))).collect();
        VectorField { ring: self.ring.clone(), comps }
    }
    pub fn try_bracket(&self, y: &VectorField) -> Result<VectorField> {
        if self.dim() != y.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: y.dim() });
        }
        Ok(self.bracket(y))
    }
    /// Rewrite in coordinates `target` with `x = m y`: `Y^j = Σ_i (m⁻¹)_{ji} X^i(m y)`.
    pub fn linear_substitution(&self, target: &RingRef, m: &[Vec<crate::algebra_core::Scalar>]) -> Result<VectorField> {
        let inv = crate::algebra_core::linalg::inverse(m).ok_or(Error::SingularSubstitution)?;
        let sub: Vec<Polynomial> = self.comps.iter().map(|c| c.linear_substitution(target, m)).collect::<Result<_>>()?;
        let n = self.dim();
        let comps = (0..n)
            .map(|j| {
                let mut acc = Polynomial::zero(target);
                for (i, c) in sub.iter().enumerate() {
                    if !inv[j][i].is_zero() {
                        acc.add_assign(&c.scale_scalar(&inv[j][i]));
                    }
                }
                acc
            })
            .collect();
        Ok(VectorField { ring: target.clone(), comps })
    }
    /// Component-wise product `Σ_i X^i Y^i` weighted by a constant matrix.
    pub fn contract(&self, g: &[Vec<crate::algebra_core::Scalar>], y: &VectorField) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for i in 0..self.dim() {
            if self.comps[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if g[i][j].is_zero() || y.comps[j].is_zero() {
                    continue;
                }
                out.add_assign(&self.comps[i].mul(&y.comps[j]).scale_scalar(&g[i][j]));
            }
        }
        out
    }
}

/// Coefficients `c` with `v = Σ c_k basis_k` over the scalars, if any.
pub fn constant_combination(basis: &[VectorField], v: &VectorField) -> Option<Vec<crate::algebra_core::Scalar>> {
    use crate::algebra_core::{Monomial, Scalar};
    use std::collections::BTreeMap;
    let mut keys: BTreeMap<(usize, Monomial, usize), usize> = BTreeMap::new();
    let mut key_of = |i: usize, m: &Monomial, k: usize| {
        let n = keys.len();
        *keys.entry((i, m.clone(), k)).or_insert(n)
    };
    let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for g in basis.iter().chain(std::iter::once(v)) {
        let mut col = Vec::new();
        for (i, c) in g.comps.iter().enumerate() {
            for (m, s) in c.terms() {
                for (k, x) in s.coeffs().iter().enumerate() {
                    if !x.is_zero() {
                        col.push((key_of(i, m, k), x.clone()));
                    }
                }
            }
        }
        cols.push(col);
    }
    let rows = keys.len();
    let target = cols.pop().unwrap();
    let mut a = vec![vec![Scalar::zero(); basis.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for (r, x) in col {
            a[*r][j] = x.clone();
        }
    }
    let mut b = vec![Scalar::zero(); rows];
    for (r, x) in target {
        b[r] = x;
    }
    if rows == 0 {
        return Some(vec![Scalar::zero(); basis.len()]);
    }
    crate::algebra_core::linalg::solve(&a, &b)
}

/// Rank of a family of vector fields over the scalars.
pub fn constant_rank(fields: &[VectorField]) -> usize {
    let mut kept: Vec<VectorField> = Vec::new();
    for f in fields {
        if constant_combination(&kept, f).is_none() {
            kept.push(f.clone());
        }
    }
    kept.len()
}

impl Field for VectorField {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    fn lie(&self, x: &VectorField) -> Self {
        x.bracket(self)
    }
    fn add(&self, o: &Self) -> Self {
        VectorField { ring: self.ring.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect() }
    }
    fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
    fn zero_like(&self) -> Self {
        VectorField::zero(&self.ring)
    }
    fn map_polys(&self, f: &dyn Fn(&Polynomial) -> Polynomial) -> Self {
        VectorField { ring: self.ring.clone(), comps: self.comps.iter().map(f).collect() }
    }
    fn try_map_polys(&self, f: &dyn Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        Ok(VectorField { ring: self.ring.clone(), comps: self.comps.iter().map(f).collect::<Result<_>>()? })
    }
}

impl PartialEq for VectorField {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.agrees_with(o)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.ring;
        let items = self.comps.iter().enumerate().flat_map(|(i, c)| {
            c.terms().iter().rev().map(move |(m, s)| {
                let mut fs = monomial_string(ring, m);
                fs.push(format!("d{}", i + 1));
                (fs, s.clone())
            })
        });
        f.write_str(&render_terms(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Ring, Scalar};

    fn l(r: &RingRef, i: usize, j: usize) -> VectorField {
        let mut c: Vec<Polynomial> = (0..3).map(|_| Polynomial::zero(r)).collect();
        c[j] = Polynomial::var(r, i);
        c[i] = Polynomial::var(r, j).neg();
        VectorField::new(r, c).unwrap()
    }

    #[test]
    fn rotation_brackets() {
        let r = Ring::standard("x", 3, &[]);
        let l12 = l(&r, 0, 1);
        let l13 = VectorField::new(&r, vec![Polynomial::zero(&r), Polynomial::zero(&r), Polynomial::var(&r, 0)]).unwrap();
        let l23 = VectorField::new(&r, vec![Polynomial::zero(&r), Polynomial::zero(&r), Polynomial::var(&r, 1)]).unwrap();
        assert_eq!(l12.bracket(&l13), l23.neg());
        assert!(l12.bracket(&l12).is_zero());
        assert_eq!(l12.to_string(), "-x2*d1 + x1*d2");
        let _ = Scalar::one();
    }
}
