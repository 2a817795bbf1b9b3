use super::field::Field;
use super::vector::VectorField;
use crate::algebra_core::poly::{monomial_string, render_terms};
use crate::algebra_core::{same_ring, Polynomial, RingRef};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Differential p-form `Σ_{i1<...<ip} ω_I dx^{i1}∧...∧dx^{ip}`.
#[derive(Clone, Debug)]
pub struct PForm {
    ring: RingRef,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sort an index tuple, returning the permutation sign or `None` on repeats.
pub(crate) fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl PForm {
    pub fn zero(ring: &RingRef, degree: usize) -> Self {
        PForm { ring: ring.clone(), degree, comps: BTreeMap::new() }
    }
    pub fn function(h: Polynomial) -> Self {
        let ring = h.ring().clone();
        let mut f = PForm::zero(&ring, 0);
        f.insert(vec![], h);
        f
    }
    /// `dx^i`.
    pub fn dx(ring: &RingRef, i: usize) -> Self {
        let mut f = PForm::zero(ring, 1);
        f.insert(vec![i], Polynomial::one(ring));
        f
    }
    pub fn one_form(ring: &RingRef, comps: Vec<Polynomial>) -> Result<Self> {
        if comps.len() != ring.dim() {
            return Err(Error::DimensionMismatch { expected: ring.dim(), found: comps.len() });
        }
        let mut f = PForm::zero(ring, 1);
        for (i, c) in comps.into_iter().enumerate() {
            f.insert(vec![i], c);
        }
        Ok(f)
    }
    /// Build from arbitrary (possibly unsorted) index tuples.
    pub fn from_entries(ring: &RingRef, degree: usize, entries: Vec<(Vec<usize>, Polynomial)>) -> Result<Self> {
        if degree > ring.dim() {
            return Err(Error::DegreeOverflow(degree, ring.dim()));
        }
        let mut f = PForm::zero(ring, degree);
        for (idx, p) in entries {
            if idx.len() != degree || idx.iter().any(|&i| i >= ring.dim()) {
                return Err(Error::ArityMismatch(format!("index tuple {:?} for a {}-form", idx, degree)));
            }
            if let Some((s, sign)) = sort_sign(&idx) {
                f.insert(s, p.scale_scalar(&crate::algebra_core::Scalar::int(sign)));
            }
        }
        Ok(f)
    }
    fn insert(&mut self, idx: Vec<usize>, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let v = match self.comps.remove(&idx) {
            Some(old) => old.add(&p),
            None => p,
        };
        if !v.is_zero() {
            self.comps.insert(idx, v);
        }
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn comps(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.comps
    }
    pub fn comp(&self, idx: &[usize]) -> Polynomial {
        self.comps.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }
    /// Components of a 1-form as a dense vector.
    pub fn one_form_comps(&self) -> Vec<Polynomial> {
        (0..self.ring.dim()).map(|i| self.comp(&[i])).collect()
    }
    pub fn as_function(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.comp(&[]))
    }

    /// Exterior derivative of a function.
    pub fn d_function(h: &Polynomial) -> PForm {
        let ring = h.ring().clone();
        let mut f = PForm::zero(&ring, 1);
        for i in 0..ring.dim() {
            f.insert(vec![i], h.partial(i));
        }
        f
    }
    /// Exterior derivative.
    pub fn d(&self) -> PForm {
        let n = self.ring.dim();
        let mut out = PForm::zero(&self.ring, self.degree + 1);
        for (idx, p) in &self.comps {
            for i in 0..n {
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                let mut full = vec![i];
                full.extend(idx);
                if let Some((s, sign)) = sort_sign(&full) {
                    out.insert(s, dp.scale_scalar(&crate::algebra_core::Scalar::int(sign)));
                }
            }
        }
        out
    }
    /// `self ∧ o`.
    pub fn wedge(&self, o: &PForm) -> Result<PForm> {
        let deg = self.degree + o.degree;
        if deg > self.ring.dim() {
            return Err(Error::DegreeOverflow(deg, self.ring.dim()));
        }
        let mut out = PForm::zero(&self.ring, deg);
        for (a, p) in &self.comps {
            for (b, q) in &o.comps {
                let mut full = a.clone();
                full.extend(b);
                if let Some((s, sign)) = sort_sign(&full) {
                    out.insert(s, p.mul(q).scale_scalar(&crate::algebra_core::Scalar::int(sign)));
                }
            }
        }
        Ok(out)
    }
    /// Interior product `i_X`.
    pub fn insert_vector(&self, x: &VectorField) -> PForm {
        if self.degree == 0 {
            return PForm::zero(&self.ring, 0);
        }
        let mut out = PForm::zero(&self.ring, self.degree - 1);
        for (idx, p) in &self.comps {
            for (s, &i) in idx.iter().enumerate() {
                let xi = x.comp(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(s);
                let v = xi.mul(p);
                out.insert(rest, if s % 2 == 0 { v } else { v.neg() });
            }
        }
        out
    }
    /// Rewrite a 1-form in coordinates `target` with `x = m y`:
    /// `ω'_j = Σ_i ω_i(m y) m_{ij}`.
    pub fn linear_substitution(&self, target: &RingRef, m: &[Vec<crate::algebra_core::Scalar>]) -> Result<PForm> {
        if self.degree > 1 {
            return Err(Error::ArityMismatch("coordinate change implemented for degree ≤ 1".into()));
        }
        if self.degree == 0 {
            return Ok(PForm::function(self.comp(&[]).linear_substitution(target, m)?));
        }
        let n = self.ring.dim();
        let sub: Vec<Polynomial> = (0..n).map(|i| self.comp(&[i]).linear_substitution(target, m)).collect::<Result<_>>()?;
        let comps = (0..n)
            .map(|j| {
                let mut acc = Polynomial::zero(target);
                for (i, c) in sub.iter().enumerate() {
                    if !m[i][j].is_zero() {
                        acc.add_assign(&c.scale_scalar(&m[i][j]));
                    }
                }
                acc
            })
            .collect();
        PForm::one_form(target, comps)
    }
    /// `⟨X, ω⟩` for a 1-form.
    pub fn pair(&self, x: &VectorField) -> Result<Polynomial> {
        if self.degree != 1 {
            return Err(Error::ArityMismatch(format!("pairing a vector field with a {}-form", self.degree)));
        }
        Ok(self.insert_vector(x).comp(&[]))
    }
}

impl Field for PForm {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    /// Cartan formula `L_X = i_X d + d i_X`.
    fn lie(&self, x: &VectorField) -> Self {
        if self.degree == 0 {
            return PForm::function(x.apply(&self.comp(&[])));
        }
        let a = self.d().insert_vector(x);
        let b = self.insert_vector(x).d();
        a.add(&b)
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.comps {
            out.insert(k.clone(), v.clone());
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
    fn zero_like(&self) -> Self {
        PForm::zero(&self.ring, self.degree)
    }
    fn map_polys(&self, f: &dyn Fn(&Polynomial) -> Polynomial) -> Self {
        let mut out = self.zero_like();
        for (k, v) in &self.comps {
            out.insert(k.clone(), f(v));
        }
        out
    }
    fn try_map_polys(&self, f: &dyn Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        let mut out = self.zero_like();
        for (k, v) in &self.comps {
            out.insert(k.clone(), f(v)?);
        }
        Ok(out)
    }
}

impl PartialEq for PForm {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.degree == o.degree && self.agrees_with(o)
    }
}

pub(crate) fn form_basis_string(ring: &RingRef, idx: &[usize]) -> String {
    let ds: Vec<String> = idx.iter().map(|&i| format!("d({})", ring.coords[i])).collect();
    match ds.len() {
        0 => String::new(),
        1 => ds[0].clone(),
        _ => {
            let mut s = ds[ds.len() - 1].clone();
            for d in ds[..ds.len() - 1].iter().rev() {
                s = format!("wedge({}, {})", d, s);
            }
            s
        }
    }
}

impl fmt::Display for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.ring;
        let items = self.comps.iter().flat_map(|(idx, c)| {
            let basis = form_basis_string(ring, idx);
            c.terms().iter().rev().map(move |(m, s)| {
                let mut fs = monomial_string(ring, m);
                if !basis.is_empty() {
                    fs.push(basis.clone());
                }
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

    #[test]
    fn d_squared_vanishes() {
        let r = Ring::standard("x", 3, &[]);
        let p = Polynomial::var(&r, 0).mul(&Polynomial::var(&r, 1)).mul(&Polynomial::var(&r, 2));
        assert!(PForm::d_function(&p).d().is_zero());
    }

    #[test]
    fn wedge_antisymmetric() {
        let r = Ring::standard("x", 3, &[]);
        let a = PForm::dx(&r, 0).wedge(&PForm::dx(&r, 1)).unwrap();
        let b = PForm::dx(&r, 1).wedge(&PForm::dx(&r, 0)).unwrap();
        assert!(a.add(&b).is_zero());
        assert!(PForm::dx(&r, 2).wedge(&PForm::dx(&r, 2)).unwrap().is_zero());
        assert_eq!(a.to_string(), "wedge(d(x1), d(x2))");
    }

    #[test]
    fn lie_of_one_form() {
        let r = Ring::standard("x", 3, &[]);
        let w = PForm::dx(&r, 0).mul_poly(&Polynomial::var(&r, 2));
        let d3 = VectorField::partial(&r, 2);
        assert_eq!(w.lie(&d3), PForm::dx(&r, 0));
    }

    #[test]
    fn d_of_cylinder_polynomial() {
        let r = Ring::standard("x", 3, &["c"]);
        let a = Scalar::int(3);
        let f = Polynomial::var(&r, 0)
            .pow(2)
            .add(&Polynomial::var(&r, 1).pow(2).scale_scalar(&a))
            .scale_scalar(&Scalar::frac(1, 2))
            .sub(&Polynomial::param(&r, 0, 1));
        let df = PForm::d_function(&f);
        let expect = PForm::one_form(&r, vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1).scale_scalar(&a), Polynomial::zero(&r)]).unwrap();
        assert_eq!(df, expect);
    }

    #[test]
    fn degree_overflow() {
        let r = Ring::standard("x", 2, &[]);
        let a = PForm::dx(&r, 0).wedge(&PForm::dx(&r, 1)).unwrap();
        assert!(matches!(a.wedge(&PForm::dx(&r, 0)), Err(Error::DegreeOverflow(3, 2))));
    }
}
