use super::field::Field;
use super::forms::{sort_sign, PForm};
use super::vector::VectorField;
use crate::algebra_core::poly::{monomial_string, render_terms};
use crate::algebra_core::{same_ring, Polynomial, RingRef, Scalar};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Tensor of type (p, r): p form slots followed by r vector slots, in the
/// coordinate basis `dx^{i1}⊗...⊗dx^{ip}⊗∂_{j1}⊗...⊗∂_{jr}`.
#[derive(Clone, Debug)]
pub struct TensorField {
    ring: RingRef,
    p: usize,
    r: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

impl TensorField {
    pub fn zero(ring: &RingRef, p: usize, r: usize) -> Self {
        TensorField { ring: ring.clone(), p, r, comps: BTreeMap::new() }
    }
    pub fn from_poly(h: &Polynomial) -> Self {
        let mut t = TensorField::zero(h.ring(), 0, 0);
        t.insert(vec![], h.clone());
        t
    }
    pub fn from_vector(x: &VectorField) -> Self {
        let mut t = TensorField::zero(x.ring(), 0, 1);
        for (i, c) in x.comps().iter().enumerate() {
            t.insert(vec![i], c.clone());
        }
        t
    }
    /// Antisymmetric expansion of a p-form (`dx∧dy = dx⊗dy − dy⊗dx`).
    pub fn from_form(w: &PForm) -> Self {
        let p = w.degree();
        let mut t = TensorField::zero(w.ring(), p, 0);
        for (idx, c) in w.comps() {
            for perm in permutations(idx) {
                let (_, sign) = sort_sign(&perm).expect("distinct indices");
                t.insert(perm, c.scale_scalar(&Scalar::int(sign)));
            }
        }
        t
    }
    pub fn from_entries(ring: &RingRef, p: usize, r: usize, entries: Vec<(Vec<usize>, Polynomial)>) -> Result<Self> {
        let mut t = TensorField::zero(ring, p, r);
        for (idx, c) in entries {
            if idx.len() != p + r || idx.iter().any(|&i| i >= ring.dim()) {
                return Err(Error::ArityMismatch(format!("index tuple {:?} for type ({}, {})", idx, p, r)));
            }
            t.insert(idx, c);
        }
        Ok(t)
    }
    fn insert(&mut self, idx: Vec<usize>, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        let v = match self.comps.remove(&idx) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.comps.insert(idx, v);
        }
    }
    pub fn rank(&self) -> (usize, usize) {
        (self.p, self.r)
    }
    pub fn comps(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.comps
    }
    pub fn comp(&self, idx: &[usize]) -> Polynomial {
        self.comps.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }
    pub fn as_poly(&self) -> Option<Polynomial> {
        (self.p == 0 && self.r == 0).then(|| self.comp(&[]))
    }
    pub fn as_vector(&self) -> Option<VectorField> {
        (self.p == 0 && self.r == 1).then(|| VectorField::new(&self.ring, (0..self.ring.dim()).map(|i| self.comp(&[i])).collect()).unwrap())
    }
    pub fn as_one_form(&self) -> Option<PForm> {
        (self.p == 1 && self.r == 0).then(|| PForm::one_form(&self.ring, (0..self.ring.dim()).map(|i| self.comp(&[i])).collect()).unwrap())
    }

    /// `self ⊗ o`; form factors may not follow vector factors.
    pub fn tensor(&self, o: &TensorField) -> Result<TensorField> {
        if self.r > 0 && o.p > 0 {
            return Err(Error::ArityMismatch("form factor to the right of a vector factor".into()));
        }
        let mut t = TensorField::zero(&self.ring, self.p + o.p, self.r + o.r);
        for (a, x) in &self.comps {
            for (b, y) in &o.comps {
                let (af, av) = a.split_at(self.p);
                let (bf, bv) = b.split_at(o.p);
                let idx: Vec<usize> = af.iter().chain(bf).chain(av).chain(bv).cloned().collect();
                t.insert(idx, x.mul(y));
            }
        }
        Ok(t)
    }

    /// `⟨X_p⊗...⊗X_1, ω_1⊗...⊗ω_p⊗τ⟩ = ⟨X_1,ω_1⟩...⟨X_p,ω_p⟩ τ`, with the
    /// vector fields listed in written order `X_p, ..., X_1`.
    pub fn pair_vectors(&self, xs: &[VectorField]) -> Result<TensorField> {
        let k = xs.len();
        if k > self.p {
            return Err(Error::ArityMismatch(format!("{} vector fields against {} form slots", k, self.p)));
        }
        let mut out = TensorField::zero(&self.ring, self.p - k, self.r);
        for (idx, c) in &self.comps {
            let mut v = c.clone();
            for s in 0..k {
                let x = &xs[k - 1 - s];
                let xi = x.comp(idx[s]);
                if xi.is_zero() {
                    v = Polynomial::zero(&self.ring);
                    break;
                }
                v = v.mul(xi);
            }
            out.insert(idx[k..].to_vec(), v);
        }
        Ok(out)
    }

    /// Pair a (0, k) tensor of vector fields (written order) with the first
    /// k form slots, extending `pair_vectors` by linearity.
    pub fn pair_tensor(&self, v: &TensorField) -> Result<TensorField> {
        let k = v.r;
        if v.p != 0 || k > self.p {
            return Err(Error::ArityMismatch(format!("type ({}, {}) against {} form slots", v.p, v.r, self.p)));
        }
        let mut out = TensorField::zero(&self.ring, self.p - k, self.r);
        for (vidx, vc) in &v.comps {
            let rev: Vec<usize> = vidx.iter().rev().cloned().collect();
            for (idx, c) in &self.comps {
                if idx[..k] == rev[..] {
                    out.insert(idx[k..].to_vec(), c.mul(vc));
                }
            }
        }
        Ok(out)
    }
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

impl Field for TensorField {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    fn lie(&self, x: &VectorField) -> Self {
        let n = self.ring.dim();
        let dx: Vec<Vec<Polynomial>> = (0..n).map(|k| (0..n).map(|i| x.comp(k).partial(i)).collect()).collect();
        let mut out = TensorField::zero(&self.ring, self.p, self.r);
        for (idx, c) in &self.comps {
            out.insert(idx.clone(), x.apply(c));
            for s in 0..self.p + self.r {
                for m in 0..n {
                    if s < self.p {
                        // form slot: + Σ_k T_{..k..} ∂_{i_s} X^k lands on slot value i_s = m
                        let d = &dx[idx[s]][m];
                        if d.is_zero() {
                            continue;
                        }
                        let mut j = idx.clone();
                        j[s] = m;
                        out.insert(j, c.mul(d));
                    } else {
                        // vector slot: − T^{..k..} ∂_k X^m
                        let d = &dx[m][idx[s]];
                        if d.is_zero() {
                            continue;
                        }
                        let mut j = idx.clone();
                        j[s] = m;
                        out.insert(j, c.mul(d).neg());
                    }
                }
            }
        }
        out
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
        TensorField::zero(&self.ring, self.p, self.r)
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

impl PartialEq for TensorField {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.rank() == o.rank() && self.agrees_with(o)
    }
}

impl fmt::Display for TensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.ring;
        let p = self.p;
        let items = self.comps.iter().flat_map(|(idx, c)| {
            let basis: Vec<String> =
                idx.iter().enumerate().map(|(s, &i)| if s < p { format!("d({})", ring.coords[i]) } else { format!("d{}", i + 1) }).collect();
            let basis = if basis.len() > 1 { format!("tensor({})", basis.join(", ")) } else { basis.join("") };
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
    use crate::algebra_core::Ring;

    #[test]
    fn extended_pairing() {
        let r = Ring::standard("x", 3, &[]);
        let w = TensorField::from_form(&PForm::dx(&r, 0))
            .tensor(&TensorField::from_form(&PForm::dx(&r, 1)))
            .unwrap()
            .tensor(&TensorField::from_form(&PForm::dx(&r, 2)))
            .unwrap();
        let out = w.pair_vectors(&[VectorField::partial(&r, 1), VectorField::partial(&r, 0)]).unwrap();
        assert_eq!(out, TensorField::from_form(&PForm::dx(&r, 2)));
        let v = TensorField::from_vector(&VectorField::partial(&r, 1)).tensor(&TensorField::from_vector(&VectorField::partial(&r, 0))).unwrap();
        assert_eq!(w.pair_tensor(&v).unwrap(), out);
    }

    #[test]
    fn lie_matches_vector_bracket() {
        let r = Ring::standard("x", 3, &[]);
        let x = VectorField::new(&r, vec![Polynomial::var(&r, 1), Polynomial::var(&r, 0).pow(2), Polynomial::zero(&r)]).unwrap();
        let y = VectorField::new(&r, vec![Polynomial::var(&r, 2), Polynomial::zero(&r), Polynomial::var(&r, 0)]).unwrap();
        let t = TensorField::from_vector(&y).lie(&x);
        assert_eq!(t.as_vector().unwrap(), x.bracket(&y));
    }

    #[test]
    fn lie_matches_form_lie() {
        let r = Ring::standard("x", 3, &[]);
        let x = VectorField::new(&r, vec![Polynomial::var(&r, 1), Polynomial::var(&r, 0).pow(2), Polynomial::var(&r, 2)]).unwrap();
        let w = PForm::dx(&r, 0).wedge(&PForm::dx(&r, 2)).unwrap().mul_poly(&Polynomial::var(&r, 1));
        assert_eq!(TensorField::from_form(&w).lie(&x), TensorField::from_form(&w.lie(&x)));
    }

    #[test]
    fn vector_then_form_rejected() {
        let r = Ring::standard("x", 2, &[]);
        let v = TensorField::from_vector(&VectorField::partial(&r, 0));
        let w = TensorField::from_form(&PForm::dx(&r, 0));
        assert!(v.tensor(&w).is_err());
    }
}
