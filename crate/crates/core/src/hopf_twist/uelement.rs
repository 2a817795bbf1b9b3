use super::generators::{same_generators, word_factors, GenRef, Word};
use crate::algebra_core::poly::render_terms;
use crate::algebra_core::{NuSeries, Scalar};
use crate::cartan_calculus::Field;
use crate::error::Result;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Element of the enveloping algebra with ν-series coefficients, stored in
/// PBW normal order so that equality is coefficient comparison.
#[derive(Clone, Debug)]
pub struct UElement {
    gens: GenRef,
    terms: BTreeMap<Word, NuSeries>,
}

pub(crate) fn add_into(map: &mut BTreeMap<Word, NuSeries>, w: Word, s: NuSeries) {
    if s.is_zero() && s.is_exact() {
        return;
    }
    match map.remove(&w) {
        Some(old) => {
            let v = old.add(&s);
            if !v.is_zero() {
                map.insert(w, v);
            }
        }
        None => {
            if !s.is_zero() {
                map.insert(w, s);
            }
        }
    }
}

impl UElement {
    pub fn zero(gens: &GenRef) -> Self {
        UElement { gens: gens.clone(), terms: BTreeMap::new() }
    }
    pub fn one(gens: &GenRef) -> Self {
        UElement::word(gens, &[], NuSeries::one())
    }
    pub fn generator(gens: &GenRef, i: usize) -> Self {
        UElement::word(gens, &[i], NuSeries::one())
    }
    /// `s · w`, normal-ordered.
    pub fn word(gens: &GenRef, w: &[usize], s: NuSeries) -> Self {
        let mut u = UElement::zero(gens);
        for (v, c) in gens.normal_order(w) {
            add_into(&mut u.terms, v, s.scale(&c));
        }
        u
    }
    pub fn from_terms(gens: &GenRef, terms: impl IntoIterator<Item = (Word, NuSeries)>) -> Self {
        let mut u = UElement::zero(gens);
        for (w, s) in terms {
            u = u.add(&UElement::word(gens, &w, s));
        }
        u
    }
    pub fn gens(&self) -> &GenRef {
        &self.gens
    }
    pub fn terms(&self) -> &BTreeMap<Word, NuSeries> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, w: &[usize]) -> NuSeries {
        self.terms.get(w).cloned().unwrap_or_else(NuSeries::zero)
    }
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &UElement) -> UElement {
        let mut out = self.clone();
        for (w, s) in &o.terms {
            add_into(&mut out.terms, w.clone(), s.clone());
        }
        out
    }
    pub fn sub(&self, o: &UElement) -> UElement {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> UElement {
        self.scale(&NuSeries::scalar(Scalar::int(-1)))
    }
    pub fn scale(&self, s: &NuSeries) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (w, c) in &self.terms {
            add_into(&mut out.terms, w.clone(), c.mul(s));
        }
        out
    }
    pub fn truncate(&self, n: usize) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (w, c) in &self.terms {
            add_into(&mut out.terms, w.clone(), c.truncate(n));
        }
        out
    }
    pub fn try_mul(&self, o: &UElement) -> Result<UElement> {
        same_generators(&self.gens, &o.gens)?;
        Ok(self.mul(o))
    }
    pub fn mul(&self, o: &UElement) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let c = c1.mul(c2);
                if c.is_zero() && c.is_exact() {
                    continue;
                }
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                for (v, s) in self.gens.normal_order(&w) {
                    add_into(&mut out.terms, v, c.scale(&s));
                }
            }
        }
        out
    }
    pub fn pow(&self, k: usize) -> UElement {
        let mut out = UElement::one(&self.gens);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
    /// `[self, o] = self·o − o·self`.
    pub fn commutator(&self, o: &UElement) -> UElement {
        self.mul(o).sub(&o.mul(self))
    }

    /// Counit: the coefficient of the empty word.
    pub fn counit(&self) -> NuSeries {
        self.coeff(&[])
    }
    /// Antipode, `S(g_1...g_l) = (−1)^l g_l...g_1`.
    pub fn antipode(&self) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (w, c) in &self.terms {
            let mut r = w.clone();
            r.reverse();
            let s = if w.len() % 2 == 0 { c.clone() } else { c.neg() };
            out = out.add(&UElement::word(&self.gens, &r, s));
        }
        out
    }
    /// Conjugate-linear antihomomorphic star extending the generator table.
    pub fn star(&self) -> Result<UElement> {
        let table = self.gens.star_table().ok_or(crate::error::Error::MissingStarTable)?;
        let gstar: Vec<UElement> = table
            .iter()
            .map(|row| {
                let mut u = UElement::zero(&self.gens);
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        add_into(&mut u.terms, vec![j], NuSeries::scalar(x.clone()));
                    }
                }
                u
            })
            .collect();
        let mut out = UElement::zero(&self.gens);
        for (w, c) in &self.terms {
            let mut t = UElement::one(&self.gens).scale(&c.conj());
            for &g in w.iter().rev() {
                t = t.mul(&gstar[g]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }
    /// Adjoint action of a single generator, `ad_g(u) = g u − u g`.
    pub fn ad_generator(&self, g: usize) -> UElement {
        UElement::generator(&self.gens, g).commutator(self)
    }
    /// Adjoint action `ad_w = ad_{g1} ∘ ... ∘ ad_{gl}` of a word.
    pub fn ad_word(&self, w: &[usize]) -> UElement {
        let mut out = self.clone();
        for &g in w.iter().rev() {
            if out.is_zero() {
                break;
            }
            out = out.ad_generator(g);
        }
        out
    }
    /// `u ▷_ad self`, extended linearly over the words of `u`.
    pub fn ad_by(&self, u: &UElement) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (w, c) in &u.terms {
            out = out.add(&self.ad_word(w).scale(c));
        }
        out
    }

    /// Hopf action on fields: a word acts as the composite of Lie derivatives.
    pub fn act<T: Field>(&self, t: &T) -> T {
        let mut memo = ActionMemo::new(t.clone());
        let mut out = t.zero_like();
        for (w, c) in &self.terms {
            let v = memo.get(&self.gens, w);
            if !v.is_zero() {
                out = out.add(&v.scale(c));
            }
        }
        out
    }

    pub fn agrees_with(&self, o: &UElement) -> bool {
        self.sub(o).is_zero()
    }
}

impl PartialEq for UElement {
    fn eq(&self, o: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.gens, &o.gens) && self.agrees_with(o)
    }
}

/// Memo of `w ▷ t` for one fixed field `t`, keyed by word; suffixes are
/// shared so a word of length l costs one Lie derivative once its suffix is known.
pub struct ActionMemo<T: Field> {
    base: T,
    cache: HashMap<Word, T>,
}

impl<T: Field> ActionMemo<T> {
    pub fn new(base: T) -> Self {
        ActionMemo { base, cache: HashMap::new() }
    }
    pub fn base(&self) -> &T {
        &self.base
    }
    pub fn get(&mut self, gens: &GenRef, w: &[usize]) -> T {
        if w.is_empty() {
            return self.base.clone();
        }
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let inner = self.get(gens, &w[1..]);
        let v = if inner.is_zero() { inner } else { inner.lie(gens.field(w[0])) };
        self.cache.insert(w.to_vec(), v.clone());
        v
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(w, s)| (word_factors(&self.gens, w), s.clone()));
        f.write_str(&render_terms(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Polynomial, Ring};
    use crate::cartan_calculus::VectorField;
    use crate::hopf_twist::GeneratorSet;

    fn he() -> GenRef {
        // H = 2x∂, E = x²∂: [H, E] = 2E
        let r = Ring::standard("x", 1, &[]);
        let x = Polynomial::var(&r, 0);
        let h = VectorField::new(&r, vec![x.scale_scalar(&Scalar::int(2))]).unwrap();
        let e = VectorField::new(&r, vec![x.pow(2)]).unwrap();
        GeneratorSet::new(&["H", "E"], vec![h, e]).unwrap()
    }

    #[test]
    fn normal_order_uses_bracket() {
        let g = he();
        assert_eq!(g.bracket_coeffs(0, 1), &[Scalar::zero(), Scalar::int(2)]);
        let eh = UElement::generator(&g, 1).mul(&UElement::generator(&g, 0));
        let expect = UElement::word(&g, &[0, 1], NuSeries::one()).sub(&UElement::generator(&g, 1).scale(&NuSeries::scalar(Scalar::int(2))));
        assert_eq!(eh, expect);
    }

    #[test]
    fn antipode_is_antihomomorphism() {
        let g = he();
        let a = UElement::word(&g, &[0, 1], NuSeries::scalar(Scalar::int(3)));
        let b = UElement::word(&g, &[1, 1], NuSeries::nu());
        assert_eq!(a.mul(&b).antipode(), b.antipode().mul(&a.antipode()));
    }

    #[test]
    fn action_composes() {
        let g = he();
        let r = g.ring().clone();
        let x3 = Polynomial::var(&r, 0).pow(3);
        let h = UElement::generator(&g, 0);
        let e = UElement::generator(&g, 1);
        assert_eq!(h.mul(&e).act(&x3), h.act(&e.act(&x3)));
        assert_eq!(UElement::one(&g).act(&x3), x3);
    }
}
