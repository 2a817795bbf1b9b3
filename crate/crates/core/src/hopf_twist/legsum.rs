use super::generators::{word_factors, GenRef, Word};
use super::uelement::{ActionMemo, UElement};
use crate::algebra_core::poly::render_terms;
use crate::algebra_core::{NuSeries, Scalar};
use crate::cartan_calculus::Field;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Element of `U^{⊗k}[[ν]]` as a sum of scalar-weighted word tuples.
#[derive(Clone, Debug)]
pub struct LegSum {
    gens: GenRef,
    arity: usize,
    terms: BTreeMap<Vec<Word>, NuSeries>,
}

fn add_into(map: &mut BTreeMap<Vec<Word>, NuSeries>, k: Vec<Word>, s: NuSeries) {
    if s.is_zero() && s.is_exact() {
        return;
    }
    match map.remove(&k) {
        Some(old) => {
            let v = old.add(&s);
            if !v.is_zero() {
                map.insert(k, v);
            }
        }
        None => {
            if !s.is_zero() {
                map.insert(k, s);
            }
        }
    }
}

impl LegSum {
    pub fn zero(gens: &GenRef, arity: usize) -> Self {
        LegSum { gens: gens.clone(), arity, terms: BTreeMap::new() }
    }
    /// `1⊗...⊗1`.
    pub fn one(gens: &GenRef, arity: usize) -> Self {
        let mut l = LegSum::zero(gens, arity);
        l.terms.insert(vec![Vec::new(); arity], NuSeries::one());
        l
    }
    /// `u_1⊗...⊗u_k`.
    pub fn tensor_of(parts: &[UElement]) -> Self {
        let gens = parts[0].gens().clone();
        let mut acc: Vec<(Vec<Word>, NuSeries)> = vec![(Vec::new(), NuSeries::one())];
        for u in parts {
            let mut next = Vec::new();
            for (k, s) in &acc {
                for (w, c) in u.terms() {
                    let mut k2 = k.clone();
                    k2.push(w.clone());
                    next.push((k2, s.mul(c)));
                }
            }
            acc = next;
        }
        let mut l = LegSum::zero(&gens, parts.len());
        for (k, s) in acc {
            add_into(&mut l.terms, k, s);
        }
        l
    }
    pub fn gens(&self) -> &GenRef {
        &self.gens
    }
    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn terms(&self) -> &BTreeMap<Vec<Word>, NuSeries> {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub(crate) fn push(&mut self, k: Vec<Word>, s: NuSeries) {
        add_into(&mut self.terms, k, s);
    }

    fn check_arity(&self, o: &LegSum) -> Result<()> {
        super::generators::same_generators(&self.gens, &o.gens)?;
        if self.arity != o.arity {
            return Err(Error::ArityMismatch(format!("{}-leg sum against {}-leg sum", self.arity, o.arity)));
        }
        Ok(())
    }
    pub fn add(&self, o: &LegSum) -> LegSum {
        let mut out = self.clone();
        for (k, s) in &o.terms {
            add_into(&mut out.terms, k.clone(), s.clone());
        }
        out
    }
    pub fn sub(&self, o: &LegSum) -> LegSum {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> LegSum {
        self.scale(&NuSeries::scalar(Scalar::int(-1)))
    }
    pub fn scale(&self, s: &NuSeries) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, k.clone(), c.mul(s));
        }
        out
    }
    pub fn truncate(&self, n: usize) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, k.clone(), c.truncate(n));
        }
        out
    }
    /// Coefficient of `ν^k`, as a sum with exact coefficients.
    pub fn nu_component(&self, k: usize) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (key, c) in &self.terms {
            let x = c.coeff(k);
            if !x.is_zero() {
                add_into(&mut out.terms, key.clone(), NuSeries::scalar(x));
            }
        }
        out
    }

    pub fn try_mul(&self, o: &LegSum) -> Result<LegSum> {
        self.check_arity(o)?;
        Ok(self.mul(o))
    }
    /// Leg-wise product `(a_1⊗...)(b_1⊗...) = a_1b_1⊗...`.
    pub fn mul(&self, o: &LegSum) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let c = c1.mul(c2);
                if c.is_zero() && c.is_exact() {
                    continue;
                }
                let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for (w1, w2) in k1.iter().zip(k2) {
                    let mut w = w1.clone();
                    w.extend_from_slice(w2);
                    let no = self.gens.normal_order(&w);
                    let mut next = Vec::with_capacity(acc.len() * no.len());
                    for (k, s) in &acc {
                        for (v, t) in &no {
                            let mut k3 = k.clone();
                            k3.push(v.clone());
                            next.push((k3, s * t));
                        }
                    }
                    acc = next;
                }
                for (k, s) in acc {
                    add_into(&mut out.terms, k, c.scale(&s));
                }
            }
        }
        out
    }
    pub fn pow(&self, k: usize) -> LegSum {
        let mut out = LegSum::one(&self.gens, self.arity);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
    /// `Σ_{k≤n} X^k/k!` for `X` of positive ν-valuation.
    pub fn exp_series(&self, n: usize) -> LegSum {
        let mut out = LegSum::one(&self.gens, self.arity);
        let mut term = LegSum::one(&self.gens, self.arity);
        for k in 1..=n {
            term = term.mul(self).scale(&NuSeries::scalar(Scalar::frac(1, k as i64)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// New leg `j` of the result is old leg `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }
    /// `F_{21}` for a two-leg sum.
    pub fn flip(&self) -> LegSum {
        self.permute(&[1, 0])
    }
    /// Places leg `j` at `positions[j]` in an `arity`-leg sum padded with 1.
    pub fn embed(&self, positions: &[usize], arity: usize) -> LegSum {
        let mut out = LegSum::zero(&self.gens, arity);
        for (k, c) in &self.terms {
            let mut key = vec![Vec::new(); arity];
            for (j, &p) in positions.iter().enumerate() {
                key[p] = k[j].clone();
            }
            add_into(&mut out.terms, key, c.clone());
        }
        out
    }
    /// Applies a linear map, given on words, to one leg.
    pub fn map_leg(&self, leg: usize, mut f: impl FnMut(&Word) -> UElement) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k, c) in &self.terms {
            for (w, s) in f(&k[leg]).terms() {
                let mut key = k.clone();
                key[leg] = w.clone();
                add_into(&mut out.terms, key, c.mul(s));
            }
        }
        out
    }
    /// `(id⊗...⊗Δ⊗...⊗id)` on leg `leg`, splitting it into two adjacent legs.
    pub fn coproduct_leg(&self, leg: usize) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity + 1);
        for (k, c) in &self.terms {
            for (a, b) in word_coproduct(&k[leg]) {
                let mut key = k[..leg].to_vec();
                key.push(a);
                key.push(b);
                key.extend_from_slice(&k[leg + 1..]);
                add_into(&mut out.terms, key, c.clone());
            }
        }
        out
    }
    /// `(id⊗...⊗ε⊗...⊗id)` on leg `leg`.
    pub fn counit_leg(&self, leg: usize) -> LegSum {
        let mut out = LegSum::zero(&self.gens, self.arity - 1);
        for (k, c) in &self.terms {
            if k[leg].is_empty() {
                let mut key = k.clone();
                key.remove(leg);
                add_into(&mut out.terms, key, c.clone());
            }
        }
        out
    }
    /// Multiplies the legs together in order.
    pub fn contract(&self) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (k, c) in &self.terms {
            let w: Word = k.concat();
            out = out.add(&UElement::word(&self.gens, &w, c.clone()));
        }
        out
    }
    /// `F^{*⊗...⊗*}`: star on every leg, coefficients conjugated once.
    pub fn star_legs(&self) -> Result<LegSum> {
        let mut cur = self.clone();
        for leg in 0..self.arity {
            let mut err = None;
            cur = cur.map_leg(leg, |w| match UElement::word(&self.gens, w, NuSeries::one()).star() {
                Ok(u) => u,
                Err(e) => {
                    err = Some(e);
                    UElement::zero(&self.gens)
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let mut out = LegSum::zero(&self.gens, self.arity);
        for (k, c) in &cur.terms {
            add_into(&mut out.terms, k.clone(), c.conj());
        }
        Ok(out)
    }
    /// `S⊗...⊗S`.
    pub fn antipode_legs(&self) -> LegSum {
        let mut cur = self.clone();
        for leg in 0..self.arity {
            cur = cur.map_leg(leg, |w| UElement::word(&self.gens, w, NuSeries::one()).antipode());
        }
        cur
    }
    /// The one-leg sum viewed as a `UElement`.
    pub fn as_uelement(&self) -> Option<UElement> {
        (self.arity == 1).then(|| self.contract())
    }

    /// `Σ c (w_1▷a)·(w_2▷b)` for a two-leg sum and a bilinear `m`.
    pub fn apply2<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> Option<C> {
        if self.arity != 2 {
            return None;
        }
        let mut ma = ActionMemo::new(a.clone());
        let mut mb = ActionMemo::new(b.clone());
        let mut out: Option<C> = None;
        for (k, c) in &self.terms {
            let x = ma.get(&self.gens, &k[0]);
            if x.is_zero() {
                continue;
            }
            let y = mb.get(&self.gens, &k[1]);
            if y.is_zero() {
                continue;
            }
            let v = m(&x, &y).scale(c);
            out = Some(match out {
                Some(o) => o.add(&v),
                None => v,
            });
        }
        Some(out.unwrap_or_else(|| m(a, b).zero_like()))
    }
    /// Two-leg sum acting on a pair; the legs act on `a` and `b` separately
    /// and the results are combined through a caller-supplied accumulator.
    pub fn for_each_pair<A: Field, B: Field>(&self, a: &A, b: &B, mut f: impl FnMut(&NuSeries, &A, &B)) {
        let mut ma = ActionMemo::new(a.clone());
        let mut mb = ActionMemo::new(b.clone());
        for (k, c) in &self.terms {
            let x = ma.get(&self.gens, &k[0]);
            if x.is_zero() {
                continue;
            }
            let y = mb.get(&self.gens, &k[1]);
            if y.is_zero() {
                continue;
            }
            f(c, &x, &y);
        }
    }
    /// Same as [`for_each_pair`] for three legs.
    pub fn for_each_triple<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, cc: &C, mut f: impl FnMut(&NuSeries, &A, &B, &C)) {
        let mut ma = ActionMemo::new(a.clone());
        let mut mb = ActionMemo::new(b.clone());
        let mut mc = ActionMemo::new(cc.clone());
        for (k, c) in &self.terms {
            let x = ma.get(&self.gens, &k[0]);
            if x.is_zero() {
                continue;
            }
            let y = mb.get(&self.gens, &k[1]);
            if y.is_zero() {
                continue;
            }
            let z = mc.get(&self.gens, &k[2]);
            if z.is_zero() {
                continue;
            }
            f(c, &x, &y, &z);
        }
    }

    pub fn agrees_with(&self, o: &LegSum) -> bool {
        self.sub(o).is_zero()
    }
}

impl PartialEq for LegSum {
    fn eq(&self, o: &Self) -> bool {
        std::sync::Arc::ptr_eq(&self.gens, &o.gens) && self.arity == o.arity && self.agrees_with(o)
    }
}

/// `Δ(g_1...g_l) = Σ_S g_S ⊗ g_{S^c}` over order-preserving splittings.
pub fn word_coproduct(w: &[usize]) -> Vec<(Word, Word)> {
    let l = w.len();
    assert!(l < 64, "word too long for coproduct");
    let mut out = Vec::with_capacity(1 << l);
    for mask in 0u64..(1u64 << l) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &g) in w.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(g);
            } else {
                b.push(g);
            }
        }
        out.push((a, b));
    }
    out
}

/// `Δ(u)` as a two-leg sum.
pub fn coproduct(u: &UElement) -> LegSum {
    let mut out = LegSum::zero(u.gens(), 2);
    for (w, c) in u.terms() {
        for (a, b) in word_coproduct(w) {
            out.push(vec![a, b], c.clone());
        }
    }
    out
}

impl fmt::Display for LegSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(k, s)| {
            let legs: Vec<String> = k.iter().map(|w| if w.is_empty() { "1".to_string() } else { word_factors(&self.gens, w).join("*") }).collect();
            (vec![format!("tensor({})", legs.join(", "))], s.clone())
        });
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
        let r = Ring::standard("x", 1, &[]);
        let x = Polynomial::var(&r, 0);
        let h = VectorField::new(&r, vec![x.scale_scalar(&Scalar::int(2))]).unwrap();
        let e = VectorField::new(&r, vec![x.pow(2)]).unwrap();
        GeneratorSet::new(&["H", "E"], vec![h, e]).unwrap()
    }

    #[test]
    fn coproduct_of_two_letter_word() {
        let g = he();
        let he = UElement::word(&g, &[0, 1], NuSeries::one());
        let d = coproduct(&he);
        let one = UElement::one(&g);
        let h = UElement::generator(&g, 0);
        let e = UElement::generator(&g, 1);
        let expect = LegSum::tensor_of(&[he.clone(), one.clone()])
            .add(&LegSum::tensor_of(&[h.clone(), e.clone()]))
            .add(&LegSum::tensor_of(&[e, h]))
            .add(&LegSum::tensor_of(&[one, he]));
        assert_eq!(d, expect);
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let g = he();
        let a = UElement::word(&g, &[1, 0], NuSeries::one());
        let b = UElement::word(&g, &[0, 1, 1], NuSeries::scalar(Scalar::int(2)));
        assert_eq!(coproduct(&a.mul(&b)), coproduct(&a).mul(&coproduct(&b)));
    }

    #[test]
    fn antipode_axiom() {
        let g = he();
        let u = UElement::word(&g, &[0, 1, 1], NuSeries::one());
        let lhs = coproduct(&u).map_leg(0, |w| UElement::word(&g, w, NuSeries::one()).antipode()).contract();
        assert!(lhs.is_zero());
    }

    #[test]
    fn embed_and_counit() {
        let g = he();
        let f = LegSum::tensor_of(&[UElement::generator(&g, 0), UElement::generator(&g, 1)]);
        let f13 = f.embed(&[0, 2], 3);
        assert_eq!(f13.counit_leg(1), f);
        assert!(f.counit_leg(0).is_zero());
    }
}
