use super::generators::GenRef;
use super::legsum::{coproduct, LegSum};
use super::uelement::{ActionMemo, UElement};
use crate::algebra_core::{Monomial, NuSeries, Polynomial, Scalar};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistFamily {
    Identity,
    Abelian,
    Jordanian,
}

/// Input to [`TwistData::build`], with generators referenced by index.
#[derive(Clone, Debug)]
pub enum TwistSpec {
    Identity,
    /// `P = Σ c · e_left ⊗ e_right`, `F = exp(iνP)`.
    Abelian(Vec<(usize, usize, Scalar)>),
    /// `F = exp(½ H⊗log(1+iνE))`.
    Jordanian {
        h: usize,
        e: usize,
    },
}

/// A twist truncated at `ν^order` together with its derived elements.
#[derive(Clone, Debug)]
pub struct TwistData {
    gens: GenRef,
    order: usize,
    family: TwistFamily,
    spec: TwistSpec,
    f: LegSum,
    fbar: LegSum,
    r: LegSum,
    rbar: LegSum,
    beta: UElement,
    beta_inv: UElement,
    fbar_tail: LegSum,
}

fn i_nu(cap: usize) -> NuSeries {
    NuSeries::monomial(Scalar::i(), 1, Some(cap))
}

/// The exponent `X` with `F = exp(X)`, and its family.
fn exponent(gens: &GenRef, spec: &TwistSpec, n: usize) -> Result<(LegSum, TwistFamily)> {
    match spec {
        TwistSpec::Identity => Ok((LegSum::zero(gens, 2), TwistFamily::Identity)),
        TwistSpec::Abelian(pairs) => {
            let mut idx = Vec::new();
            for &(a, b, _) in pairs {
                for g in [a, b] {
                    if g >= gens.len() {
                        return Err(Error::UnknownSymbol(format!("generator #{}", g)));
                    }
                    idx.push(g);
                }
            }
            for &a in &idx {
                for &b in &idx {
                    if !gens.commute(a, b) {
                        return Err(Error::BracketPrecondition(format!("abelian twist needs commuting legs, but [{}, {}] ≠ 0", gens.name(a), gens.name(b))));
                    }
                }
            }
            let mut p = LegSum::zero(gens, 2);
            for (a, b, c) in pairs {
                p = p.add(&LegSum::tensor_of(&[UElement::generator(gens, *a), UElement::generator(gens, *b)]).scale(&NuSeries::scalar(c.clone())));
            }
            Ok((p.scale(&i_nu(n)), TwistFamily::Abelian))
        }
        TwistSpec::Jordanian { h, e } => {
            if *h >= gens.len() || *e >= gens.len() {
                return Err(Error::UnknownSymbol("jordanian generator index".into()));
            }
            let want: Vec<Scalar> = (0..gens.len()).map(|k| if k == *e { Scalar::int(2) } else { Scalar::zero() }).collect();
            if gens.bracket_coeffs(*h, *e) != want.as_slice() {
                return Err(Error::BracketPrecondition(format!("jordanian twist needs [{}, {}] = 2{}", gens.name(*h), gens.name(*e), gens.name(*e))));
            }
            // σ = log(1 + iνE) = Σ_k (−1)^{k+1} (iν)^k E^k / k
            let mut sigma = UElement::zero(gens);
            for k in 1..=n {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let c = Scalar::i().pow(k as u32) * Scalar::frac(sign, k as i64);
                sigma = sigma.add(&UElement::word(gens, &vec![*e; k], NuSeries::monomial(c, k, Some(n))));
            }
            let hh = UElement::generator(gens, *h).scale(&NuSeries::scalar(Scalar::frac(1, 2)));
            Ok((LegSum::tensor_of(&[hh, sigma]), TwistFamily::Jordanian))
        }
    }
}

impl TwistData {
    /// Builds `F` and `F̄ = exp(−X)` through `ν^order` and validates the
    /// inverse pair, `R R̄ = 1⊗1`, and `β β⁻¹ = 1`.
    pub fn build(gens: &GenRef, spec: TwistSpec, order: usize) -> Result<TwistData> {
        let (x, family) = exponent(gens, &spec, order)?;
        let one = LegSum::one(gens, 2).scale(&NuSeries::one().with_cap(Some(order)));
        let (f, fbar) = if family == TwistFamily::Identity { (one.clone(), one.clone()) } else { (x.exp_series(order), x.neg().exp_series(order)) };
        if !f.mul(&fbar).agrees_with(&one) || !fbar.mul(&f).agrees_with(&one) {
            return Err(Error::Singular("twist and its closed-form inverse do not multiply to 1⊗1".into()));
        }
        let r = f.flip().mul(&fbar);
        let rbar = f.mul(&fbar.flip());
        if !r.mul(&rbar).agrees_with(&one) {
            return Err(Error::Singular("R-matrix inverse check failed".into()));
        }
        let beta = f.map_leg(1, |w| UElement::word(gens, w, NuSeries::one()).antipode()).contract();
        let beta_inv = fbar.map_leg(0, |w| UElement::word(gens, w, NuSeries::one()).antipode()).contract();
        if !beta.mul(&beta_inv).agrees_with(&UElement::one(gens)) {
            return Err(Error::Singular("β β⁻¹ ≠ 1".into()));
        }
        let fbar_tail = if family == TwistFamily::Identity {
            LegSum::zero(gens, 2)
        } else {
            let (x1, _) = exponent(gens, &spec, order + 1)?;
            x1.neg().exp_series(order + 1).nu_component(order + 1)
        };
        Ok(TwistData { gens: gens.clone(), order, family, spec, f, fbar, r, rbar, beta, beta_inv, fbar_tail })
    }

    pub fn identity(gens: &GenRef, order: usize) -> TwistData {
        TwistData::build(gens, TwistSpec::Identity, order).expect("identity twist")
    }

    pub fn gens(&self) -> &GenRef {
        &self.gens
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn family(&self) -> &TwistFamily {
        &self.family
    }
    pub fn spec(&self) -> &TwistSpec {
        &self.spec
    }
    pub fn f(&self) -> &LegSum {
        &self.f
    }
    pub fn fbar(&self) -> &LegSum {
        &self.fbar
    }
    pub fn r(&self) -> &LegSum {
        &self.r
    }
    pub fn rbar(&self) -> &LegSum {
        &self.rbar
    }
    pub fn beta(&self) -> &UElement {
        &self.beta
    }
    pub fn beta_inv(&self) -> &UElement {
        &self.beta_inv
    }
    /// The `ν^{order+1}` component of `F̄`, used to certify termination.
    pub fn fbar_tail(&self) -> &LegSum {
        &self.fbar_tail
    }
    /// Generator indices appearing in the legs of `F`.
    pub fn leg_generators(&self) -> Vec<usize> {
        let mut s = std::collections::BTreeSet::new();
        for k in self.f.terms().keys() {
            for w in k {
                s.extend(w.iter().cloned());
            }
        }
        s.into_iter().collect()
    }

    /// `(ε⊗id)F = 1` and `(id⊗ε)F = 1`.
    pub fn counital(&self) -> (bool, bool) {
        let one = LegSum::one(&self.gens, 1);
        (self.f.counit_leg(0).agrees_with(&one), self.f.counit_leg(1).agrees_with(&one))
    }
    /// Both sides of `(F⊗1)(Δ⊗id)F = (1⊗F)(id⊗Δ)F`.
    pub fn cocycle_sides(&self) -> (LegSum, LegSum) {
        let lhs = self.f.embed(&[0, 1], 3).mul(&self.f.coproduct_leg(0));
        let rhs = self.f.embed(&[1, 2], 3).mul(&self.f.coproduct_leg(1));
        (lhs, rhs)
    }
    /// Both sides of `(Δ⊗id)(F̄)(F̄⊗1) = (id⊗Δ)(F̄)(1⊗F̄)`.
    pub fn inverse_cocycle_sides(&self) -> (LegSum, LegSum) {
        let lhs = self.fbar.coproduct_leg(0).mul(&self.fbar.embed(&[0, 1], 3));
        let rhs = self.fbar.coproduct_leg(1).mul(&self.fbar.embed(&[1, 2], 3));
        (lhs, rhs)
    }
    /// Iterated twist `F^n` with `F^1 = 1`, `F^2 = F`,
    /// `F^{n+1} = (F^n⊗1)(Δ^{(n)}⊗id)F`.
    pub fn iterated(&self, n: usize) -> LegSum {
        if n <= 1 {
            return LegSum::one(&self.gens, 1);
        }
        let mut cur = self.f.clone();
        for k in 2..n {
            let mut spread = self.f.clone();
            for _ in 0..k - 1 {
                spread = spread.coproduct_leg(0);
            }
            let lifted = cur.embed(&(0..k).collect::<Vec<_>>(), k + 1);
            cur = lifted.mul(&spread);
        }
        cur
    }
    /// Inverse of [`iterated`](Self::iterated), `F̄^{n+1} = (Δ^{(n)}⊗id)(F̄)(F̄^n⊗1)`.
    pub fn iterated_inverse(&self, n: usize) -> LegSum {
        if n <= 1 {
            return LegSum::one(&self.gens, 1);
        }
        let mut cur = self.fbar.clone();
        for k in 2..n {
            let mut spread = self.fbar.clone();
            for _ in 0..k - 1 {
                spread = spread.coproduct_leg(0);
            }
            let lifted = cur.embed(&(0..k).collect::<Vec<_>>(), k + 1);
            cur = spread.mul(&lifted);
        }
        cur
    }

    /// `Δ_F(u) = F Δ(u) F̄`.
    pub fn twisted_coproduct(&self, u: &UElement) -> LegSum {
        self.f.mul(&coproduct(u)).mul(&self.fbar)
    }
    /// `(Δ_F ⊗ id)` applied to the first leg of a two-leg sum.
    pub fn twisted_coproduct_leg0(&self, t: &LegSum) -> LegSum {
        self.f.embed(&[0, 1], 3).mul(&t.coproduct_leg(0)).mul(&self.fbar.embed(&[0, 1], 3))
    }
    /// `S_F(u) = β S(u) β⁻¹`.
    pub fn twisted_antipode(&self, u: &UElement) -> UElement {
        self.beta.mul(&u.antipode()).mul(&self.beta_inv)
    }
    /// `*_F(u) = β u* β⁻¹`.
    pub fn twisted_star(&self, u: &UElement) -> Result<UElement> {
        Ok(self.beta.mul(&u.star()?).mul(&self.beta_inv))
    }
    /// `D(u) = (F̄₁ ▷_ad u) F̄₂`.
    pub fn d_map(&self, u: &UElement) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (k, c) in self.fbar.terms() {
            let left = u.ad_word(&k[0]);
            if left.is_zero() {
                continue;
            }
            out = out.add(&left.mul(&UElement::word(&self.gens, &k[1], c.clone())));
        }
        out
    }
    /// Twisted product on the enveloping algebra, `u ⋆ v = (F̄₁▷_ad u)(F̄₂▷_ad v)`.
    pub fn star_u(&self, u: &UElement, v: &UElement) -> UElement {
        let mut out = UElement::zero(&self.gens);
        for (k, c) in self.fbar.terms() {
            let a = u.ad_word(&k[0]);
            if a.is_zero() {
                continue;
            }
            let b = v.ad_word(&k[1]);
            if b.is_zero() {
                continue;
            }
            out = out.add(&a.mul(&b).scale(c));
        }
        out
    }
    /// `F^{*⊗*} = F̄`.
    pub fn is_unitary(&self) -> Result<bool> {
        Ok(self.f.star_legs()?.agrees_with(&self.fbar))
    }
    /// `F^{*⊗*} = (S⊗S)F₂₁`.
    pub fn is_real(&self) -> Result<bool> {
        Ok(self.f.star_legs()?.agrees_with(&self.f.flip().antipode_legs()))
    }
    /// Triangularity, `R̄ = R₂₁`.
    pub fn is_triangular(&self) -> bool {
        self.rbar.agrees_with(&self.r.flip())
    }
    /// Both sides of `(Δ_F⊗id)R = R₁₃R₂₃`.
    pub fn r_coproduct_sides(&self) -> (LegSum, LegSum) {
        let lhs = self.twisted_coproduct_leg0(&self.r);
        let rhs = self.r.embed(&[0, 2], 3).mul(&self.r.embed(&[1, 2], 3));
        (lhs, rhs)
    }
}

/// All coordinate monomials of total degree `≤ d`.
pub fn monomials_up_to(ring: &crate::algebra_core::RingRef, d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; ring.dim()];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, ring: &crate::algebra_core::RingRef, out: &mut Vec<Polynomial>) {
        if i == exps.len() {
            let m = Monomial { c: exps.clone(), p: vec![0; ring.nparams()] };
            out.push(Polynomial::from_term(ring, m, NuSeries::one()));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, ring, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, ring, &mut out);
    out
}

/// Value of a k-leg sum acting on a tuple of polynomials, as an element of
/// the k-fold tensor power of the polynomial algebra.
pub type TensorValue = BTreeMap<Vec<Monomial>, NuSeries>;

/// Evaluates a k-leg sum on every k-tuple drawn from `inputs`; keys are the
/// input index tuples with nonzero value.
pub fn action_table(ls: &LegSum, inputs: &[Polynomial]) -> HashMap<Vec<usize>, TensorValue> {
    let k = ls.arity();
    let gens = ls.gens().clone();
    let mut memos: Vec<ActionMemo<Polynomial>> = inputs.iter().map(|p| ActionMemo::new(p.clone())).collect();
    let mut out: HashMap<Vec<usize>, TensorValue> = HashMap::new();
    for (words, c) in ls.terms() {
        // per leg: the inputs it does not annihilate
        let mut per_leg: Vec<Vec<(usize, Polynomial)>> = Vec::with_capacity(k);
        for w in words {
            let mut v = Vec::new();
            for (i, m) in memos.iter_mut().enumerate() {
                let r = m.get(&gens, w);
                if !r.is_zero() {
                    v.push((i, r));
                }
            }
            per_leg.push(v);
        }
        if per_leg.iter().any(|v| v.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; k];
        loop {
            let key: Vec<usize> = (0..k).map(|l| per_leg[l][idx[l]].0).collect();
            let entry = out.entry(key).or_default();
            let mut acc: Vec<(Vec<Monomial>, NuSeries)> = vec![(Vec::new(), c.clone())];
            for l in 0..k {
                let mut next = Vec::new();
                for (ms, s) in &acc {
                    for (m, t) in per_leg[l][idx[l]].1.terms() {
                        let mut ms2 = ms.clone();
                        ms2.push(m.clone());
                        next.push((ms2, s.mul(t)));
                    }
                }
                acc = next;
            }
            for (ms, s) in acc {
                let v = match entry.remove(&ms) {
                    Some(old) => old.add(&s),
                    None => s,
                };
                if !v.is_zero() {
                    entry.insert(ms, v);
                }
            }
            let mut done = true;
            let mut l = k;
            while l > 0 {
                l -= 1;
                idx[l] += 1;
                if idx[l] < per_leg[l].len() {
                    done = false;
                    break;
                }
                idx[l] = 0;
            }
            if done {
                break;
            }
        }
    }
    out.retain(|_, v| !v.is_empty());
    out
}

/// Number of input tuples on which two action tables disagree.
pub fn table_mismatches(a: &HashMap<Vec<usize>, TensorValue>, b: &HashMap<Vec<usize>, TensorValue>) -> usize {
    let mut keys: std::collections::BTreeSet<&Vec<usize>> = a.keys().collect();
    keys.extend(b.keys());
    let empty = TensorValue::new();
    keys.into_iter()
        .filter(|k| {
            let x = a.get(*k).unwrap_or(&empty);
            let y = b.get(*k).unwrap_or(&empty);
            let mut ms: std::collections::BTreeSet<&Vec<Monomial>> = x.keys().collect();
            ms.extend(y.keys());
            ms.into_iter().any(|m| {
                let p = x.get(m).cloned().unwrap_or_else(NuSeries::zero);
                let q = y.get(m).cloned().unwrap_or_else(NuSeries::zero);
                !p.agrees_with(&q)
            })
        })
        .count()
}

/// Outcome of [`check_twist_axioms`].
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub counital_left: bool,
    pub counital_right: bool,
    /// `LHS − RHS` of the cocycle condition in normal-ordered form.
    pub cocycle_residual: LegSum,
    /// Tuples of monomials on which the two sides act differently.
    pub cocycle_mismatches: usize,
    pub tuples_checked: usize,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.counital_left && self.counital_right && self.cocycle_residual.is_zero() && self.cocycle_mismatches == 0
    }
}

/// Counitality and the 2-cocycle condition, the latter both in normal
/// order and by action on all monomial triples of degree `≤ degree`.
pub fn check_twist_axioms(t: &TwistData, degree: u32) -> TwistReport {
    let (l, r) = t.counital();
    let (lhs, rhs) = t.cocycle_sides();
    let monos = monomials_up_to(t.gens().ring(), degree);
    let ta = action_table(&lhs, &monos);
    let tb = action_table(&rhs, &monos);
    TwistReport {
        counital_left: l,
        counital_right: r,
        cocycle_residual: lhs.sub(&rhs),
        cocycle_mismatches: table_mismatches(&ta, &tb),
        tuples_checked: monos.len().pow(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Ring;
    use crate::cartan_calculus::VectorField;
    use crate::hopf_twist::GeneratorSet;

    fn cyl() -> GenRef {
        let r = Ring::standard("x", 3, &[]);
        let x = |i| Polynomial::var(&r, i);
        let z = Polynomial::zero(&r);
        let l12 = VectorField::new(&r, vec![x(1).neg(), x(0), z.clone()]).unwrap();
        GeneratorSet::new(&["d3", "L12"], vec![VectorField::partial(&r, 2), l12]).unwrap()
    }

    #[test]
    fn abelian_order_two() {
        let g = cyl();
        let t = TwistData::build(&g, TwistSpec::Abelian(vec![(0, 1, Scalar::one())]), 2).unwrap();
        let p = LegSum::tensor_of(&[UElement::generator(&g, 0), UElement::generator(&g, 1)]);
        let p2 = LegSum::tensor_of(&[UElement::word(&g, &[0, 0], NuSeries::one()), UElement::word(&g, &[1, 1], NuSeries::one())]);
        let expect =
            LegSum::one(&g, 2).add(&p.scale(&NuSeries::monomial(Scalar::i(), 1, None))).add(&p2.scale(&NuSeries::monomial(Scalar::frac(-1, 2), 2, None)));
        assert!(t.f().agrees_with(&expect));
        assert_eq!(t.f().len(), 3);
    }

    #[test]
    fn order_zero_is_unit() {
        let g = cyl();
        let t = TwistData::build(&g, TwistSpec::Abelian(vec![(0, 1, Scalar::one())]), 0).unwrap();
        assert!(t.f().agrees_with(&LegSum::one(&g, 2)));
    }

    #[test]
    fn abelian_axioms_and_unitarity() {
        let g = cyl();
        let t = TwistData::build(&g, TwistSpec::Abelian(vec![(0, 1, Scalar::one())]), 3).unwrap();
        let rep = check_twist_axioms(&t, 2);
        assert!(rep.passed(), "{:?}", rep);
        assert!(t.is_unitary().unwrap());
        assert!(t.is_triangular());
        let (a, b) = t.r_coproduct_sides();
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn identity_twist_trivial_r_and_beta() {
        let g = cyl();
        let t = TwistData::identity(&g, 3);
        assert!(t.r().agrees_with(&LegSum::one(&g, 2)));
        assert!(t.beta().agrees_with(&UElement::one(&g)));
    }

    #[test]
    fn iterated_three_matches_cocycle_side() {
        let g = cyl();
        let t = TwistData::build(&g, TwistSpec::Abelian(vec![(0, 1, Scalar::one())]), 2).unwrap();
        let f3 = t.iterated(3);
        assert!(f3.agrees_with(&t.cocycle_sides().0));
        assert!(f3.mul(&t.iterated_inverse(3)).agrees_with(&LegSum::one(&g, 3)));
    }

    #[test]
    fn non_commuting_abelian_rejected() {
        let r = Ring::standard("x", 3, &[]);
        let x = |i| Polynomial::var(&r, i);
        let z = Polynomial::zero(&r);
        let l12 = VectorField::new(&r, vec![x(1).neg(), x(0), z.clone()]).unwrap();
        let g = GeneratorSet::new(&["d1", "d2", "L12"], vec![VectorField::partial(&r, 0), VectorField::partial(&r, 1), l12]).unwrap();
        let e = TwistData::build(&g, TwistSpec::Abelian(vec![(0, 2, Scalar::one())]), 2);
        assert!(matches!(e, Err(Error::BracketPrecondition(_))));
    }
}
