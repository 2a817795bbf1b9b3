//! Twisted calculus over one fixed twist: every bilinear operation `m` is
//! deformed to `m(F̄₁▷a, F̄₂▷b)`.

mod dual;

use crate::algebra_core::{Polynomial, RingRef};
use crate::cartan_calculus::{Field, PForm, TensorField, VectorField};
use crate::error::{Error, Result};
use crate::hopf_twist::{ActionMemo, GenRef, LegSum, TwistData, UElement};

#[derive(Clone, Debug)]
pub struct StarContext {
    twist: TwistData,
    r21: LegSum,
    rbar21: LegSum,
}

impl StarContext {
    pub fn new(twist: TwistData) -> Self {
        let r21 = twist.r().flip();
        let rbar21 = twist.rbar().flip();
        StarContext { twist, r21, rbar21 }
    }
    pub fn twist(&self) -> &TwistData {
        &self.twist
    }
    pub fn gens(&self) -> &GenRef {
        self.twist.gens()
    }
    pub fn ring(&self) -> &RingRef {
        self.twist.gens().ring()
    }
    pub fn order(&self) -> usize {
        self.twist.order()
    }

    /// `Σ m(F̄₁▷a, F̄₂▷b)`.
    pub fn bilinear<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> C {
        self.twist.fbar().apply2(a, b, m).expect("twist has two legs")
    }
    /// `Σ m(R₁▷a, R₂▷b)`.
    pub fn with_r<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> C {
        self.twist.r().apply2(a, b, m).expect("two legs")
    }
    /// `Σ m(R₂▷a, R₁▷b)`.
    pub fn with_r21<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> C {
        self.r21.apply2(a, b, m).expect("two legs")
    }
    /// `Σ m(R̄₁▷a, R̄₂▷b)`.
    pub fn with_rbar<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> C {
        self.twist.rbar().apply2(a, b, m).expect("two legs")
    }
    /// `Σ m(R̄₂▷a, R̄₁▷b)`.
    pub fn with_rbar21<A: Field, B: Field, C: Field>(&self, a: &A, b: &B, m: impl Fn(&A, &B) -> C) -> C {
        self.rbar21.apply2(a, b, m).expect("two legs")
    }

    /// `a ⋆ b`.
    pub fn star(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.bilinear(a, b, |x, y| x.mul(y))
    }
    /// `h ⋆ T`.
    pub fn left<T: Field>(&self, h: &Polynomial, t: &T) -> T {
        self.bilinear(h, t, |h, t| t.mul_poly(h))
    }
    /// `T ⋆ h`, the right module product.
    pub fn right<T: Field>(&self, t: &T, h: &Polynomial) -> T {
        self.bilinear(t, h, |t, h| t.mul_poly(h))
    }
    /// The right module product written through the left one,
    /// `(R̄₁▷h) ⋆ (R̄₂▷T)`; agrees with [`right`](Self::right).
    pub fn right_via_braiding<T: Field>(&self, t: &T, h: &Polynomial) -> T {
        self.with_rbar(h, t, |h, t| self.left(h, t))
    }
    /// `X ⋆ h` in the operator algebra: module product plus `X_⋆(h)`.
    pub fn compose_after(&self, x: &VectorField, h: &Polynomial) -> (VectorField, Polynomial) {
        (self.right(x, h), self.act_vector(x, h))
    }

    /// `a ⊗_⋆ b`.
    pub fn tensor(&self, a: &TensorField, b: &TensorField) -> Result<TensorField> {
        a.tensor(b)?;
        Ok(self.bilinear(a, b, |x, y| x.tensor(y).expect("ranks checked")))
    }
    /// `a ∧_⋆ b`.
    pub fn wedge(&self, a: &PForm, b: &PForm) -> Result<PForm> {
        a.wedge(b)?;
        Ok(self.bilinear(a, b, |x, y| x.wedge(y).expect("degrees checked")))
    }
    /// `[X, Y]_⋆`.
    pub fn bracket(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.bilinear(x, y, |x, y| x.bracket(y))
    }
    /// `L^⋆_X(T) = L_{F̄₁▷X}(F̄₂▷T)`.
    pub fn lie<T: Field>(&self, x: &VectorField, t: &T) -> T {
        self.bilinear(x, t, |x, t| t.lie(x))
    }
    /// `L^⋆_u(T) = (F̄₁ ▷_ad u) ▷ (F̄₂▷T)` for an enveloping-algebra element.
    pub fn lie_u<T: Field>(&self, u: &UElement, t: &T) -> T {
        let mut memo = ActionMemo::new(t.clone());
        let mut out = t.zero_like();
        for (k, c) in self.twist.fbar().terms() {
            let a = u.ad_word(&k[0]);
            if a.is_zero() {
                continue;
            }
            let v = memo.get(self.gens(), &k[1]);
            if v.is_zero() {
                continue;
            }
            out = out.add(&a.act(&v).scale(c));
        }
        out
    }

    /// `⟨X, ω⟩_⋆ = ⟨F̄₁▷X, F̄₂▷ω⟩`.
    pub fn pair(&self, x: &VectorField, w: &PForm) -> Result<Polynomial> {
        w.pair(x)?;
        Ok(self.bilinear(x, w, |x, w| w.pair(x).expect("1-form")))
    }
    /// `⟨ω, X⟩′_⋆ = ⟨F̄₁▷ω, F̄₂▷X⟩`.
    pub fn pair_primed(&self, w: &PForm, x: &VectorField) -> Result<Polynomial> {
        w.pair(x)?;
        Ok(self.bilinear(w, x, |w, x| w.pair(x).expect("1-form")))
    }
    /// Extended pairing of a (0, k) tensor with a tensor opening with k form slots.
    pub fn pair_ext(&self, v: &TensorField, w: &TensorField) -> Result<TensorField> {
        w.pair_tensor(v)?;
        Ok(self.bilinear(v, w, |v, w| w.pair_tensor(v).expect("arity checked")))
    }
    /// Primed extended pairing: the forms take the first twist leg.
    pub fn pair_ext_primed(&self, w: &TensorField, v: &TensorField) -> Result<TensorField> {
        w.pair_tensor(v)?;
        Ok(self.bilinear(w, v, |w, v| w.pair_tensor(v).expect("arity checked")))
    }
    /// `X_⋆(h) = (F̄₁▷X)(F̄₂▷h)`.
    pub fn act_vector(&self, x: &VectorField, h: &Polynomial) -> Polynomial {
        self.bilinear(x, h, |x, h| x.apply(h))
    }
    /// `Σ (u_(1̂)▷a) ⋆ (u_(2̂)▷b)` with the twisted coproduct.
    pub fn twisted_coproduct_star(&self, u: &UElement, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.twist.twisted_coproduct(u).apply2(a, b, |x, y| self.star(x, y)).expect("two legs")
    }

    /// Checks `b ∧_⋆ a = ± Σ (R₂▷a) ∧_⋆ (R₁▷b)`, the sign being that of the
    /// classical (anti)commutation of `a` and `b`.
    pub fn braiding_check(&self, a: &PForm, b: &PForm) -> Result<bool> {
        let ab = a.wedge(b)?;
        let ba = b.wedge(a)?;
        let sign_plus = ab.agrees_with(&ba);
        let sign_minus = ab.agrees_with(&ba.neg());
        if !sign_plus && !sign_minus {
            return Err(Error::NotBraidable);
        }
        let lhs = self.wedge(b, a)?;
        let rhs = self.with_r21(a, b, |x, y| self.wedge(x, y).expect("degrees checked"));
        Ok(if sign_plus { lhs.agrees_with(&rhs) } else { lhs.agrees_with(&rhs.neg()) })
    }

    /// Deformed Leibniz rule `X_⋆(h⋆h′) = X_⋆(h)⋆h′ + (R₂▷h)⋆(R₁▷X)_⋆(h′)`:
    /// returns the residual.
    pub fn leibniz_residual(&self, x: &VectorField, h: &Polynomial, h2: &Polynomial) -> Polynomial {
        let lhs = self.act_vector(x, &self.star(h, h2));
        let first = self.star(&self.act_vector(x, h), h2);
        let second = self.with_r21(h, x, |h, x| self.star(h, &self.act_vector(x, h2)));
        lhs.sub(&first).sub(&second)
    }

    /// True when every `ν^{N+1}` term of `F̄` annihilates `a` or `b` leg-wise,
    /// so the truncated bilinear value is the exact one.
    pub fn certify<A: Field, B: Field>(&self, a: &A, b: &B) -> bool {
        let tail = self.twist.fbar_tail();
        let mut ma = ActionMemo::new(a.clone());
        let mut mb = ActionMemo::new(b.clone());
        tail.terms().keys().all(|k| ma.get(self.gens(), &k[0]).is_zero() || mb.get(self.gens(), &k[1]).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{NuSeries, Scalar};
    use crate::hopf_twist::TwistSpec;
    use crate::models;

    fn cyl(order: usize) -> (StarContext, RingRef) {
        let m = models::cylinder(Scalar::one());
        let t = TwistData::build(&m.gens, models::cylinder_twist_d3_l12(), order).unwrap();
        (StarContext::new(t), m.ring.clone())
    }

    #[test]
    fn cylinder_star_x3_x1() {
        let (s, r) = cyl(4);
        let x = |i| Polynomial::var(&r, i);
        let got = s.star(&x(2), &x(0));
        let want = x(0).mul(&x(2)).add(&x(1).scale(&NuSeries::monomial(Scalar::i(), 1, None)));
        assert!(got.agrees_with(&want));
        assert!(s.certify(&x(2), &x(0)));
        assert!(s.star(&Polynomial::one(&r), &x(1)).agrees_with(&x(1)));
    }

    #[test]
    fn twisted_vector_action_examples() {
        let (s, r) = cyl(4);
        let x = |i| Polynomial::var(&r, i);
        let z = Polynomial::zero(&r);
        let v = VectorField::new(&r, vec![x(2), z.clone(), z]).unwrap();
        assert!(s.act_vector(&v, &x(1)).agrees_with(&Polynomial::constant(&r, NuSeries::monomial(-Scalar::i(), 1, None))));
        assert!(s.act_vector(&v, &x(0)).agrees_with(&x(2)));
    }

    #[test]
    fn pairing_and_forms() {
        let (s, r) = cyl(4);
        let l12 = s.gens().field(1).clone();
        let p = s.pair(&l12, &PForm::dx(&r, 0)).unwrap();
        assert!(p.agrees_with(&Polynomial::var(&r, 1).neg()));
        let t = s.tensor(&TensorField::from_form(&PForm::dx(&r, 0)), &TensorField::from_form(&PForm::dx(&r, 1))).unwrap();
        let c = TensorField::from_form(&PForm::dx(&r, 0)).tensor(&TensorField::from_form(&PForm::dx(&r, 1))).unwrap();
        assert!(t.agrees_with(&c));
        assert!(s.wedge(&PForm::dx(&r, 2), &PForm::dx(&r, 2)).unwrap().is_zero());
        let x3 = Polynomial::var(&r, 2);
        assert!(s.lie(&VectorField::partial(&r, 2), &x3).agrees_with(&Polynomial::one(&r)));
    }

    #[test]
    fn braiding_and_leibniz() {
        let (s, r) = cyl(4);
        let x = |i| Polynomial::var(&r, i);
        assert!(s.braiding_check(&PForm::function(x(0)), &PForm::function(x(2))).unwrap());
        assert!(s.braiding_check(&PForm::dx(&r, 0), &PForm::dx(&r, 1)).unwrap());
        let v = VectorField::new(&r, vec![x(2), x(0).mul(&x(1)), Polynomial::zero(&r)]).unwrap();
        assert!(s.leibniz_residual(&v, &x(1).mul(&x(2)), &x(0).mul(&x(2))).is_zero());
        assert!(s.right(&v, &x(2)).agrees_with(&s.right_via_braiding(&v, &x(2))));
    }

    #[test]
    fn jordanian_y1_star_y2() {
        let m = models::hyperboloid();
        let t = TwistData::build(&m.gens, TwistSpec::Jordanian { h: 0, e: 1 }, 4).unwrap();
        let s = StarContext::new(t);
        let r = &m.ring;
        let x = |i| Polynomial::var(r, i);
        let y1 = x(0).add(&x(2));
        let y2 = x(1);
        let want = y1.mul(&y2).sub(&y1.mul(&y1).scale(&NuSeries::monomial(Scalar::i(), 1, None)));
        assert!(s.star(&y1, &y2).agrees_with(&want));
        let h = s.gens().field(0).clone();
        let e = s.gens().field(1).clone();
        assert!(s.bracket(&h, &e).agrees_with(&e.scale(&NuSeries::scalar(Scalar::int(2)))));
    }

    #[test]
    fn identity_twist_is_classical() {
        let m = models::cylinder(Scalar::one());
        let s = StarContext::new(TwistData::identity(&m.gens, 3));
        let x = |i| Polynomial::var(&m.ring, i);
        assert_eq!(s.star(&x(0), &x(2)), x(0).mul(&x(2)));
    }
}
