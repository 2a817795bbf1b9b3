//! Twisted Levi-Civita connection by conjugation, ∇^F_X T = ∇_{F̄₁▷X}(F̄₂▷T),
//! with its torsion, curvature, Ricci data, metric compatibility and the
//! twisted Gauss equation.

use crate::algebra_core::{NuSeries, Polynomial};
use crate::cartan_calculus::{Field, VectorField};
use crate::error::{Error, Result};
use crate::hopf_twist::{ActionMemo, LegSum, Word};
use crate::riemann_geometry::{flat_nabla, is_killing, Metric, RicciConvention};
use crate::star_calculus::StarContext;
use crate::submanifold::{classify_vector, LevelSetFamily, TangencyClass};
use std::collections::BTreeMap;

/// Lie algebra the twist legs were found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivarianceClass {
    Killing,
    Equivariance,
}

type Nabla<'a> = dyn Fn(&VectorField, &VectorField) -> Result<VectorField> + 'a;

/// `Σ c f(w₁▷a, w₂▷b)` for a fallible bilinear map.
fn try_sum2<A: Field, B: Field, C: Field>(ls: &LegSum, a: &A, b: &B, f: impl Fn(&A, &B) -> Result<C>) -> Result<Option<C>> {
    let mut out: Option<C> = None;
    let mut err = None;
    ls.for_each_pair(a, b, |c, x, y| {
        if err.is_some() {
            return;
        }
        match f(x, y) {
            Ok(v) => {
                let v = v.scale(c);
                out = Some(match out.take() {
                    Some(o) => o.add(&v),
                    None => v,
                });
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn scale_poly(p: Polynomial, c: &NuSeries) -> Polynomial {
    p.scale(c)
}

#[derive(Clone, Debug)]
pub struct TwistedConnection {
    ctx: StarContext,
    metric: Metric,
    family: Option<LevelSetFamily>,
    class: EquivarianceClass,
}

impl TwistedConnection {
    /// Validates that every twist leg is an affine field (the equivariance
    /// algebra of the flat connection) and, given a family, tangent to it.
    pub fn new(ctx: StarContext, metric: Metric, family: Option<LevelSetFamily>) -> Result<Self> {
        let gens = ctx.gens().clone();
        let mut killing = true;
        for g in ctx.twist().leg_generators() {
            let z = gens.field(g);
            let affine = z.comps().iter().all(|c| (0..c.ring().dim()).all(|i| (0..c.ring().dim()).all(|j| c.partial(i).partial(j).is_zero())));
            if !affine {
                return Err(Error::NonKilling(format!("{} is outside the equivariance algebra of the flat connection", gens.name(g))));
            }
            killing &= is_killing(&metric, z);
            if let Some(m) = &family {
                if classify_vector(z, m)? != TangencyClass::Tangent {
                    return Err(Error::NotTangent(gens.name(g).to_string()));
                }
            }
        }
        let class = if killing { EquivarianceClass::Killing } else { EquivarianceClass::Equivariance };
        Ok(TwistedConnection { ctx, metric, family, class })
    }

    pub fn context(&self) -> &StarContext {
        &self.ctx
    }
    pub fn metric(&self) -> &Metric {
        &self.metric
    }
    pub fn class(&self) -> EquivarianceClass {
        self.class
    }
    pub fn family(&self) -> Result<&LevelSetFamily> {
        self.family.as_ref().ok_or_else(|| Error::Scenario("no level-set family attached".into()))
    }
    fn require_killing(&self) -> Result<()> {
        match self.class {
            EquivarianceClass::Killing => Ok(()),
            EquivarianceClass::Equivariance => Err(Error::NonKilling("metric operations need Killing twist legs".into())),
        }
    }
    fn require_tangent(&self, xs: &[&VectorField]) -> Result<&LevelSetFamily> {
        self.require_killing()?;
        let m = self.family()?;
        for x in xs {
            if !m.is_tangent_on_shell(x)? {
                return Err(Error::NotTangent(format!("{}", x)));
            }
        }
        Ok(m)
    }

    /// `∇^F_X T`.
    pub fn nabla<T: Field>(&self, x: &VectorField, t: &T) -> T {
        self.ctx.bilinear(x, t, |x, t| flat_nabla(x, t))
    }
    /// `∇^F_t X Y = pr_t(∇^F_X Y)`, modulo the ideal.
    pub fn projected_nabla(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        let m = self.require_tangent(&[x, y])?;
        m.tangent(&self.nabla(x, y))
    }
    /// `II^F_⋆(X, Y) = pr_⊥(∇^F_X Y)`, modulo the ideal.
    pub fn second_form(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        let m = self.require_tangent(&[x, y])?;
        m.normal(&self.nabla(x, y))
    }
    /// `II(F̄₁▷X, F̄₂▷Y)` with the classical second form on each leg.
    pub fn second_form_by_legs(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        let m = self.require_tangent(&[x, y])?;
        let v = try_sum2(self.ctx.twist().fbar(), x, y, |a, b| m.normal(&flat_nabla(a, b)))?;
        m.reduce_field(&v.unwrap_or_else(|| VectorField::zero(m.ring())))
    }

    /// `g_⋆(X, Y) = g(F̄₁▷X, F̄₂▷Y)`.
    pub fn g_star(&self, x: &VectorField, y: &VectorField) -> Result<Polynomial> {
        self.require_killing()?;
        Ok(self.ctx.bilinear(x, y, |a, b| self.metric.g(a, b)))
    }
    /// `g_⋆(X, Y ⋆ h) − g_⋆(X, Y) ⋆ h`.
    pub fn right_linearity_residual(&self, x: &VectorField, y: &VectorField, h: &Polynomial) -> Result<Polynomial> {
        let lhs = self.g_star(x, &self.ctx.right(y, h))?;
        Ok(lhs.sub(&self.ctx.star(&self.g_star(x, y)?, h)))
    }
    /// `L^⋆_X g_⋆(Y,Z) − g_⋆(∇^F_X Y, Z) − g_⋆(R̄₁▷Y, ∇^F_{R̄₂▷X} Z)`.
    pub fn compatibility_residual(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> Result<Polynomial> {
        self.require_killing()?;
        let a = self.ctx.lie(x, &self.g_star(y, z)?);
        let b = self.g_star(&self.nabla(x, y), z)?;
        let c = try_sum2(self.ctx.twist().rbar(), y, x, |y1, x2| self.g_star(y1, &self.nabla(x2, z)))?;
        let mut r = a.sub(&b);
        if let Some(c) = c {
            r = r.sub(&c);
        }
        Ok(r)
    }

    /// `T^F_⋆(X,Y) = ∇^F_X Y − ∇^F_{R₂▷Y}(R₁▷X) − [X,Y]_⋆`.
    pub fn torsion(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let swapped = self.ctx.with_r21(y, x, |y2, x1| self.nabla(y2, x1));
        self.nabla(x, y).sub(&swapped).sub(&self.ctx.bracket(x, y))
    }

    /// `∇_X∇_Y Z − ∇_{R₂▷Y}∇_{R₁▷X} Z − ∇_{[X,Y]_⋆} Z` for a twisted connection.
    pub fn curvature_of(&self, nab: &Nabla<'_>, x: &VectorField, y: &VectorField, z: &VectorField) -> Result<VectorField> {
        let a = nab(x, &nab(y, z)?)?;
        let b = try_sum2(&self.ctx.twist().r().flip(), y, x, |y2, x1| nab(y2, &nab(x1, z)?))?;
        let c = nab(&self.ctx.bracket(x, y), z)?;
        let mut r = a.sub(&c);
        if let Some(b) = b {
            r = r.sub(&b);
        }
        Ok(r)
    }
    /// Ambient `R^F_⋆(X,Y)Z`.
    pub fn curvature(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
        let nab = |a: &VectorField, b: &VectorField| Ok(self.nabla(a, b));
        self.curvature_of(&nab, x, y, z).expect("infallible")
    }
    /// Intrinsic `R^F_{t⋆}(X,Y)Z`, modulo the ideal.
    pub fn intrinsic_curvature(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> Result<VectorField> {
        let m = self.require_tangent(&[x, y, z])?;
        let nab = |a: &VectorField, b: &VectorField| m.tangent(&self.nabla(a, b));
        m.reduce_field(&self.curvature_of(&nab, x, y, z)?)
    }

    /// `Ric^F_⋆(X, Y) = ± Σ_i ⟨θ^i, R^F_{t⋆}(pr_t ∂_i, X)Y⟩′_⋆`, with `θ` the
    /// ⋆-dual of the coordinate frame; the sign selects the trace slot.
    pub fn ricci(&self, x: &VectorField, y: &VectorField, conv: RicciConvention) -> Result<Polynomial> {
        let m = self.require_tangent(&[x, y])?;
        let ring = m.ring();
        let coords: Vec<VectorField> = (0..m.n()).map(|i| VectorField::partial(ring, i)).collect();
        let theta = self.ctx.star_dual_frame(&coords, Some(m.basis()))?;
        let mut acc = Polynomial::zero(ring);
        for (i, d) in coords.iter().enumerate() {
            let e = m.tangent(d)?;
            let r = self.intrinsic_curvature(&e, x, y)?;
            acc = acc.add(&self.ctx.pair_primed(&theta[i], &r)?);
        }
        let acc = m.reduce(&acc)?;
        Ok(match conv {
            RicciConvention::FirstSlot => acc,
            RicciConvention::SecondSlot => acc.neg(),
        })
    }
    /// `Ric^F_⋆` on `g⁻¹ = g^{ij} ∂_i⊗∂_j` written as `(F₁▷∂_i) ⊗_⋆ (F₂▷∂_j)`,
    /// both factors tangent-projected.
    pub fn ricci_scalar(&self, conv: RicciConvention) -> Result<Polynomial> {
        let m = self.require_tangent(&[])?;
        let ring = m.ring();
        let n = m.n();
        let ginv = self.metric.inverse_matrix();
        let mut acc = Polynomial::zero(ring);
        let mut err = None;
        for i in 0..n {
            for j in 0..n {
                if ginv[i][j].is_zero() {
                    continue;
                }
                let (di, dj) = (VectorField::partial(ring, i), VectorField::partial(ring, j));
                self.ctx.twist().f().for_each_pair(&di, &dj, |c, a, b| {
                    if err.is_some() {
                        return;
                    }
                    let v = m.tangent(a).and_then(|a| m.tangent(b).and_then(|b| self.ricci(&a, &b, conv)));
                    match v {
                        Ok(v) => acc = acc.add(&scale_poly(v, c).scale_scalar(&ginv[i][j])),
                        Err(e) => err = Some(e),
                    }
                });
            }
        }
        if let Some(e) = err {
            return Err(e);
        }
        m.reduce(&acc)
    }

    /// Residual of the twisted Gauss equation on a tangent quadruple,
    /// modulo the ideal.
    ///
    /// `pr_⊥` and `g_⋆` are linear over `ℂ[[ν]]`, so each leg sum is first
    /// collected per word acting on the field that meets `W`, and only then
    /// projected.
    pub fn gauss_residual(&self, x: &VectorField, y: &VectorField, z: &VectorField, w: &VectorField) -> Result<Polynomial> {
        let m = self.require_tangent(&[x, y, z, w])?;
        let gens = self.ctx.gens().clone();
        let lhs = self.g_star(&self.curvature(x, y, z), w)?;
        let t1 = self.g_star(&self.intrinsic_curvature(x, y, z)?, w)?;

        // Σ g⋆(II(x, R̄₁▷z), II(R̄₂▷y, w))
        let mut groups: BTreeMap<Word, VectorField> = BTreeMap::new();
        let (mut mz, mut my) = (ActionMemo::new(z.clone()), ActionMemo::new(y.clone()));
        for (k, c) in self.ctx.twist().rbar().terms() {
            let za = mz.get(&gens, &k[0]);
            if za.is_zero() || my.get(&gens, &k[1]).is_zero() {
                continue;
            }
            let v = self.nabla(x, &za).scale(c);
            add_to(&mut groups, &k[1], v);
        }
        let mut t2 = Polynomial::zero(m.ring());
        for (word, acc) in &groups {
            let yb = my.get(&gens, word);
            t2 = t2.add(&self.g_star(&m.normal(acc)?, &m.normal(&self.nabla(&yb, w))?)?);
        }

        // Σ g⋆(II(T₁▷y, T₂▷z), II(T₃▷x, w)) over the twisted coproduct of R̄
        let tri = self.ctx.twist().twisted_coproduct_leg0(self.ctx.twist().rbar());
        let mut groups: BTreeMap<Word, VectorField> = BTreeMap::new();
        let (mut my, mut mz, mut mx) = (ActionMemo::new(y.clone()), ActionMemo::new(z.clone()), ActionMemo::new(x.clone()));
        for (k, c) in tri.terms() {
            let (ya, zb) = (my.get(&gens, &k[0]), mz.get(&gens, &k[1]));
            if ya.is_zero() || zb.is_zero() || mx.get(&gens, &k[2]).is_zero() {
                continue;
            }
            add_to(&mut groups, &k[2], self.nabla(&ya, &zb).scale(c));
        }
        let mut t3 = Polynomial::zero(m.ring());
        for (word, acc) in &groups {
            let xc = mx.get(&gens, word);
            t3 = t3.add(&self.g_star(&m.normal(acc)?, &m.normal(&self.nabla(&xc, w))?)?);
        }
        m.reduce(&lhs.sub(&t1.sub(&t3).add(&t2)))
    }
}

fn add_to(groups: &mut BTreeMap<Word, VectorField>, k: &Word, v: VectorField) {
    match groups.get_mut(k) {
        Some(acc) => *acc = acc.add(&v),
        None => {
            groups.insert(k.clone(), v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Scalar;
    use crate::hopf_twist::TwistData;
    use crate::models;

    fn cylinder_conn() -> (models::Model, TwistedConnection) {
        let m = models::cylinder(Scalar::one());
        let t = TwistData::build(&m.gens, models::cylinder_twist_d3_l12(), 3).unwrap();
        let c = TwistedConnection::new(StarContext::new(t), m.metric.clone(), Some(m.family.clone())).unwrap();
        (m, c)
    }

    #[test]
    fn invariant_first_slot_is_classical() {
        let (m, c) = cylinder_conn();
        let y = m.gens.field(1).mul_poly(&m.ring_var(2));
        assert_eq!(c.nabla(m.gens.field(0), &y), flat_nabla(m.gens.field(0), &y));
        assert_eq!(c.class(), EquivarianceClass::Killing);
    }

    #[test]
    fn torsion_free_and_compatible() {
        let (m, c) = cylinder_conn();
        let l = m.gens.field(1).mul_poly(&m.ring_var(2));
        let d3 = m.gens.field(0).mul_poly(&m.ring_var(0));
        assert!(c.torsion(&l, &d3).is_zero());
        assert!(c.compatibility_residual(&l, &d3, &l).unwrap().is_zero());
        assert!(c.gauss_residual(&l, &d3, &l, &d3).unwrap().is_zero());
    }

    #[test]
    fn dilatation_twist_refuses_metric_ops() {
        let m = models::cone();
        let t = TwistData::build(&m.gens, models::cone_twist(), 2).unwrap();
        let c = TwistedConnection::new(StarContext::new(t), m.metric.clone(), None).unwrap();
        assert_eq!(c.class(), EquivarianceClass::Equivariance);
        let x = VectorField::partial(&m.ring, 0);
        assert!(matches!(c.g_star(&x, &x), Err(Error::NonKilling(_))));
        assert!(c.torsion(&x, m.gens.field(3)).is_zero());
    }
}
