//! The worked examples: elliptic cylinder, circular hyperboloid (in both
//! coordinate systems) and the cone, with their twists and the
//! characterizing relations of their twisted calculi.

use crate::algebra_core::{NuSeries, Polynomial, Ring, RingRef, Scalar};
use crate::cartan_calculus::{Field, PForm, VectorField};
use crate::hopf_twist::{GenRef, GeneratorSet, TwistSpec};
use crate::riemann_geometry::Metric;
use crate::star_calculus::StarContext;
use crate::submanifold::{LevelSetFamily, Part, RelationReport};

#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub ring: RingRef,
    pub family: LevelSetFamily,
    pub gens: GenRef,
    pub metric: Metric,
}

impl Model {
    pub fn ring_var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i)
    }
    pub fn param(&self, j: usize, e: i32) -> Polynomial {
        Polynomial::param(&self.ring, j, e)
    }
    pub fn twist(&self, name: &str) -> Option<TwistSpec> {
        match (self.name.as_str(), name) {
            ("cylinder", "d3_l12") => Some(cylinder_twist_d3_l12()),
            ("cylinder", "l13_l23") => Some(cylinder_twist_l13_l23()),
            ("hyperboloid" | "hyperboloid_y", "jordanian") => Some(jordanian()),
            ("cone", "h_d") => Some(cone_twist()),
            (_, "identity") => Some(TwistSpec::Identity),
            _ => None,
        }
    }
}

fn half() -> Scalar {
    Scalar::frac(1, 2)
}

fn vf(r: &RingRef, comps: Vec<Polynomial>) -> VectorField {
    VectorField::new(r, comps).expect("dimension")
}

/// `f = ½(x1² + a x2²) − ½R²`, generators `∂3, L12, L13, L23`.
pub fn cylinder(a: Scalar) -> Model {
    let r = Ring::standard("x", 3, &["R"]);
    let x = |i| Polynomial::var(&r, i);
    let z = Polynomial::zero(&r);
    let f = x(0).pow(2).add(&x(1).pow(2).scale_scalar(&a)).sub(&Polynomial::param(&r, 0, 2)).scale_scalar(&half());
    let ax2 = x(1).scale_scalar(&a);
    let d3 = VectorField::partial(&r, 2);
    let l12 = vf(&r, vec![ax2.neg(), x(0), z.clone()]);
    let l13 = vf(&r, vec![z.clone(), z.clone(), x(0)]);
    let l23 = vf(&r, vec![z.clone(), z, ax2]);
    let gens = GeneratorSet::new(&["d3", "L12", "L13", "L23"], vec![d3, l12, l13, l23]).expect("cylinder generators");
    let metric = Metric::euclidean(3);
    let family = LevelSetFamily::define(vec![f], metric.clone()).expect("cylinder family");
    Model { name: "cylinder".into(), ring: r, family, gens, metric }
}

/// `exp(iν ∂3⊗L12)`.
pub fn cylinder_twist_d3_l12() -> TwistSpec {
    TwistSpec::Abelian(vec![(0, 1, Scalar::one())])
}
/// `exp(iν L13⊗L23)`.
pub fn cylinder_twist_l13_l23() -> TwistSpec {
    TwistSpec::Abelian(vec![(2, 3, Scalar::one())])
}
/// `exp(½ H⊗log(1+iνE))` with `H, E` the first two generators.
pub fn jordanian() -> TwistSpec {
    TwistSpec::Jordanian { h: 0, e: 1 }
}
/// `exp(iν H⊗D)` on the cone.
pub fn cone_twist() -> TwistSpec {
    TwistSpec::Abelian(vec![(0, 3, Scalar::one())])
}

/// `H = 2L13, E = L12 + L23, E′ = L12 − L23` for `f = ½ x·x` (Minkowski).
fn lorentz_fields(r: &RingRef) -> Vec<VectorField> {
    let x = |i| Polynomial::var(r, i);
    let z = Polynomial::zero(r);
    let l12 = vf(r, vec![x(1).neg(), x(0), z.clone()]);
    let l13 = vf(r, vec![x(2), z.clone(), x(0)]);
    let l23 = vf(r, vec![z, x(2), x(1)]);
    vec![l13.scale(&NuSeries::scalar(Scalar::int(2))), l12.add(&l23), l12.sub(&l23)]
}

fn minkowski_quadric(r: &RingRef) -> Polynomial {
    let x = |i| Polynomial::var(r, i);
    x(0).pow(2).add(&x(1).pow(2)).sub(&x(2).pow(2)).scale_scalar(&half())
}

/// `f = ½(x1² + x2² − x3²) − c` with the Minkowski metric.
pub fn hyperboloid() -> Model {
    let r = Ring::standard("x", 3, &["c"]);
    let f = minkowski_quadric(&r).sub(&Polynomial::param(&r, 0, 1));
    let gens = GeneratorSet::new(&["H", "E", "Ep"], lorentz_fields(&r)).expect("so(2,1)");
    let metric = Metric::minkowski(3);
    let family = LevelSetFamily::define(vec![f], metric.clone()).expect("hyperboloid family");
    Model { name: "hyperboloid".into(), ring: r, family, gens, metric }
}

/// `x = M y` for `y1 = x1 + x3, y2 = x2, y3 = x1 − x3`.
pub fn light_cone_matrix() -> Vec<Vec<Scalar>> {
    let (h, z) = (half(), Scalar::zero());
    vec![vec![h.clone(), z.clone(), h.clone()], vec![z.clone(), Scalar::one(), z.clone()], vec![h.clone(), z, -h]]
}

/// The hyperboloid in the coordinates `y`, where `f = ½(y3 y1 + y2²) − c`.
pub fn hyperboloid_y() -> Model {
    let x = hyperboloid();
    let r = Ring::standard("y", 3, &["c"]);
    let m = light_cone_matrix();
    let f = x.family.f()[0].linear_substitution(&r, &m).expect("substitution");
    let fields: Vec<VectorField> = x.gens.fields().iter().map(|v| v.linear_substitution(&r, &m).expect("substitution")).collect();
    let gens = GeneratorSet::new(&["H", "E", "Ep"], fields).expect("so(2,1)");
    let (h, z) = (half(), Scalar::zero());
    let g = vec![vec![z.clone(), z.clone(), h.clone()], vec![z.clone(), Scalar::one(), z.clone()], vec![h, z.clone(), z]];
    let metric = Metric::custom(g).expect("light-cone metric");
    let family = LevelSetFamily::define(vec![f], metric.clone()).expect("hyperboloid family");
    Model { name: "hyperboloid_y".into(), ring: r, family, gens, metric }
}

/// The cone `½(x1² + x2² − x3²) = 0` with `H, E, E′` and `D = x^i ∂_i`.
pub fn cone() -> Model {
    let r = Ring::standard("x", 3, &[]);
    let mut fields = lorentz_fields(&r);
    fields.push(vf(&r, (0..3).map(|i| Polynomial::var(&r, i)).collect()));
    let gens = GeneratorSet::new(&["H", "E", "Ep", "D"], fields).expect("cone generators");
    let metric = Metric::minkowski(3);
    let family = LevelSetFamily::define(vec![minkowski_quadric(&r)], metric.clone()).expect("cone family");
    Model { name: "cone".into(), ring: r, family, gens, metric }
}

pub fn by_name(name: &str) -> Option<Model> {
    match name {
        "cylinder" => Some(cylinder(Scalar::one())),
        "hyperboloid" => Some(hyperboloid()),
        "hyperboloid_y" => Some(hyperboloid_y()),
        "cone" => Some(cone()),
        _ => None,
    }
}

fn push_form(rep: &mut RelationReport, name: &str, w: &PForm) {
    for i in 0..w.ring().dim() {
        rep.push(format!("{}[{}]", name, i + 1), w.comp(&[i]));
    }
}

fn push_vector(rep: &mut RelationReport, name: &str, v: &VectorField) {
    for (i, c) in v.comps().iter().enumerate() {
        rep.push(format!("{}[{}]", name, i + 1), c.clone());
    }
}

/// The relations `½(x1⋆x1 + a x2⋆x2) − c = 0`, `ξ¹⋆x¹ + aξ²⋆x² = df ≡ 0`
/// and `ε^{ijk} f_i ⋆ L_jk = 0` in the twisted calculus on the cylinder.
pub fn cylinder_relations(ctx: &StarContext, model: &Model, a: &Scalar) -> crate::Result<RelationReport> {
    let fam = &model.family;
    let r = &model.ring;
    let x = |i| Polynomial::var(r, i);
    let mut rep = RelationReport::default();
    let c = Polynomial::param(r, 0, 2).scale_scalar(&half());
    let eq = ctx.star(&x(0), &x(0)).add(&ctx.star(&x(1), &x(1)).scale_scalar(a)).scale_scalar(&half()).sub(&c);
    rep.push("level", fam.reduce(&eq)?);
    let xi = ctx.right(&PForm::dx(r, 0), &x(0)).add(&ctx.right(&PForm::dx(r, 1), &x(1)).scale(&NuSeries::scalar(a.clone())));
    let df = PForm::d_function(&fam.f()[0]);
    push_form(&mut rep, "xi*x - df", &xi.sub(&df));
    push_form(&mut rep, "pr_t(df)", &fam.project_form(&xi, Part::Tangent)?);
    let l = |i: usize, j: usize| -> VectorField {
        let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let idx = match (lo, hi) {
            (0, 1) => 1,
            (0, 2) => 2,
            _ => 3,
        };
        let v = model.gens.field(idx).clone();
        if s < 0 {
            v.neg()
        } else {
            v
        }
    };
    let mut eps = VectorField::zero(r);
    for (i, j, k, s) in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)] {
        let fi = fam.jacobian()[0][i].clone();
        let t = ctx.left(&fi, &l(j, k));
        eps = if s > 0 { eps.add(&t) } else { eps.sub(&t) };
    }
    push_vector(&mut rep, "eps f*L", &fam.reduce_field(&eps)?);
    Ok(rep)
}

/// The relations `½y3⋆y1 + ½y2⋆y2 − c = 0`, `½(y3⋆η1 + η3⋆y1) + y2⋆η2 = df ≡ 0`
/// and `y3⋆E − y1⋆E′ − y2⋆H + iν y1⋆H − 2iν(1+iν) y1⋆E = 0` under the
/// Jordanian twist.
pub fn hyperboloid_relations(ctx: &StarContext, model: &Model) -> crate::Result<RelationReport> {
    let fam = &model.family;
    let r = &model.ring;
    let y = |i| Polynomial::var(r, i);
    let mut rep = RelationReport::default();
    let c = Polynomial::param(r, 0, 1);
    let eq = ctx.star(&y(2), &y(0)).add(&ctx.star(&y(1), &y(1))).scale_scalar(&half()).sub(&c);
    rep.push("level", fam.reduce(&eq)?);
    let eta = |i| PForm::dx(r, i);
    let w = ctx.left(&y(2), &eta(0)).add(&ctx.right(&eta(2), &y(0))).scale(&NuSeries::scalar(half())).add(&ctx.left(&y(1), &eta(1)));
    let df = PForm::d_function(&fam.f()[0]);
    push_form(&mut rep, "y*eta - df", &w.sub(&df));
    push_form(&mut rep, "pr_t(df)", &fam.project_form(&w, Part::Tangent)?);
    let cap = Some(ctx.order());
    let inu = NuSeries::monomial(Scalar::i(), 1, cap);
    let (h, e, ep) = (model.gens.field(0), model.gens.field(1), model.gens.field(2));
    let lin = ctx
        .left(&y(2), e)
        .sub(&ctx.left(&y(0), ep))
        .sub(&ctx.left(&y(1), h))
        .add(&ctx.left(&y(0), h).scale(&inu))
        .sub(&ctx.left(&y(0), e).scale(&inu.mul(&NuSeries::one().add(&inu)).scale(&Scalar::int(2))));
    push_vector(&mut rep, "linear", &fam.reduce_field(&lin)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_twist::TwistData;

    #[test]
    fn bracket_tables() {
        let c = cylinder(Scalar::int(3));
        let s = |v: &[i64]| v.iter().map(|&k| Scalar::int(k)).collect::<Vec<_>>();
        assert_eq!(c.gens.bracket_coeffs(1, 2), s(&[0, 0, 0, -1]).as_slice());
        assert_eq!(c.gens.bracket_coeffs(1, 3), s(&[0, 0, 3, 0]).as_slice());
        assert!(c.gens.commute(2, 3));
        let h = hyperboloid();
        assert_eq!(h.gens.bracket_coeffs(0, 1), s(&[0, 2, 0]).as_slice());
        assert_eq!(h.gens.bracket_coeffs(0, 2), s(&[0, 0, -2]).as_slice());
        assert_eq!(h.gens.bracket_coeffs(1, 2), s(&[-1, 0, 0]).as_slice());
        let hy = hyperboloid_y();
        assert_eq!(hy.gens.bracket_coeffs(0, 1), s(&[0, 2, 0]).as_slice());
    }

    #[test]
    fn characterizing_relations() {
        let c = cylinder(Scalar::one());
        let ctx = StarContext::new(TwistData::build(&c.gens, cylinder_twist_d3_l12(), 4).unwrap());
        let rep = cylinder_relations(&ctx, &c, &Scalar::one()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn hyperboloid_linear_relation_leaves_y1_e() {
        let h = hyperboloid_y();
        let ctx = StarContext::new(TwistData::build(&h.gens, jordanian(), 4).unwrap());
        let rep = hyperboloid_relations(&ctx, &h).unwrap();
        let bad: Vec<&str> = rep.failures().map(|(n, _)| n.as_str()).collect();
        assert_eq!(bad, ["linear[2]", "linear[3]"]);
        // the leftover is exactly −2iν(1+iν) y1·E
        let inu = NuSeries::monomial(Scalar::i(), 1, Some(4));
        let k = inu.mul(&NuSeries::one().add(&inu)).scale(&Scalar::int(-2));
        let want = h.gens.field(1).mul_poly(&h.ring_var(0)).scale(&k);
        for (i, (_, r)) in rep.entries.iter().filter(|(n, _)| n.starts_with("linear")).enumerate() {
            assert_eq!(r, want.comp(i));
        }
        let fixed = hyperboloid_linear_without_last(&ctx, &h);
        assert!(fixed.is_zero());
    }

    fn hyperboloid_linear_without_last(ctx: &StarContext, m: &Model) -> VectorField {
        let y = |i| m.ring_var(i);
        let inu = NuSeries::monomial(Scalar::i(), 1, Some(ctx.order()));
        let (h, e, ep) = (m.gens.field(0), m.gens.field(1), m.gens.field(2));
        ctx.left(&y(2), e).sub(&ctx.left(&y(0), ep)).sub(&ctx.left(&y(1), h)).add(&ctx.left(&y(0), h).scale(&inu))
    }
}
