use proptest::prelude::*;
use twistfold::algebra_core::{Polynomial, Scalar};
use twistfold::cartan_calculus::{Field, VectorField};
use twistfold::hopf_twist::TwistData;
use twistfold::models::{self, Model};
use twistfold::riemann_geometry::{self as rg, flat_nabla};
use twistfold::sampling;
use twistfold::star_calculus::StarContext;
use twistfold::submanifold::{classify_vector, Part, TangencyClass};
use twistfold::twisted_geometry::TwistedConnection;

fn model(k: usize) -> Model {
    if k == 0 {
        models::cylinder(Scalar::one())
    } else {
        models::hyperboloid()
    }
}

fn connection(k: usize, order: usize) -> (Model, TwistedConnection) {
    let m = model(k);
    let spec = if k == 0 { models::cylinder_twist_d3_l12() } else { models::jordanian() };
    let ctx = StarContext::new(TwistData::build(&m.gens, spec, order).unwrap());
    let c = TwistedConnection::new(ctx, m.metric.clone(), Some(m.family.clone())).unwrap();
    (m, c)
}

fn tangent(rng: &mut sampling::Sampler, m: &Model) -> VectorField {
    sampling::tangent_field(rng, m.gens.fields(), 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tangent_fields_close_under_brackets(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let mut rng = sampling::sampler(seed);
        let (x, y) = (tangent(&mut rng, &m), tangent(&mut rng, &m));
        prop_assert!(m.family.is_tangent_on_shell(&x).unwrap());
        prop_assert!(m.family.is_tangent_on_shell(&x.bracket(&y)).unwrap());
    }

    #[test]
    fn projections_split_vectors_and_forms(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let fam = &m.family;
        let mut rng = sampling::sampler(seed);
        let v = sampling::vector_field(&mut rng, &m.ring, 1);
        let (t, n) = (fam.tangent(&v).unwrap(), fam.normal(&v).unwrap());
        prop_assert!(fam.reduce_field(&t.add(&n).sub(&v)).unwrap().is_zero());
        prop_assert!(fam.tangent(&t).unwrap().sub(&t).is_zero());
        prop_assert!(fam.normal(&t).unwrap().is_zero());
        prop_assert!(fam.is_tangent_on_shell(&t).unwrap());
        prop_assert!(fam.reduce(&m.metric.g(&t, &n)).unwrap().is_zero());
        let w = sampling::one_form(&mut rng, &m.ring, 1);
        let (wt, wn) = (fam.project_form(&w, Part::Tangent).unwrap(), fam.project_form(&w, Part::Normal).unwrap());
        prop_assert!(fam.reduce_field(&wt.add(&wn).sub(&w)).unwrap().is_zero());
        prop_assert!(fam.reduce(&wn.pair(&t).unwrap()).unwrap().is_zero());
        prop_assert!(fam.reduce(&wt.pair(&n).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn classical_second_form_and_gauss(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let fam = &m.family;
        let mut rng = sampling::sampler(seed);
        let v: Vec<VectorField> = (0..4).map(|_| tangent(&mut rng, &m)).collect();
        let ii = rg::second_form(fam, &v[0], &v[1]).unwrap();
        prop_assert!(fam.reduce_field(&ii.sub(&rg::second_form(fam, &v[1], &v[0]).unwrap())).unwrap().is_zero());
        prop_assert!(fam.reduce_field(&ii.sub(&rg::second_form_closed(fam, &v[0], &v[1]).unwrap())).unwrap().is_zero());
        prop_assert!(fam.tangent(&ii).unwrap().is_zero());
        prop_assert!(rg::gauss_residual(fam, &v[0], &v[1], &v[2], &v[3]).unwrap().is_zero());
    }

    #[test]
    fn twisted_connection_is_left_linear(seed in any::<u64>(), k in 0usize..2) {
        let (m, c) = connection(k, 2);
        let ctx = c.context();
        let mut rng = sampling::sampler(seed);
        let h = sampling::polynomial(&mut rng, &m.ring, 2, 2);
        let x = sampling::vector_field(&mut rng, &m.ring, 1);
        let y = sampling::vector_field(&mut rng, &m.ring, 1);
        let lhs = c.nabla(&ctx.left(&h, &x), &y);
        prop_assert!(lhs.agrees_with(&ctx.left(&h, &c.nabla(&x, &y))));
        prop_assert!(c.nabla(&x, &y).classical().agrees_with(&flat_nabla(&x, &y)));
        let x0 = sampling::vector_field(&mut rng, &m.ring, 1);
        let d = c.nabla(&x0, &ctx.right(&y, &h)).sub(&ctx.right(&c.nabla(&x0, &y), &h));
        prop_assert!(d.agrees_with(&ctx.with_rbar(&y, &x0, |y1, x2| ctx.right(y1, &ctx.act_vector(x2, &h)))));
    }

    #[test]
    fn twisted_metric_is_right_linear(seed in any::<u64>(), k in 0usize..2) {
        let (m, c) = connection(k, 2);
        let mut rng = sampling::sampler(seed);
        let h = sampling::polynomial(&mut rng, &m.ring, 2, 2);
        let x = sampling::vector_field(&mut rng, &m.ring, 1);
        let y = sampling::vector_field(&mut rng, &m.ring, 1);
        prop_assert!(c.right_linearity_residual(&x, &y, &h).unwrap().is_zero());
        prop_assert!(c.torsion(&x, &y).is_zero());
        prop_assert_eq!(c.g_star(&x, &y).unwrap().classical(), m.metric.g(&x, &y));
    }
}

#[test]
fn generators_and_killing_fields() {
    let cyl = model(0);
    let names: Vec<bool> = cyl.gens.fields().iter().map(|z| rg::is_killing(&cyl.metric, z)).collect();
    assert_eq!(names, vec![true, true, false, false]);
    let hyp = model(1);
    assert!(hyp.gens.fields().iter().all(|z| rg::is_killing(&hyp.metric, z)));
    let cone = models::cone();
    let d = cone.gens.field(3);
    assert!(!rg::is_killing(&cone.metric, d));
    assert_eq!(classify_vector(d, &cone.family).unwrap().name(), "chi_c");
    for m in [&cyl, &hyp] {
        for z in m.gens.fields() {
            assert_eq!(classify_vector(z, &m.family).unwrap(), TangencyClass::Tangent);
        }
    }
}

#[test]
fn normal_projection_of_d1_on_the_cylinder() {
    // pr_⊥(∂1) = x1 R^-2 (x1 ∂1 + x2 ∂2) on the shell
    let m = model(0);
    let x = |i| m.ring_var(i);
    let rinv2 = m.param(0, -2);
    let z = Polynomial::zero(&m.ring);
    let want = VectorField::new(&m.ring, vec![x(0).mul(&x(0)).mul(&rinv2), x(0).mul(&x(1)).mul(&rinv2), z]).unwrap();
    let got = m.family.normal(&VectorField::partial(&m.ring, 0)).unwrap();
    assert!(m.family.reduce_field(&got.sub(&want)).unwrap().is_zero());
}
