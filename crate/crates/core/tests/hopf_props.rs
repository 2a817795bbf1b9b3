use proptest::prelude::*;
use twistfold::algebra_core::{NuSeries, Polynomial, Scalar};
use twistfold::hopf_twist::{check_twist_axioms, coproduct, LegSum, TwistData, TwistSpec, UElement};
use twistfold::models::{self, Model};
use twistfold::sampling;
use twistfold::star_calculus::StarContext;

fn model(k: usize) -> Model {
    if k == 0 {
        models::cylinder(Scalar::one())
    } else {
        models::hyperboloid()
    }
}

fn spec(k: usize) -> TwistSpec {
    match k {
        0 => models::cylinder_twist_d3_l12(),
        1 => models::cylinder_twist_l13_l23(),
        _ => models::jordanian(),
    }
}

fn twisted(k: usize, order: usize) -> (Model, StarContext) {
    let m = model(k.min(2) / 2);
    let t = TwistData::build(&m.gens, spec(k), order).unwrap();
    (m, StarContext::new(t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coproduct_is_coassociative_and_cocommutative(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let mut rng = sampling::sampler(seed);
        let u = sampling::uelement(&mut rng, &m.gens, 3, 3);
        let d = coproduct(&u);
        prop_assert!(d.coproduct_leg(0).agrees_with(&d.coproduct_leg(1)));
        prop_assert!(d.flip().agrees_with(&d));
        prop_assert!(d.counit_leg(0).contract().agrees_with(&u));
        prop_assert!(d.counit_leg(1).contract().agrees_with(&u));
    }

    #[test]
    fn antipode_axiom(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let mut rng = sampling::sampler(seed);
        let u = sampling::uelement(&mut rng, &m.gens, 3, 3);
        let one = UElement::one(&m.gens).scale(&u.counit());
        let s = |w: &Vec<usize>| UElement::word(&m.gens, w, NuSeries::one()).antipode();
        prop_assert!(coproduct(&u).map_leg(0, s).contract().agrees_with(&one));
        prop_assert!(coproduct(&u).map_leg(1, s).contract().agrees_with(&one));
        prop_assert!(u.antipode().antipode().agrees_with(&u));
    }

    #[test]
    fn action_is_a_module_algebra(seed in any::<u64>(), k in 0usize..2) {
        let m = model(k);
        let mut rng = sampling::sampler(seed);
        let u = sampling::uelement(&mut rng, &m.gens, 2, 3);
        let v = sampling::uelement(&mut rng, &m.gens, 2, 2);
        let a = sampling::polynomial(&mut rng, &m.ring, 2, 3);
        let b = sampling::polynomial(&mut rng, &m.ring, 2, 3);
        let lhs = u.act(&a.mul(&b));
        let rhs = coproduct(&u).apply2(&a, &b, |x, y| x.mul(y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(u.mul(&v).act(&a), u.act(&v.act(&a)));
        let comm = u.commutator(&v).act(&a);
        prop_assert_eq!(comm, u.act(&v.act(&a)).sub(&v.act(&u.act(&a))));
    }

    #[test]
    fn twisted_coproduct_covariance(seed in any::<u64>(), k in 0usize..3) {
        let (m, ctx) = twisted(k, 3);
        let mut rng = sampling::sampler(seed);
        let u = sampling::uelement(&mut rng, &m.gens, 2, 2);
        let a = sampling::polynomial(&mut rng, &m.ring, 2, 3);
        let b = sampling::polynomial(&mut rng, &m.ring, 2, 3);
        let lhs = u.act(&ctx.star(&a, &b));
        prop_assert!(lhs.agrees_with(&ctx.twisted_coproduct_star(&u, &a, &b)));
        let t = ctx.twist();
        let du = t.twisted_coproduct(&u);
        prop_assert!(du.counit_leg(0).contract().agrees_with(&u));
        prop_assert!(du.counit_leg(1).contract().agrees_with(&u));
    }

    #[test]
    fn twisted_antipode_axiom(seed in any::<u64>(), k in 0usize..3) {
        let (m, ctx) = twisted(k, 3);
        let t = ctx.twist();
        let mut rng = sampling::sampler(seed);
        let u = sampling::uelement(&mut rng, &m.gens, 2, 2);
        let one = UElement::one(&m.gens).scale(&u.counit());
        let s = |w: &Vec<usize>| t.twisted_antipode(&UElement::word(&m.gens, w, NuSeries::one()));
        let lhs = t.twisted_coproduct(&u).map_leg(0, s).contract().truncate(3);
        prop_assert!(lhs.agrees_with(&one.truncate(3)));
    }
}

#[test]
fn shipped_twists_satisfy_the_axioms() {
    for k in 0..3 {
        let (_, ctx) = twisted(k, 3);
        let rep = check_twist_axioms(ctx.twist(), 2);
        assert!(rep.passed(), "twist {k}: {:?}", rep.cocycle_mismatches);
        assert!(ctx.twist().is_unitary().unwrap());
        assert!(ctx.twist().is_triangular());
        let (l, r) = ctx.twist().r_coproduct_sides();
        assert!(l.truncate(3).agrees_with(&r.truncate(3)), "twist {k}");
    }
}

#[test]
fn abelian_twist_through_second_order() {
    // F = 1 + iν d3⊗L12 - ν²/2 d3²⊗L12²
    let (m, ctx) = twisted(0, 2);
    let g = &m.gens;
    let i = Scalar::i();
    let mut want = LegSum::one(g, 2);
    let term = |w0: Vec<usize>, w1: Vec<usize>, c: NuSeries| LegSum::tensor_of(&[UElement::word(g, &w0, c), UElement::word(g, &w1, NuSeries::one())]);
    want = want.add(&term(vec![0], vec![1], NuSeries::monomial(i, 1, None)));
    want = want.add(&term(vec![0, 0], vec![1, 1], NuSeries::monomial(Scalar::frac(-1, 2), 2, None)));
    assert!(ctx.twist().f().agrees_with(&want.truncate(2)));
    let x = |k| Polynomial::var(&m.ring, k);
    assert!(ctx.star(&x(2), &x(0)).agrees_with(&x(0).mul(&x(2)).add(&x(1).scale(&NuSeries::monomial(Scalar::i(), 1, None)))));
}
