use proptest::prelude::*;
use twistfold::algebra_core::{Polynomial, Ring, RingRef};
use twistfold::cartan_calculus::{Field, PForm, TensorField, VectorField};
use twistfold::sampling;

fn ring() -> RingRef {
    Ring::standard("x", 3, &[])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_is_a_lie_bracket(seed in any::<u64>()) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let (x, y, z) = (sampling::vector_field(&mut rng, &r, 2), sampling::vector_field(&mut rng, &r, 2), sampling::vector_field(&mut rng, &r, 2));
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).is_zero());
        let jacobi = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(jacobi.is_zero());
        let h = sampling::polynomial(&mut rng, &r, 3, 4);
        let lhs = x.bracket(&y).apply(&h);
        prop_assert_eq!(lhs, x.apply(&y.apply(&h)).sub(&y.apply(&x.apply(&h))));
    }

    #[test]
    fn exterior_derivative_is_graded(seed in any::<u64>()) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let h = sampling::polynomial(&mut rng, &r, 3, 4);
        let a = sampling::one_form(&mut rng, &r, 2);
        let b = sampling::one_form(&mut rng, &r, 2);
        prop_assert!(PForm::d_function(&h).d().is_zero());
        prop_assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = a.d().wedge(&b).unwrap().sub(&a.wedge(&b.d()).unwrap());
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(a.wedge(&b).unwrap().add(&b.wedge(&a).unwrap()).is_zero());
        let ha = PForm::function(h.clone()).wedge(&a).unwrap().d();
        prop_assert!(ha.agrees_with(&PForm::d_function(&h).wedge(&a).unwrap().add(&a.d().mul_poly(&h))));
    }

    #[test]
    fn cartan_identities(seed in any::<u64>()) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let x = sampling::vector_field(&mut rng, &r, 2);
        let y = sampling::vector_field(&mut rng, &r, 2);
        let a = sampling::one_form(&mut rng, &r, 2);
        let b = sampling::one_form(&mut rng, &r, 2);
        let h = sampling::polynomial(&mut rng, &r, 3, 4);
        // L_X = i_X d + d i_X
        let cartan = a.d().insert_vector(&x).add(&a.insert_vector(&x).d());
        prop_assert!(a.lie(&x).agrees_with(&cartan));
        prop_assert_eq!(PForm::d_function(&h).pair(&x).unwrap(), x.apply(&h));
        // [L_X, i_Y] = i_[X,Y]
        let w = a.wedge(&b).unwrap();
        let comm = w.insert_vector(&y).lie(&x).sub(&w.lie(&x).insert_vector(&y));
        prop_assert!(comm.agrees_with(&w.insert_vector(&x.bracket(&y))));
        // L_X <Y, a> = <[X,Y], a> + <Y, L_X a>
        let lhs = x.apply(&a.pair(&y).unwrap());
        prop_assert_eq!(lhs, a.pair(&x.bracket(&y)).unwrap().add(&a.lie(&x).pair(&y).unwrap()));
        // i_X is an antiderivation
        let lhs = w.insert_vector(&x);
        let rhs = b.mul_poly(&a.pair(&x).unwrap()).sub(&a.mul_poly(&b.pair(&x).unwrap()));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn lie_derivative_of_tensors_is_a_derivation(seed in any::<u64>()) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let x = sampling::vector_field(&mut rng, &r, 2);
        let y = sampling::vector_field(&mut rng, &r, 1);
        let a = sampling::one_form(&mut rng, &r, 1);
        let (ty, ta) = (TensorField::from_vector(&y), TensorField::from_form(&a));
        let lhs = ta.tensor(&ty).unwrap().lie(&x);
        let rhs = ta.lie(&x).tensor(&ty).unwrap().add(&ta.tensor(&ty.lie(&x)).unwrap());
        prop_assert!(ty.tensor(&ta).is_err());
        prop_assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn partials_and_dx_are_dual() {
    let r = ring();
    for i in 0..3 {
        for j in 0..3 {
            let p = PForm::dx(&r, j).pair(&VectorField::partial(&r, i)).unwrap();
            assert_eq!(p, if i == j { Polynomial::one(&r) } else { Polynomial::zero(&r) });
        }
    }
}
