use proptest::prelude::*;
use twistfold::algebra_core::{ideal_reduce, linalg, NuSeries, Polynomial, ReductionBasis, Ring, RingRef, Scalar};
use twistfold::models;
use twistfold::sampling::{self, Sampler};

fn ring() -> RingRef {
    Ring::standard("x", 3, &["R"])
}

fn poly(rng: &mut Sampler, r: &RingRef) -> Polynomial {
    sampling::polynomial(rng, r, 3, 4)
}

fn series(rng: &mut Sampler) -> NuSeries {
    NuSeries::from_coeffs((0..4).map(|_| sampling::scalar(rng)).collect(), None)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalar_field_axioms(seed in any::<u64>()) {
        let mut rng = sampling::sampler(seed);
        let (a, b, c) = (sampling::scalar(&mut rng), sampling::scalar(&mut rng), sampling::scalar(&mut rng));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if a != Scalar::zero() {
            prop_assert_eq!(&(&b / &a) * &a, b);
        }
    }

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>()) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let (p, q, s) = (poly(&mut rng, &r), poly(&mut rng, &r), poly(&mut rng, &r));
        prop_assert_eq!(p.mul(&q.add(&s)), p.mul(&q).add(&p.mul(&s)));
        prop_assert_eq!(p.mul(&q).mul(&s), p.mul(&q.mul(&s)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&Polynomial::one(&r)), p.clone());
        prop_assert_eq!(p.pow(2), p.mul(&p));
    }

    #[test]
    fn partials_are_derivations(seed in any::<u64>(), i in 0usize..3) {
        let r = ring();
        let mut rng = sampling::sampler(seed);
        let (p, q) = (poly(&mut rng, &r), poly(&mut rng, &r));
        let lhs = p.mul(&q).partial(i);
        prop_assert_eq!(lhs, p.partial(i).mul(&q).add(&p.mul(&q.partial(i))));
        prop_assert_eq!(p.partial(i).partial((i + 1) % 3), p.partial((i + 1) % 3).partial(i));
    }

    #[test]
    fn series_truncation_commutes_with_products(seed in any::<u64>(), n in 0usize..4) {
        let mut rng = sampling::sampler(seed);
        let (a, b) = (series(&mut rng), series(&mut rng));
        let full = a.mul(&b).truncate(n);
        let early = a.truncate(n).mul(&b.truncate(n));
        prop_assert!(full.agrees_with(&early));
        prop_assert_eq!(full.coeffs().len().min(n + 1), full.coeffs().len());
        if let Some(inv) = a.inv() {
            prop_assert!(a.mul(&inv).truncate(3).agrees_with(&NuSeries::one().truncate(3)));
        }
    }

    #[test]
    fn reduction_ignores_ideal_multiples(seed in any::<u64>(), cyl in any::<bool>()) {
        let m = if cyl { models::cylinder(Scalar::one()) } else { models::hyperboloid() };
        let f = m.family.f()[0].clone();
        let mut rng = sampling::sampler(seed);
        let (p, q) = (poly(&mut rng, &m.ring), poly(&mut rng, &m.ring));
        let basis = ReductionBasis::new(std::slice::from_ref(&f)).unwrap();
        let rp = basis.reduce(&p).unwrap();
        prop_assert_eq!(basis.reduce(&p.add(&f.mul(&q))).unwrap(), rp.clone());
        prop_assert_eq!(ideal_reduce(&p, std::slice::from_ref(&f)).unwrap(), rp.clone());
        prop_assert_eq!(basis.reduce(&rp).unwrap(), rp.clone());
        let (quot, rem) = basis.divide(&p).unwrap();
        prop_assert_eq!(rem.add(&quot[0].mul(&f)), p);
    }

    #[test]
    fn linear_substitution_round_trip(seed in any::<u64>()) {
        let x = Ring::standard("x", 3, &["c"]);
        let y = Ring::standard("y", 3, &["c"]);
        let m = models::light_cone_matrix();
        let minv = linalg::inverse(&m).unwrap();
        let mut rng = sampling::sampler(seed);
        let (p, q) = (poly(&mut rng, &x), poly(&mut rng, &x));
        let py = p.linear_substitution(&y, &m).unwrap();
        prop_assert_eq!(py.linear_substitution(&x, &minv).unwrap(), p.clone());
        let qy = q.linear_substitution(&y, &m).unwrap();
        prop_assert_eq!(p.mul(&q).linear_substitution(&y, &m).unwrap(), py.mul(&qy));
    }
}

#[test]
fn light_cone_matrix_is_invertible() {
    let m = models::light_cone_matrix();
    assert_eq!(linalg::det(&m), Scalar::frac(-1, 2));
    let inv = linalg::inverse(&m).unwrap();
    assert_eq!(linalg::mat_mul(&m, &inv), linalg::identity(3));
    assert_eq!(linalg::rank(&m), 3);
}
