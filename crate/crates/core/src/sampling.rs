//! Seeded random polynomials and fields for property checks.

use crate::algebra_core::{Monomial, NuSeries, Polynomial, RingRef, Scalar};
use crate::cartan_calculus::{Field, PForm, VectorField};
use crate::hopf_twist::{GenRef, UElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Sampler = ChaCha8Rng;

pub fn sampler(seed: u64) -> Sampler {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational `(p + q i)/d`.
pub fn scalar(rng: &mut Sampler) -> Scalar {
    let d = rng.gen_range(1..=3);
    let re = rng.gen_range(-4..=4);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    Scalar::gaussian((re, d), (im, d))
}

/// Up to `terms` monomials of degree `≤ degree` in the coordinates.
pub fn polynomial(rng: &mut Sampler, ring: &RingRef, degree: u32, terms: usize) -> Polynomial {
    let n = ring.dim();
    let mut p = Polynomial::zero(ring);
    for _ in 0..terms {
        let mut c = vec![0u32; n];
        let d = rng.gen_range(0..=degree);
        for _ in 0..d {
            c[rng.gen_range(0..n)] += 1;
        }
        p.add_term(Monomial { c, p: vec![0; ring.nparams()] }, NuSeries::scalar(scalar(rng)));
    }
    p
}

pub fn vector_field(rng: &mut Sampler, ring: &RingRef, degree: u32) -> VectorField {
    VectorField::new(ring, (0..ring.dim()).map(|_| polynomial(rng, ring, degree, 2)).collect()).expect("dimension")
}

pub fn one_form(rng: &mut Sampler, ring: &RingRef, degree: u32) -> PForm {
    PForm::one_form(ring, (0..ring.dim()).map(|_| polynomial(rng, ring, degree, 2)).collect()).expect("dimension")
}

/// `Σ h_g g` over the given tangent fields, with random coefficients of
/// degree `≤ degree`.
pub fn tangent_field(rng: &mut Sampler, fields: &[VectorField], degree: u32) -> VectorField {
    let ring = fields[0].ring().clone();
    let mut out = VectorField::zero(&ring);
    for f in fields {
        if rng.gen_bool(0.7) {
            out = out.add(&f.mul_poly(&polynomial(rng, &ring, degree, 1)));
        }
    }
    if out.is_zero() {
        out = fields[rng.gen_range(0..fields.len())].clone();
    }
    out
}

/// Random enveloping-algebra element with words of length `≤ len`.
pub fn uelement(rng: &mut Sampler, gens: &GenRef, len: usize, terms: usize) -> UElement {
    let mut u = UElement::zero(gens);
    for _ in 0..terms {
        let l = rng.gen_range(0..=len);
        let w: Vec<usize> = (0..l).map(|_| rng.gen_range(0..gens.len())).collect();
        u = u.add(&UElement::word(gens, &w, NuSeries::scalar(scalar(rng))));
    }
    u
}
