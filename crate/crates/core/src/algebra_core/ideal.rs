//! Normal forms modulo level-set ideals.

use super::poly::{check_ring, Monomial, Polynomial};
use super::series::NuSeries;
use crate::error::{Error, Result};

/// A validated reduction basis.
#[derive(Clone, Debug)]
pub struct ReductionBasis {
    gens: Vec<(Polynomial, Monomial, NuSeries)>,
}

fn leading_unit(f: &Polynomial) -> Result<(Monomial, NuSeries)> {
    let (lm, lc) = f.leading().ok_or_else(|| Error::ReductionIncomplete("zero generator".into()))?;
    if lm.is_coord_free() {
        return Err(Error::ReductionIncomplete(format!("generator `{}` has no coordinate leading term", f)));
    }
    let same = f.terms().keys().filter(|m| m.c == lm.c).count();
    if same != 1 {
        return Err(Error::ReductionIncomplete(format!("leading coefficient of `{}` is not a unit", f)));
    }
    let inv = lc.inv().ok_or_else(|| Error::ReductionIncomplete(format!("leading coefficient of `{}` not invertible", f)))?;
    let lm_inv = Monomial { c: lm.c.clone(), p: lm.p.iter().map(|e| -e).collect() };
    Ok((lm_inv, inv))
}

impl ReductionBasis {
    /// Validates invertible leading coefficients and that the basis is
    /// self-reduced with all S-polynomials reducing to zero.
    pub fn new(fs: &[Polynomial]) -> Result<Self> {
        let mut gens = Vec::new();
        for f in fs {
            if let Some((g, _, _)) = gens.first() {
                check_ring((g as &Polynomial).ring(), f.ring())?;
            }
            let (lm_inv, inv) = leading_unit(f)?;
            gens.push((f.clone(), lm_inv, inv));
        }
        let basis = ReductionBasis { gens };
        for a in 0..basis.gens.len() {
            for b in 0..basis.gens.len() {
                if a == b {
                    continue;
                }
                let la = basis.lead(a);
                let lb = basis.lead(b);
                if lb.c.iter().zip(&la.c).all(|(x, y)| x <= y) {
                    return Err(Error::ReductionIncomplete("generating set is not self-reduced".into()));
                }
            }
        }
        for a in 0..basis.gens.len() {
            for b in a + 1..basis.gens.len() {
                let la = basis.lead(a);
                let lb = basis.lead(b);
                if la.c.iter().zip(&lb.c).all(|(x, y)| *x == 0 || *y == 0) {
                    continue;
                }
                let s = basis.s_poly(a, b);
                if !basis.reduce_unchecked(&s).is_zero() {
                    return Err(Error::ReductionIncomplete("S-polynomial does not reduce to zero".into()));
                }
            }
        }
        Ok(basis)
    }

    fn lead(&self, a: usize) -> Monomial {
        let m = &self.gens[a].1;
        Monomial { c: m.c.clone(), p: m.p.iter().map(|e| -e).collect() }
    }

    fn s_poly(&self, a: usize, b: usize) -> Polynomial {
        let (fa, ia, ca) = &self.gens[a];
        let (fb, ib, cb) = &self.gens[b];
        let la = self.lead(a);
        let lb = self.lead(b);
        let lcm = Monomial { c: la.c.iter().zip(&lb.c).map(|(x, y)| *x.max(y)).collect(), p: vec![0; la.p.len()] };
        let quot = |l: &Monomial, inv: &Monomial| Monomial { c: lcm.c.iter().zip(&l.c).map(|(a, b)| a - b).collect(), p: inv.p.clone() };
        let ma = quot(&la, ia);
        let mb = quot(&lb, ib);
        fa.mul_monomial(&ma, ca).sub(&fb.mul_monomial(&mb, cb))
    }

    pub fn generators(&self) -> Vec<&Polynomial> {
        self.gens.iter().map(|g| &g.0).collect()
    }

    /// Normal form; zero iff `p` lies in the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        if let Some((g, _, _)) = self.gens.first() {
            check_ring(g.ring(), p.ring())?;
        }
        Ok(self.reduce_unchecked(p))
    }

    /// Division with quotients: `p = Σ q_a f^a + r` with `r` the normal form.
    pub fn divide(&self, p: &Polynomial) -> Result<(Vec<Polynomial>, Polynomial)> {
        if let Some((g, _, _)) = self.gens.first() {
            check_ring(g.ring(), p.ring())?;
        }
        Ok(self.divide_unchecked(p))
    }

    fn reduce_unchecked(&self, p: &Polynomial) -> Polynomial {
        self.divide_unchecked(p).1
    }

    fn divide_unchecked(&self, p: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let mut work = p.clone();
        let mut out = Polynomial::zero(p.ring());
        let mut quots: Vec<Polynomial> = self.gens.iter().map(|_| Polynomial::zero(p.ring())).collect();
        while let Some((m, s)) = work.pop_leading() {
            let hit = self.gens.iter().position(|(_, lm_inv, _)| lm_inv.c.iter().zip(&m.c).all(|(a, b)| a <= b));
            match hit {
                Some(a) => {
                    let (f, lm_inv, inv) = &self.gens[a];
                    let q = Monomial { c: m.c.iter().zip(&lm_inv.c).map(|(a, b)| a - b).collect(), p: m.p.iter().zip(&lm_inv.p).map(|(a, b)| a + b).collect() };
                    let coef = s.mul(inv);
                    let lead_back = Polynomial::from_term(p.ring(), m.clone(), s);
                    // subtracting the full multiple cancels the popped term
                    work = work.add(&lead_back).sub(&f.mul_monomial(&q, &coef));
                    work.remove_term(&m);
                    quots[a].add_term(q, coef);
                }
                None => out.add_term(m, s),
            }
        }
        (quots, out)
    }
}

/// Normal form of `p` modulo the ideal generated by `f`.
pub fn ideal_reduce(p: &Polynomial, f: &[Polynomial]) -> Result<Polynomial> {
    ReductionBasis::new(f)?.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Ring, Scalar};

    fn cyl() -> (crate::algebra_core::RingRef, Polynomial) {
        let r = Ring::standard("x", 3, &["c"]);
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let f = x1.pow(2).add(&x2.pow(2)).scale_scalar(&Scalar::frac(1, 2)).sub(&Polynomial::param(&r, 0, 1));
        (r, f)
    }

    #[test]
    fn sum_of_squares_reduces_to_2c() {
        let (r, f) = cyl();
        let p = Polynomial::var(&r, 0).pow(2).add(&Polynomial::var(&r, 1).pow(2));
        let nf = ideal_reduce(&p, &[f]).unwrap();
        assert_eq!(nf, Polynomial::param(&r, 0, 1).scale_scalar(&Scalar::int(2)));
    }

    #[test]
    fn below_leading_term_unchanged() {
        let (r, f) = cyl();
        let x1 = Polynomial::var(&r, 0);
        assert_eq!(ideal_reduce(&x1, &[f]).unwrap(), x1);
    }

    #[test]
    fn ideal_member_vanishes() {
        let (r, f) = cyl();
        let p = f.mul(&Polynomial::var(&r, 2));
        assert!(ideal_reduce(&p, &[f]).unwrap().is_zero());
    }

    #[test]
    fn non_unit_leading_coefficient_flagged() {
        let (r, _) = cyl();
        let g = Polynomial::var(&r, 0).mul(&Polynomial::param(&r, 0, 1)).add(&Polynomial::var(&r, 0));
        assert!(matches!(ideal_reduce(&g, std::slice::from_ref(&g)), Err(Error::ReductionIncomplete(_))));
    }

    #[test]
    fn non_groebner_pair_flagged() {
        let r = Ring::standard("x", 3, &[]);
        let x = |i| Polynomial::var(&r, i);
        let f1 = x(0).mul(&x(1)).sub(&x(2));
        let f2 = x(0).mul(&x(2)).sub(&x(1));
        assert!(matches!(ReductionBasis::new(&[f1, f2]), Err(Error::ReductionIncomplete(_))));
    }
}
