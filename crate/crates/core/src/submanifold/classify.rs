use super::generators::tangent_generators;
use super::level_set::LevelSetFamily;
use crate::algebra_core::{Polynomial, RationalFunction};
use crate::cartan_calculus::{PForm, VectorField};
use crate::error::Result;

/// Membership of a vector field, strongest class first.
#[derive(Clone, Debug, PartialEq)]
pub enum TangencyClass {
    /// `X(f^a) = 0` exactly.
    Tangent,
    /// `X = Σ_a f^a Y_a`; `quotients[a][i]` is `Y_a^i`.
    ChiCC { quotients: Vec<Vec<Polynomial>> },
    /// Every `X(f^a)` lies in the ideal; the values are kept.
    ChiC { values: Vec<Polynomial> },
    /// Normal forms of the `X(f^a)` that fail to vanish.
    None { remainders: Vec<Polynomial> },
}

impl TangencyClass {
    pub fn name(&self) -> &'static str {
        match self {
            TangencyClass::Tangent => "tangent",
            TangencyClass::ChiCC { .. } => "chi_cc",
            TangencyClass::ChiC { .. } => "chi_c",
            TangencyClass::None { .. } => "none",
        }
    }
    /// Inside the Lie algebra of fields preserving the ideal.
    pub fn preserves_ideal(&self) -> bool {
        !matches!(self, TangencyClass::None { .. })
    }
}

pub fn classify_vector(x: &VectorField, m: &LevelSetFamily) -> Result<TangencyClass> {
    let values: Vec<Polynomial> = m.f().iter().map(|p| x.apply(p)).collect();
    if values.iter().all(|v| v.is_zero()) {
        return Ok(TangencyClass::Tangent);
    }
    let mut quotients = vec![Vec::with_capacity(m.n()); m.k()];
    let mut in_cc = true;
    for c in x.comps() {
        let (q, r) = m.basis().divide(c)?;
        if !r.is_zero() {
            in_cc = false;
            break;
        }
        for (a, qa) in q.into_iter().enumerate() {
            quotients[a].push(qa);
        }
    }
    if in_cc {
        return Ok(TangencyClass::ChiCC { quotients });
    }
    let remainders: Vec<Polynomial> = values.iter().map(|v| m.reduce(v)).collect::<Result<_>>()?;
    if remainders.iter().all(|r| r.is_zero()) {
        Ok(TangencyClass::ChiC { values })
    } else {
        Ok(TangencyClass::None { remainders })
    }
}

/// Memberships of a 1-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormClass {
    /// Annihilates every tangent generator exactly.
    pub perp: bool,
    /// Pairings with tangent generators lie in the ideal.
    pub boxed: bool,
    /// Annihilates every `N_⊥^a`.
    pub tangent: bool,
    /// Every component lies in the ideal.
    pub cc: bool,
}

pub fn classify_form(w: &PForm, m: &LevelSetFamily) -> Result<FormClass> {
    let gens = tangent_generators(m);
    let mut perp = true;
    let mut boxed = true;
    for l in &gens.fields {
        let v = w.pair(l)?;
        if !v.is_zero() {
            perp = false;
            if !m.reduce(&v)?.is_zero() {
                boxed = false;
            }
        }
    }
    let mut tangent = true;
    for a in 0..m.k() {
        if !w.pair(&m.n_perp(a).num)?.is_zero() {
            tangent = false;
        }
    }
    let mut cc = true;
    for c in w.comps().values() {
        if !m.reduce(c)?.is_zero() {
            cc = false;
        }
    }
    Ok(FormClass { perp, boxed, tangent, cc })
}

/// Coefficients `ω_a` with `ω = Σ_a ω_a df^a` for a normal 1-form, checked
/// by recombination.
pub fn perp_decomposition(w: &PForm, m: &LevelSetFamily) -> Result<Option<Vec<RationalFunction>>> {
    let coeffs = m.perp_coefficients(w)?;
    let den = coeffs.first().map(|c| c.den.clone()).unwrap_or_else(|| Polynomial::one(m.ring()));
    let mut num = PForm::zero(m.ring(), 1);
    for (a, c) in coeffs.iter().enumerate() {
        num = num.add(&PForm::d_function(&m.f()[a]).mul_poly(&c.num));
    }
    use crate::cartan_calculus::Field;
    Ok(num.agrees_with(&w.mul_poly(&den)).then_some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Scalar;
    use crate::cartan_calculus::Field;
    use crate::models;

    #[test]
    fn cylinder_classes() {
        let m = models::cylinder(Scalar::one());
        let fam = &m.family;
        assert_eq!(classify_vector(m.gens.field(1), fam).unwrap(), TangencyClass::Tangent);
        let d1 = VectorField::partial(&m.ring, 0);
        assert!(matches!(classify_vector(&d1, fam).unwrap(), TangencyClass::None { .. }));
        let fd1 = d1.mul_poly(&fam.f()[0]);
        assert!(matches!(classify_vector(&fd1, fam).unwrap(), TangencyClass::ChiCC { .. }));
        let df = PForm::d_function(&fam.f()[0]);
        let c = classify_form(&df, fam).unwrap();
        assert!(c.perp && c.boxed && !c.tangent && !c.cc);
        let dec = perp_decomposition(&df.mul_poly(&m.ring_var(2)), fam).unwrap().unwrap();
        assert!(dec[0].equals(&RationalFunction::from_poly(m.ring_var(2))));
        let c3 = classify_form(&PForm::dx(&m.ring, 2), fam).unwrap();
        assert!(!c3.perp && c3.tangent);
    }
}
