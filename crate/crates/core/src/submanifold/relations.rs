use super::level_set::LevelSetFamily;
use crate::algebra_core::Polynomial;
use crate::cartan_calculus::PForm;
use crate::error::Result;
use crate::hopf_twist::monomials_up_to;
use crate::star_calculus::StarContext;

/// Named residuals of operator relations; passes when all vanish.
#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub entries: Vec<(String, Polynomial)>,
}

impl RelationReport {
    pub fn push(&mut self, name: impl Into<String>, residual: Polynomial) {
        self.entries.push((name.into(), residual));
    }
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.is_zero())
    }
    pub fn failures(&self) -> impl Iterator<Item = &(String, Polynomial)> {
        self.entries.iter().filter(|(_, r)| !r.is_zero())
    }
}

/// `α ⋆ f^a − α f^a` and `f^a ⋆ α − α f^a` for every monomial `α` up to
/// the given degree.
pub fn centrality(ctx: &StarContext, m: &LevelSetFamily, degree: u32) -> RelationReport {
    let mut rep = RelationReport::default();
    for (a, f) in m.f().iter().enumerate() {
        for alpha in monomials_up_to(m.ring(), degree) {
            let plain = alpha.mul(f);
            rep.push(format!("{} * f{}", alpha, a + 1), ctx.star(&alpha, f).sub(&plain));
            rep.push(format!("f{} * {}", a + 1, alpha), ctx.star(f, &alpha).sub(&plain));
        }
    }
    rep
}

/// `⟨N_⊥^a, df^b⟩_⋆ − δ^{ab}` modulo the ideal.
pub fn star_duality(ctx: &StarContext, m: &LevelSetFamily) -> Result<RelationReport> {
    let mut rep = RelationReport::default();
    let normals = m.n_perp_on_shell()?;
    for (a, np) in normals.iter().enumerate() {
        for (b, f) in m.f().iter().enumerate() {
            let v = m.reduce(&ctx.pair(np, &PForm::d_function(f))?)?;
            let want = if a == b { Polynomial::one(m.ring()) } else { Polynomial::zero(m.ring()) };
            rep.push(format!("<N{}, df{}>*", a + 1, b + 1), v.sub(&want));
        }
    }
    Ok(rep)
}
