use crate::algebra_core::linalg::{inverse, Matrix};
use crate::algebra_core::{Polynomial, RingRef, Scalar};
use crate::cartan_calculus::{Field, PForm, VectorField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signature {
    Euclidean,
    Minkowski,
    Custom,
}

/// Constant symmetric metric `g_{ij} dx^i ⊗ dx^j`.
#[derive(Clone, Debug)]
pub struct Metric {
    g: Matrix,
    ginv: Matrix,
    signature: Signature,
}

impl Metric {
    pub fn euclidean(n: usize) -> Self {
        let g = crate::algebra_core::linalg::identity(n);
        Metric { ginv: g.clone(), g, signature: Signature::Euclidean }
    }
    /// `diag(1, ..., 1, −1)`.
    pub fn minkowski(n: usize) -> Self {
        let mut g = crate::algebra_core::linalg::identity(n);
        g[n - 1][n - 1] = Scalar::int(-1);
        Metric { ginv: g.clone(), g, signature: Signature::Minkowski }
    }
    pub fn custom(g: Matrix) -> Result<Self> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(Error::ArityMismatch("metric matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if g[i][j] != g[j][i] {
                    return Err(Error::Type("metric matrix is not symmetric".into()));
                }
            }
        }
        let ginv = inverse(&g).ok_or_else(|| Error::Singular("metric matrix".into()))?;
        Ok(Metric { g, ginv, signature: Signature::Custom })
    }
    pub fn dim(&self) -> usize {
        self.g.len()
    }
    pub fn signature(&self) -> &Signature {
        &self.signature
    }
    pub fn matrix(&self) -> &Matrix {
        &self.g
    }
    pub fn inverse_matrix(&self) -> &Matrix {
        &self.ginv
    }

    /// `g(X, Y) = X^i g_{ij} Y^j`.
    pub fn g(&self, x: &VectorField, y: &VectorField) -> Polynomial {
        x.contract(&self.g, y)
    }
    /// `g⁻¹(ω, α) = ω_i g^{ij} α_j` for 1-forms.
    pub fn g_inverse(&self, w: &PForm, a: &PForm) -> Result<Polynomial> {
        let (x, y) = (self.sharp(w)?, self.sharp(a)?);
        Ok(self.g(&x, &y))
    }
    /// Lowering: `X ↦ g_{ij} X^j dx^i`.
    pub fn flat(&self, x: &VectorField) -> PForm {
        PForm::one_form(x.ring(), lower(&self.g, x.comps(), x.ring())).expect("dimension")
    }
    /// Raising: `ω ↦ g^{ij} ω_j ∂_i`.
    pub fn sharp(&self, w: &PForm) -> Result<VectorField> {
        if w.degree() != 1 {
            return Err(Error::ArityMismatch(format!("sharp of a {}-form", w.degree())));
        }
        VectorField::new(w.ring(), lower(&self.ginv, &w.one_form_comps(), w.ring()))
    }
}

/// `v_i = Σ_j m_{ij} u_j`.
pub(crate) fn lower(m: &Matrix, u: &[Polynomial], ring: &RingRef) -> Vec<Polynomial> {
    (0..m.len())
        .map(|i| {
            let mut acc = Polynomial::zero(ring);
            for (j, c) in u.iter().enumerate() {
                if !m[i][j].is_zero() && !c.is_zero() {
                    acc.add_assign(&c.scale_scalar(&m[i][j]));
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Ring;

    #[test]
    fn metric_values() {
        let r = Ring::standard("x", 3, &[]);
        let e = Metric::euclidean(3);
        let m = Metric::minkowski(3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1 } else { 0 };
                assert_eq!(e.g(&VectorField::partial(&r, i), &VectorField::partial(&r, j)), Polynomial::int(&r, want));
            }
        }
        assert_eq!(m.g(&VectorField::partial(&r, 2), &VectorField::partial(&r, 2)), Polynomial::int(&r, -1));
        let x = VectorField::new(&r, vec![Polynomial::var(&r, 1), Polynomial::int(&r, 3), Polynomial::var(&r, 0)]).unwrap();
        assert_eq!(m.sharp(&m.flat(&x)).unwrap(), x);
    }

    #[test]
    fn custom_rejects_asymmetric() {
        let g = vec![vec![Scalar::one(), Scalar::int(2)], vec![Scalar::zero(), Scalar::one()]];
        assert!(Metric::custom(g).is_err());
    }
}
