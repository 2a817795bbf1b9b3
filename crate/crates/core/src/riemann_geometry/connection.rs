use crate::algebra_core::Polynomial;
use crate::cartan_calculus::{Field, VectorField};
use crate::error::{Error, Result};
use crate::submanifold::LevelSetFamily;

/// `∇_X T` for the flat connection of a constant metric: componentwise `X(·)`.
pub fn flat_nabla<T: Field>(x: &VectorField, t: &T) -> T {
    t.map_polys(&|p| x.apply(p))
}

pub(crate) fn require_tangent(m: &LevelSetFamily, xs: &[&VectorField]) -> Result<()> {
    for x in xs {
        if !m.is_tangent_on_shell(x)? {
            return Err(Error::NotTangent(format!("{}", x)));
        }
    }
    Ok(())
}

/// `g_t(X, Y)` modulo the ideal.
pub fn first_form(m: &LevelSetFamily, x: &VectorField, y: &VectorField) -> Result<Polynomial> {
    m.reduce(&m.metric().g(x, y))
}

/// `∇_t X Y = pr_t(∇_X Y)` on tangent fields, modulo the ideal.
pub fn projected_nabla(m: &LevelSetFamily, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    require_tangent(m, &[x, y])?;
    m.tangent(&flat_nabla(x, y))
}

/// `II(X, Y) = pr_⊥(∇_X Y)` on tangent fields, modulo the ideal.
pub fn second_form(m: &LevelSetFamily, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    require_tangent(m, &[x, y])?;
    m.normal(&flat_nabla(x, y))
}

/// `II(X, Y) = −X^i Y^j f^a_{ij} N_⊥^a`.
pub fn second_form_closed(m: &LevelSetFamily, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    require_tangent(m, &[x, y])?;
    let n = m.n();
    let normals = m.n_perp_on_shell()?;
    let mut out = VectorField::zero(m.ring());
    for (a, np) in normals.iter().enumerate() {
        let h = m.hessian(a);
        let mut c = Polynomial::zero(m.ring());
        for i in 0..n {
            if x.comp(i).is_zero() {
                continue;
            }
            for j in 0..n {
                if h[i][j].is_zero() {
                    continue;
                }
                c = c.add(&x.comp(i).mul(y.comp(j)).mul(&h[i][j]));
            }
        }
        out = out.sub(&np.mul_poly(&c));
    }
    m.reduce_field(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Polynomial, Scalar};
    use crate::models;

    #[test]
    fn flat_nabla_on_coordinate_field() {
        let m = models::cylinder(Scalar::one());
        let r = &m.ring;
        let y = VectorField::new(r, vec![Polynomial::zero(r), Polynomial::var(r, 0), Polynomial::zero(r)]).unwrap();
        assert_eq!(flat_nabla(&VectorField::partial(r, 0), &y), VectorField::partial(r, 1));
    }

    #[test]
    fn second_form_agrees_with_closed_form() {
        let m = models::cylinder(Scalar::one());
        let l12 = m.gens.field(1).clone();
        let d3 = m.gens.field(0).clone();
        for (x, y) in [(&l12, &l12), (&l12, &d3), (&d3, &d3)] {
            assert_eq!(second_form(&m.family, x, y).unwrap(), second_form_closed(&m.family, x, y).unwrap());
        }
        assert!(second_form(&m.family, &d3, &d3).unwrap().is_zero());
    }

    #[test]
    fn non_tangent_rejected() {
        let m = models::cylinder(Scalar::one());
        let d1 = VectorField::partial(&m.ring, 0);
        assert!(matches!(projected_nabla(&m.family, &d1, &d1), Err(Error::NotTangent(_))));
    }
}
