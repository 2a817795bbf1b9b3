use super::connection::{first_form, projected_nabla, require_tangent, second_form};
use crate::algebra_core::Polynomial;
use crate::cartan_calculus::{Field, VectorField};
use crate::error::{Error, Result};
use crate::submanifold::LevelSetFamily;

/// Which slot of `R(·,·)Y` the Ricci trace runs over.
///
/// `SecondSlot` traces `Z ↦ R(X, Z)Y` and is the default; `FirstSlot`
/// traces `Z ↦ R(Z, X)Y`. The two differ by an overall sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RicciConvention {
    #[default]
    SecondSlot,
    FirstSlot,
}

/// `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]} Z` for any connection.
pub fn curvature_of(
    nabla: &dyn Fn(&VectorField, &VectorField) -> Result<VectorField>,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
) -> Result<VectorField> {
    let a = nabla(x, &nabla(y, z)?)?;
    let b = nabla(y, &nabla(x, z)?)?;
    let c = nabla(&x.bracket(y), z)?;
    Ok(a.sub(&b).sub(&c))
}

/// `R_t(X,Y)Z` of the projected connection, modulo the ideal.
pub fn intrinsic_curvature(m: &LevelSetFamily, x: &VectorField, y: &VectorField, z: &VectorField) -> Result<VectorField> {
    require_tangent(m, &[x, y, z])?;
    let nab = |a: &VectorField, b: &VectorField| projected_nabla(m, a, b);
    m.reduce_field(&curvature_of(&nab, x, y, z)?)
}

/// `g(R_t(X,Y)Z, W)` assembled from II by the Gauss equation with flat
/// ambient curvature: `g(II(Y,Z), II(X,W)) − g(II(X,Z), II(Y,W))`.
pub fn gauss_curvature_tensor(m: &LevelSetFamily, x: &VectorField, y: &VectorField, z: &VectorField, w: &VectorField) -> Result<Polynomial> {
    let g = m.metric();
    let a = g.g(&second_form(m, y, z)?, &second_form(m, x, w)?);
    let b = g.g(&second_form(m, x, z)?, &second_form(m, y, w)?);
    m.reduce(&a.sub(&b))
}

/// `g(R_t(X,Y)Z, W)` from the connection minus the Gauss-equation value.
pub fn gauss_residual(m: &LevelSetFamily, x: &VectorField, y: &VectorField, z: &VectorField, w: &VectorField) -> Result<Polynomial> {
    let lhs = m.reduce(&m.metric().g(&intrinsic_curvature(m, x, y, z)?, w))?;
    Ok(lhs.sub(&gauss_curvature_tensor(m, x, y, z, w)?))
}

/// `Ric(X, Y) = Σ_i dx^i(R_t(·,·)Y)` with `pr_t ∂_i` in the traced slot.
pub fn ricci(m: &LevelSetFamily, x: &VectorField, y: &VectorField, conv: RicciConvention) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(m.ring());
    for i in 0..m.n() {
        let e = m.tangent(&VectorField::partial(m.ring(), i))?;
        let r = match conv {
            RicciConvention::SecondSlot => intrinsic_curvature(m, x, &e, y)?,
            RicciConvention::FirstSlot => intrinsic_curvature(m, &e, x, y)?,
        };
        acc = acc.add(r.comp(i));
    }
    m.reduce(&acc)
}

/// `Σ_ij g^{ij} Ric(pr_t ∂_i, pr_t ∂_j)`, modulo the ideal.
pub fn ricci_scalar(m: &LevelSetFamily, conv: RicciConvention) -> Result<Polynomial> {
    let n = m.n();
    let frame: Vec<VectorField> = (0..n).map(|i| m.tangent(&VectorField::partial(m.ring(), i))).collect::<Result<_>>()?;
    let ginv = m.metric().inverse_matrix();
    let mut acc = Polynomial::zero(m.ring());
    for i in 0..n {
        for j in 0..n {
            if ginv[i][j].is_zero() {
                continue;
            }
            acc = acc.add(&ricci(m, &frame[i], &frame[j], conv)?.scale_scalar(&ginv[i][j]));
        }
    }
    m.reduce(&acc)
}

/// Principal data of a surface in a 3-dimensional ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct Principal {
    /// One value per frame field.
    pub kappa: Vec<Polynomial>,
    pub gauss: Polynomial,
    pub mean: Polynomial,
}

/// Diagonalizes `II` against `g_t` on a two-field tangent frame, using the
/// unit normal. Only frames on which the shape operator is already
/// triangular are supported; otherwise the eigenvalues need surds.
pub fn principal_curvatures(m: &LevelSetFamily, frame: &[VectorField]) -> Result<Principal> {
    if m.n() != 3 || m.k() != 1 || frame.len() != 2 {
        return Err(Error::ArityMismatch("principal curvatures need a surface in 3 dimensions and a 2-field frame".into()));
    }
    let (u, _, zeta) = m.unit_normal()?;
    let constant = |p: Polynomial| -> Result<Polynomial> {
        if p.is_coord_free() {
            Ok(p)
        } else {
            Err(Error::Singular(format!("`{}` is not constant on the frame", p)))
        }
    };
    let mut gm = vec![vec![Polynomial::zero(m.ring()); 2]; 2];
    let mut hm = gm.clone();
    for a in 0..2 {
        for b in 0..2 {
            gm[a][b] = constant(first_form(m, &frame[a], &frame[b])?)?;
            let ii = second_form(m, &frame[a], &frame[b])?;
            let h = m.reduce(&m.metric().g(&ii, &u))?;
            hm[a][b] = constant(if zeta < 0 { h.neg() } else { h })?;
        }
    }
    let det = gm[0][0].mul(&gm[1][1]).sub(&gm[0][1].mul(&gm[1][0]));
    let inv = det.unit_inverse().ok_or_else(|| Error::Singular(format!("g_t on the frame has determinant {}", det)))?;
    let adj = [[gm[1][1].clone(), gm[0][1].neg()], [gm[1][0].neg(), gm[0][0].clone()]];
    let s: Vec<Vec<Polynomial>> = (0..2).map(|a| (0..2).map(|b| adj[a][0].mul(&hm[0][b]).add(&adj[a][1].mul(&hm[1][b])).mul(&inv)).collect()).collect();
    if !s[0][1].is_zero() && !s[1][0].is_zero() {
        return Err(Error::UnsupportedSurd("shape operator is not triangular on this frame".into()));
    }
    let gauss = s[0][0].mul(&s[1][1]).sub(&s[0][1].mul(&s[1][0]));
    let mean = s[0][0].add(&s[1][1]).scale_scalar(&crate::algebra_core::Scalar::frac(1, 2));
    Ok(Principal { kappa: vec![s[0][0].clone(), s[1][1].clone()], gauss, mean })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Polynomial, Scalar};
    use crate::models;

    #[test]
    fn cylinder_principal_data() {
        let m = models::cylinder(Scalar::one());
        let r = &m.ring;
        let rinv = Polynomial::param(r, 0, -1);
        let l = m.gens.field(1).mul_poly(&rinv);
        let p = principal_curvatures(&m.family, &[m.gens.field(0).clone(), l.clone()]).unwrap();
        assert!(p.kappa[0].is_zero());
        assert_eq!(p.kappa[1], rinv.neg());
        assert!(p.gauss.is_zero());
        assert_eq!(p.mean, rinv.scale_scalar(&Scalar::frac(-1, 2)));
        assert!(intrinsic_curvature(&m.family, &l, m.gens.field(0), &l).unwrap().is_zero());
    }

    #[test]
    fn hyperboloid_ricci_scalar() {
        let m = models::hyperboloid();
        let cinv = Polynomial::param(&m.ring, 0, -1);
        assert_eq!(ricci_scalar(&m.family, RicciConvention::SecondSlot).unwrap(), cinv.neg());
        assert_eq!(ricci_scalar(&m.family, RicciConvention::FirstSlot).unwrap(), cinv);
        let f = m.gens.fields();
        assert!(gauss_residual(&m.family, &f[0], &f[1], &f[2], &f[1]).unwrap().is_zero());
    }
}
