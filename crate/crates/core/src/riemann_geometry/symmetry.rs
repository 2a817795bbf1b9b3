use super::connection::flat_nabla;
use super::metric::Metric;
use crate::algebra_core::Polynomial;
use crate::cartan_calculus::{Field, VectorField};
use crate::error::Result;
use crate::submanifold::LevelSetFamily;

/// `∂_h Z_i + ∂_i Z_h` with `Z_i = g_{ij} Z^j`.
pub fn killing_residual(metric: &Metric, z: &VectorField) -> Vec<Vec<Polynomial>> {
    let low = metric.flat(z).one_form_comps();
    let n = low.len();
    (0..n).map(|h| (0..n).map(|i| low[i].partial(h).add(&low[h].partial(i))).collect()).collect()
}

pub fn is_killing(metric: &Metric, z: &VectorField) -> bool {
    killing_residual(metric, z).iter().all(|r| r.iter().all(|p| p.is_zero()))
}

/// The Killing residual contracted with `X^h Y^i`, modulo the ideal.
pub fn killing_residual_tangent(m: &LevelSetFamily, z: &VectorField, x: &VectorField, y: &VectorField) -> Result<Polynomial> {
    let k = killing_residual(m.metric(), z);
    let mut acc = Polynomial::zero(m.ring());
    for (h, row) in k.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&x.comp(h).mul(y.comp(i)).mul(c));
            }
        }
    }
    m.reduce(&acc)
}

/// `[Z, ∇_X Y] − ∇_{[Z,X]} Y − ∇_X [Z, Y]` for the flat connection.
pub fn equivariance_residual(z: &VectorField, x: &VectorField, y: &VectorField) -> VectorField {
    z.bracket(&flat_nabla(x, y)).sub(&flat_nabla(&z.bracket(x), y)).sub(&flat_nabla(x, &z.bracket(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Ring, Scalar};
    use crate::cartan_calculus::Field;

    #[test]
    fn rotations_are_killing_dilatation_is_not() {
        let r = Ring::standard("x", 3, &[]);
        let x = |i| Polynomial::var(&r, i);
        let z = Polynomial::zero(&r);
        let l12 = VectorField::new(&r, vec![x(1).neg(), x(0), z.clone()]).unwrap();
        let d = VectorField::new(&r, vec![x(0), x(1), x(2)]).unwrap();
        let g = Metric::euclidean(3);
        assert!(is_killing(&g, &l12));
        assert!(is_killing(&g, &VectorField::partial(&r, 2)));
        let k = killing_residual(&g, &d);
        assert_eq!(k[0][0], Polynomial::int(&r, 2));
        assert!(k[0][1].is_zero());
        // boosts are Killing for the Minkowski metric only
        let boost = VectorField::new(&r, vec![x(2), z.clone(), x(0)]).unwrap();
        assert!(is_killing(&Metric::minkowski(3), &boost));
        assert!(!is_killing(&g, &boost));
        let y = VectorField::new(&r, vec![x(2).pow(2), x(0), z.clone()]).unwrap();
        let w = VectorField::new(&r, vec![z.clone(), x(1).mul(&x(2)), x(0).scale_scalar(&Scalar::int(3))]).unwrap();
        assert!(equivariance_residual(&l12, &y, &w).is_zero());
        let quad = VectorField::new(&r, vec![x(0).pow(2), z.clone(), z]).unwrap();
        assert!(!equivariance_residual(&quad, &y, &VectorField::partial(&r, 0)).is_zero());
    }
}
