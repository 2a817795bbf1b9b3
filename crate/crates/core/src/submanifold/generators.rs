use super::level_set::LevelSetFamily;
use crate::algebra_core::Polynomial;
use crate::cartan_calculus::{Field, VectorField};
use crate::hopf_twist::{GenRef, GeneratorSet};

/// The globally defined tangent fields `L_I`, `|I| = k+1`.
#[derive(Clone, Debug)]
pub struct TangentGenerators {
    pub indices: Vec<Vec<usize>>,
    pub names: Vec<String>,
    pub fields: Vec<VectorField>,
    /// `Σ_s (−1)^s f^a_{j_s} L_{J∖j_s}` for every `a` and `|J| = k+2`.
    pub dependence: Vec<VectorField>,
    /// Present when the nonzero fields are linearly independent over the
    /// constants and close with constant structure constants.
    pub algebra: Option<GenRef>,
}

impl TangentGenerators {
    pub fn annihilate_family(&self, m: &LevelSetFamily) -> bool {
        self.fields.iter().all(|l| m.f().iter().all(|p| l.apply(p).is_zero()))
    }
    pub fn dependence_holds(&self) -> bool {
        self.dependence.iter().all(|d| d.is_zero())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

fn det(m: &[Vec<Polynomial>], ring: &crate::algebra_core::RingRef) -> Polynomial {
    crate::algebra_core::linalg::poly_det(m, ring)
}

/// `L_I = det(f^1_I; ...; f^k_I; ∂_I)`, expanded along the last row.
fn l_field(m: &LevelSetFamily, idx: &[usize]) -> VectorField {
    let ring = m.ring();
    let k = m.k();
    let mut comps = vec![Polynomial::zero(ring); m.n()];
    for (s, &i) in idx.iter().enumerate() {
        let minor: Vec<Vec<Polynomial>> =
            (0..k).map(|a| idx.iter().enumerate().filter(|&(t, _)| t != s).map(|(_, &j)| m.jacobian()[a][j].clone()).collect()).collect();
        let d = det(&minor, ring);
        comps[i] = if (k + s).is_multiple_of(2) { d } else { d.neg() };
    }
    VectorField::new(ring, comps).expect("dimension")
}

pub fn tangent_generators(m: &LevelSetFamily) -> TangentGenerators {
    let n = m.n();
    let k = m.k();
    let indices = subsets(n, k + 1);
    let fields: Vec<VectorField> = indices.iter().map(|i| l_field(m, i)).collect();
    let names: Vec<String> = indices.iter().map(|i| format!("L{}", i.iter().map(|j| (j + 1).to_string()).collect::<String>())).collect();
    let mut dependence = Vec::new();
    for j in subsets(n, k + 2) {
        for a in 0..k {
            let mut acc = VectorField::zero(m.ring());
            for (s, &js) in j.iter().enumerate() {
                let rest: Vec<usize> = j.iter().cloned().filter(|&t| t != js).collect();
                let pos = indices.iter().position(|i| *i == rest).unwrap();
                let term = fields[pos].mul_poly(&m.jacobian()[a][js]);
                acc = if s % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            dependence.push(acc);
        }
    }
    let keep: Vec<usize> = (0..fields.len()).filter(|&i| !fields[i].is_zero()).collect();
    let kn: Vec<&str> = keep.iter().map(|&i| names[i].as_str()).collect();
    let kf: Vec<VectorField> = keep.iter().map(|&i| fields[i].clone()).collect();
    let algebra = if kf.is_empty() { None } else { GeneratorSet::new(&kn, kf).ok() };
    TangentGenerators { indices, names, fields, dependence, algebra }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Ring, Scalar};
    use crate::riemann_geometry::Metric;

    #[test]
    fn sphere_generators_and_dependence() {
        let r = Ring::standard("x", 4, &["R"]);
        let mut f = Polynomial::param(&r, 0, 2).scale_scalar(&Scalar::frac(-1, 2));
        for i in 0..4 {
            f = f.add(&Polynomial::var(&r, i).pow(2).scale_scalar(&Scalar::frac(1, 2)));
        }
        let m = LevelSetFamily::define(vec![f], Metric::euclidean(4)).unwrap();
        let t = tangent_generators(&m);
        assert_eq!(t.fields.len(), 6);
        assert!(t.annihilate_family(&m));
        assert!(t.dependence_holds());
        assert_eq!(t.algebra.unwrap().len(), 6);
    }

    #[test]
    fn two_constraints() {
        let r = Ring::standard("x", 4, &[]);
        let x = |i| Polynomial::var(&r, i);
        let f1 = x(0).pow(2).add(&x(1).pow(2)).sub(&Polynomial::one(&r));
        let f2 = x(2).pow(2).add(&x(3).pow(2)).sub(&Polynomial::one(&r));
        let m = LevelSetFamily::define(vec![f1, f2], Metric::euclidean(4)).unwrap();
        let t = tangent_generators(&m);
        assert_eq!(t.fields.len(), 4);
        assert!(t.annihilate_family(&m));
        assert!(t.dependence_holds());
        assert_eq!(t.names[0], "L123");
    }
}
