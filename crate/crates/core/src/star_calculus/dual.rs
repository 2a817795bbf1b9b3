use super::StarContext;
use crate::algebra_core::linalg::{poly_adjugate, poly_det};
use crate::algebra_core::{Polynomial, ReductionBasis};
use crate::cartan_calculus::{Field, PForm, VectorField};
use crate::error::{Error, Result};

fn reduce(p: Polynomial, basis: Option<&ReductionBasis>) -> Result<Polynomial> {
    match basis {
        Some(b) => b.reduce(&p),
        None => Ok(p),
    }
}

impl StarContext {
    /// Classical dual coframe of a polynomial frame whose determinant is a
    /// unit (modulo `basis` when given).
    pub fn classical_dual_frame(&self, frame: &[VectorField], basis: Option<&ReductionBasis>) -> Result<Vec<PForm>> {
        let ring = self.ring();
        let n = ring.dim();
        if frame.len() != n {
            return Err(Error::ArityMismatch(format!("frame of {} fields in dimension {}", frame.len(), n)));
        }
        let m: Vec<Vec<Polynomial>> = frame.iter().map(|e| e.comps().to_vec()).collect();
        let det = reduce(poly_det(&m, ring), basis)?;
        let inv = det.unit_inverse().ok_or_else(|| Error::Singular(format!("frame determinant `{}` is not a unit", det)))?;
        let adj = poly_adjugate(&m, ring);
        // ω^j = Σ_k (M⁻¹)_{kj} dx^k
        (0..n)
            .map(|j| {
                let comps = (0..n).map(|k| reduce(adj[k][j].mul(&inv), basis)).collect::<Result<Vec<_>>>()?;
                PForm::one_form(ring, comps)
            })
            .collect()
    }

    /// `θ^j = Σ_l ω^l ⋆ A_{lj}` with `A` the ⋆-inverse of `⟨e_i, ω^j⟩_⋆`,
    /// seeded by the classical dual; the result is verified exactly.
    pub fn star_dual_frame(&self, frame: &[VectorField], basis: Option<&ReductionBasis>) -> Result<Vec<PForm>> {
        let ring = self.ring();
        let n = frame.len();
        let omega = self.classical_dual_frame(frame, basis)?;
        let one = Polynomial::one(ring);
        let zero = Polynomial::zero(ring);
        let delta = |i: usize, j: usize| if i == j { one.clone() } else { zero.clone() };
        let mut q = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = reduce(self.pair(&frame[i], &omega[j])?.sub(&delta(i, j)), basis)?;
            }
        }
        let star_mat = |a: &Vec<Vec<Polynomial>>, b: &Vec<Vec<Polynomial>>| -> Result<Vec<Vec<Polynomial>>> {
            let mut out = vec![vec![zero.clone(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = zero.clone();
                    for l in 0..n {
                        if a[i][l].is_zero() || b[l][j].is_zero() {
                            continue;
                        }
                        acc = acc.add(&self.star(&a[i][l], &b[l][j]));
                    }
                    out[i][j] = reduce(acc, basis)?;
                }
            }
            Ok(out)
        };
        // A = Σ_k (−Q)^{⋆k}; Q is O(ν), so k ≤ N suffices
        let neg_q: Vec<Vec<Polynomial>> = q.iter().map(|r| r.iter().map(|p| p.neg()).collect()).collect();
        let mut term: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| delta(i, j)).collect()).collect();
        let mut a = term.clone();
        for _ in 0..self.order() {
            if term.iter().all(|r| r.iter().all(|p| p.is_zero())) {
                break;
            }
            term = star_mat(&term, &neg_q)?;
            for i in 0..n {
                for j in 0..n {
                    a[i][j] = a[i][j].add(&term[i][j]);
                }
            }
        }
        let mut theta = Vec::with_capacity(n);
        for j in 0..n {
            let mut t = PForm::zero(ring, 1);
            for l in 0..n {
                if !a[l][j].is_zero() {
                    t = t.add(&self.right(&omega[l], &a[l][j]));
                }
            }
            theta.push(match basis {
                Some(b) => t.reduce_mod(b)?,
                None => t,
            });
        }
        for i in 0..n {
            for j in 0..n {
                let p = reduce(self.pair(&frame[i], &theta[j])?, basis)?;
                if !p.agrees_with(&delta(i, j)) {
                    return Err(Error::Singular(format!("star-dual solve left residual at ({}, {})", i, j)));
                }
            }
        }
        Ok(theta)
    }
}
