use crate::algebra_core::linalg::{poly_adjugate, poly_det, rank};
use crate::algebra_core::{Fraction, Polynomial, RationalFunction, ReductionBasis, RingRef, Scalar};
use crate::cartan_calculus::{Field, PForm, TensorField, VectorField};
use crate::error::{Error, Result};
use crate::riemann_geometry::metric::lower;
use crate::riemann_geometry::Metric;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which half of a decomposition to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Tangent,
    Normal,
}

/// Normal data reduced modulo the ideal.
#[derive(Clone, Debug)]
struct ShellFrame {
    k: Vec<Vec<Polynomial>>,
    n_perp: Vec<VectorField>,
    /// `Π[i][j] = Σ_ab f^a_i K^{ab} f^{bj}`: `(pr_⊥ X)^j = Σ_i X^i Π[i][j]`,
    /// `(pr_⊥ ω)_i = Σ_j Π[i][j] ω_j`.
    proj: Vec<Vec<Polynomial>>,
}

/// The family `f^a = 0` with its Jacobian data and normal frame.
#[derive(Clone, Debug)]
pub struct LevelSetFamily {
    ring: RingRef,
    f: Vec<Polynomial>,
    metric: Metric,
    jac: Vec<Vec<Polynomial>>,
    raised: Vec<Vec<Polynomial>>,
    hess: Vec<Vec<Vec<Polynomial>>>,
    basis: ReductionBasis,
    e: Vec<Vec<Polynomial>>,
    det_e: Polynomial,
    adj_e: Vec<Vec<Polynomial>>,
    shell: Option<ShellFrame>,
    note: String,
}

impl LevelSetFamily {
    pub fn define(f: Vec<Polynomial>, metric: Metric) -> Result<Self> {
        let Some(first) = f.first() else {
            return Err(Error::ArityMismatch("no level-set polynomials".into()));
        };
        let ring = first.ring().clone();
        let n = ring.dim();
        let k = f.len();
        if metric.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: metric.dim() });
        }
        for p in &f {
            crate::algebra_core::poly::check_ring(&ring, p.ring())?;
            if p.is_coord_free() {
                return Err(Error::ConstantLevelSet);
            }
        }
        if k >= n {
            return Err(Error::ArityMismatch(format!("{} constraints in dimension {}", k, n)));
        }
        let jac: Vec<Vec<Polynomial>> = f.iter().map(|p| (0..n).map(|i| p.partial(i)).collect()).collect();
        check_jacobian_rank(&ring, &jac)?;
        let hess = jac.iter().map(|row| row.iter().map(|p| (0..n).map(|j| p.partial(j)).collect()).collect()).collect();
        let raised: Vec<Vec<Polynomial>> = jac.iter().map(|row| lower(metric.inverse_matrix(), row, &ring)).collect();
        let basis = ReductionBasis::new(&f)?;
        let e: Vec<Vec<Polynomial>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let mut acc = Polynomial::zero(&ring);
                        for i in 0..n {
                            acc = acc.add(&raised[a][i].mul(&jac[b][i]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let det_e = poly_det(&e, &ring);
        if det_e.is_zero() {
            return Err(Error::Singular("E^{ab} is identically degenerate".into()));
        }
        let adj_e = poly_adjugate(&e, &ring);
        let det_red = basis.reduce(&det_e)?;
        let note = if det_red.is_zero() {
            format!("det E = {} vanishes on the whole level set; no normal frame there", det_e)
        } else {
            format!("the normal frame degenerates where det E = {} vanishes; modulo the ideal det E = {}", det_e, det_red)
        };
        let mut fam = LevelSetFamily { ring, f, metric, jac, raised, hess, basis, e, det_e, adj_e, shell: None, note };
        fam.shell = fam.build_shell()?;
        Ok(fam)
    }

    fn build_shell(&self) -> Result<Option<ShellFrame>> {
        let det = self.basis.reduce(&self.det_e)?;
        let Some(inv) = det.unit_inverse() else { return Ok(None) };
        let k = self.k();
        let n = self.n();
        let kk: Vec<Vec<Polynomial>> =
            (0..k).map(|a| (0..k).map(|b| self.basis.reduce(&self.adj_e[a][b].mul(&inv))).collect::<Result<_>>()).collect::<Result<_>>()?;
        let mut n_perp = Vec::new();
        for a in 0..k {
            let comps = (0..n)
                .map(|i| {
                    let mut acc = Polynomial::zero(&self.ring);
                    for b in 0..k {
                        acc = acc.add(&kk[a][b].mul(&self.raised[b][i]));
                    }
                    self.basis.reduce(&acc)
                })
                .collect::<Result<Vec<_>>>()?;
            n_perp.push(VectorField::new(&self.ring, comps)?);
        }
        let proj = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Polynomial::zero(&self.ring);
                        for a in 0..k {
                            acc = acc.add(&self.jac[a][i].mul(n_perp[a].comp(j)));
                        }
                        self.basis.reduce(&acc)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(ShellFrame { k: kk, n_perp, proj }))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.ring.dim()
    }
    pub fn k(&self) -> usize {
        self.f.len()
    }
    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }
    pub fn metric(&self) -> &Metric {
        &self.metric
    }
    /// `f^a_i`.
    pub fn jacobian(&self) -> &[Vec<Polynomial>] {
        &self.jac
    }
    /// `f^{ai} = g^{ij} f^a_j`.
    pub fn raised(&self) -> &[Vec<Polynomial>] {
        &self.raised
    }
    /// `f^a_{ij}`.
    pub fn hessian(&self, a: usize) -> &[Vec<Polynomial>] {
        &self.hess[a]
    }
    pub fn basis(&self) -> &ReductionBasis {
        &self.basis
    }
    pub fn excluded_note(&self) -> &str {
        &self.note
    }
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.basis.reduce(p)
    }
    pub fn reduce_field<T: Field>(&self, t: &T) -> Result<T> {
        t.reduce_mod(&self.basis)
    }
    /// `E^{ab} = f^{ai} f^b_i`.
    pub fn e_matrix(&self) -> &[Vec<Polynomial>] {
        &self.e
    }
    pub fn e_on_shell(&self) -> Result<Vec<Vec<Polynomial>>> {
        self.e.iter().map(|r| r.iter().map(|p| self.reduce(p)).collect()).collect()
    }
    /// `K^{ab} = (E⁻¹)^{ab}`.
    pub fn k_entry(&self, a: usize, b: usize) -> RationalFunction {
        Fraction { num: self.adj_e[a][b].clone(), den: self.det_e.clone() }
    }
    /// `N_⊥^a = K^{ab} f^{bi} ∂_i`, exact.
    pub fn n_perp(&self, a: usize) -> Fraction<VectorField> {
        let n = self.n();
        let comps = (0..n)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for b in 0..self.k() {
                    acc = acc.add(&self.adj_e[a][b].mul(&self.raised[b][i]));
                }
                acc
            })
            .collect();
        Fraction { num: VectorField::new(&self.ring, comps).unwrap(), den: self.det_e.clone() }
    }
    pub fn has_shell_frame(&self) -> bool {
        self.shell.is_some()
    }
    fn shell(&self) -> Result<&ShellFrame> {
        self.shell.as_ref().ok_or_else(|| Error::Singular("E is not invertible modulo the ideal".into()))
    }
    /// `K^{ab}` modulo the ideal.
    pub fn k_on_shell(&self) -> Result<&[Vec<Polynomial>]> {
        Ok(&self.shell()?.k)
    }
    /// Pairing-normalized normal fields modulo the ideal.
    pub fn n_perp_on_shell(&self) -> Result<&[VectorField]> {
        Ok(&self.shell()?.n_perp)
    }
    /// `⟨N_⊥^a, df^b⟩` as exact rational functions.
    pub fn duality_matrix(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.k())
            .map(|a| {
                let np = self.n_perp(a);
                (0..self.k()).map(|b| Fraction { num: np.num.apply(&self.f[b]), den: np.den.clone() }).collect()
            })
            .collect()
    }
    pub fn duality_holds(&self) -> bool {
        let one = RationalFunction::from_poly(Polynomial::one(&self.ring));
        let zero = RationalFunction::from_poly(Polynomial::zero(&self.ring));
        self.duality_matrix().iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, v)| v.equals(if a == b { &one } else { &zero })))
    }

    /// Unit normal `U_⊥ = √|E| N_⊥`, unit conormal `θ = df/√|E|`, and the
    /// sign `ζ = g(U_⊥, U_⊥)`, for one constraint whose `E` reduces to a
    /// perfect square.
    pub fn unit_normal(&self) -> Result<(VectorField, PForm, i64)> {
        if self.k() != 1 {
            return Err(Error::ArityMismatch("unit normal implemented for one constraint".into()));
        }
        let e = self.reduce(&self.e[0][0])?;
        let (m, s) = e.as_unit().ok_or_else(|| Error::Singular(format!("E = {} is not constant on the level set", e)))?;
        if !s.is_constant() || m.p.iter().any(|x| x % 2 != 0) {
            return Err(Error::UnsupportedSurd(format!("square root of {}", e)));
        }
        let c = s.constant_term();
        let positive = c.is_real() && c.re > num_rational::BigRational::from_integer(0.into());
        let abs = if positive { c.clone() } else { -c.clone() };
        let root = abs.sqrt_exact().ok_or_else(|| Error::UnsupportedSurd(format!("square root of {}", abs)))?;
        let half = crate::algebra_core::Monomial { c: m.c.clone(), p: m.p.iter().map(|x| x / 2).collect() };
        let sqrt_e = Polynomial::from_term(&self.ring, half, root.into());
        let inv = sqrt_e.unit_inverse().expect("nonzero root");
        let u = self.n_perp_on_shell()?[0].mul_poly(&sqrt_e);
        let theta = PForm::d_function(&self.f[0]).mul_poly(&inv);
        Ok((self.reduce_field(&u)?, self.reduce_field(&theta)?, if positive { 1 } else { -1 }))
    }

    /// `Σ_a X(f^a) N_⊥^a`, exact.
    pub fn perp_vector_exact(&self, x: &VectorField) -> Fraction<VectorField> {
        let mut num = VectorField::zero(&self.ring);
        for a in 0..self.k() {
            let xf = x.apply(&self.f[a]);
            if xf.is_zero() {
                continue;
            }
            num = num.add(&self.n_perp(a).num.mul_poly(&xf));
        }
        Fraction { num, den: self.det_e.clone() }
    }
    pub fn tangent_vector_exact(&self, x: &VectorField) -> Fraction<VectorField> {
        let p = self.perp_vector_exact(x);
        Fraction { num: x.mul_poly(&p.den).sub(&p.num), den: p.den }
    }
    /// `ω_⊥ = df^a K^{ab} f^{bh} ω_h`, exact.
    pub fn perp_form_exact(&self, w: &PForm) -> Result<Fraction<PForm>> {
        if w.degree() != 1 {
            return Err(Error::ArityMismatch("exact form projection implemented for 1-forms".into()));
        }
        let mut num = PForm::zero(&self.ring, 1);
        for a in 0..self.k() {
            let np = self.n_perp(a);
            let c = w.pair(&np.num)?;
            if c.is_zero() {
                continue;
            }
            num = num.add(&PForm::d_function(&self.f[a]).mul_poly(&c));
        }
        Ok(Fraction { num, den: self.det_e.clone() })
    }
    pub fn tangent_form_exact(&self, w: &PForm) -> Result<Fraction<PForm>> {
        let p = self.perp_form_exact(w)?;
        Ok(Fraction { num: w.mul_poly(&p.den).sub(&p.num), den: p.den })
    }
    /// The coefficients `ω_a = K^{ab} ⟨N-numerator, ω⟩` with `ω_⊥ = Σ ω_a df^a`.
    pub fn perp_coefficients(&self, w: &PForm) -> Result<Vec<RationalFunction>> {
        (0..self.k())
            .map(|a| {
                let np = self.n_perp(a);
                Ok(Fraction { num: w.pair(&np.num)?, den: np.den })
            })
            .collect()
    }

    /// Projection of a tensor modulo the ideal, applied to every slot.
    pub fn project_tensor(&self, t: &TensorField, part: Part) -> Result<TensorField> {
        let proj = &self.shell()?.proj;
        let n = self.n();
        let (p, r) = t.rank();
        let mut cur: Vec<(Vec<usize>, Polynomial)> = t.comps().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for s in 0..p + r {
            let mut next: std::collections::BTreeMap<Vec<usize>, Polynomial> = std::collections::BTreeMap::new();
            for (idx, c) in &cur {
                for m in 0..n {
                    // vector slot: new index m from Π[idx][m]; form slot: Π[m][idx]
                    let mut coef = if s < p { proj[m][idx[s]].clone() } else { proj[idx[s]][m].clone() };
                    if part == Part::Tangent {
                        coef = if m == idx[s] { Polynomial::one(&self.ring).sub(&coef) } else { coef.neg() };
                    }
                    if coef.is_zero() {
                        continue;
                    }
                    let mut j = idx.clone();
                    j[s] = m;
                    let v = c.mul(&coef);
                    let e = next.entry(j).or_insert_with(|| Polynomial::zero(&self.ring));
                    *e = e.add(&v);
                }
            }
            cur = next.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        let out = TensorField::from_entries(&self.ring, p, r, cur)?;
        self.reduce_field(&out)
    }
    pub fn project_vector(&self, x: &VectorField, part: Part) -> Result<VectorField> {
        Ok(self.project_tensor(&TensorField::from_vector(x), part)?.as_vector().unwrap())
    }
    pub fn project_form(&self, w: &PForm, part: Part) -> Result<PForm> {
        if w.degree() != 1 {
            return Err(Error::ArityMismatch("on-shell form projection implemented for 1-forms".into()));
        }
        Ok(self.project_tensor(&TensorField::from_form(w), part)?.as_one_form().unwrap())
    }
    /// Tangent projection of a vector field, required to exist on shell.
    pub fn tangent(&self, x: &VectorField) -> Result<VectorField> {
        self.project_vector(x, Part::Tangent)
    }
    pub fn normal(&self, x: &VectorField) -> Result<VectorField> {
        self.project_vector(x, Part::Normal)
    }
    /// `X(f^a) ≡ 0` modulo the ideal for every `a`.
    pub fn is_tangent_on_shell(&self, x: &VectorField) -> Result<bool> {
        for p in &self.f {
            if !self.reduce(&x.apply(p))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_jacobian_rank(ring: &RingRef, jac: &[Vec<Polynomial>]) -> Result<()> {
    let k = jac.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..16 {
        let coords: Vec<Scalar> = (0..ring.dim()).map(|_| Scalar::int(rng.gen_range(-7..=7))).collect();
        let params: Vec<Scalar> = (0..ring.nparams()).map(|_| Scalar::int(rng.gen_range(1..=7))).collect();
        let m: Vec<Vec<Scalar>> = jac.iter().map(|row| row.iter().map(|p| p.eval(&coords, &params).constant_term()).collect()).collect();
        if rank(&m) == k {
            return Ok(());
        }
    }
    Err(Error::RankDeficient)
}
