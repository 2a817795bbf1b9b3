use super::scalar::Scalar;
use super::series::{term_strings, NuSeries};
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A coordinate system: named coordinates plus Laurent parameters
/// (level-set constants such as `c` or `R`) that no vector field differentiates.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub id: String,
    pub coords: Vec<String>,
    pub params: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(id: &str, coords: Vec<String>, params: Vec<String>) -> RingRef {
        Arc::new(Ring { id: id.to_string(), coords, params })
    }
    /// Coordinates `{prefix}1..{prefix}n`.
    pub fn standard(prefix: &str, n: usize, params: &[&str]) -> RingRef {
        Ring::new(prefix, (1..=n).map(|i| format!("{}{}", prefix, i)).collect(), params.iter().map(|s| s.to_string()).collect())
    }
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
    pub fn nparams(&self) -> usize {
        self.params.len()
    }
    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }
    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|c| c == name)
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::CoordinateMismatch(a.id.clone(), b.id.clone()))
    }
}

/// Exponent vector: coordinates (nonnegative) then parameters (Laurent).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub c: Vec<u32>,
    pub p: Vec<i32>,
}

impl Monomial {
    pub fn one(n: usize, np: usize) -> Self {
        Monomial { c: vec![0; n], p: vec![0; np] }
    }
    pub fn degree(&self) -> u32 {
        self.c.iter().sum()
    }
    pub fn is_coord_free(&self) -> bool {
        self.c.iter().all(|&e| e == 0)
    }
    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(), p: self.p.iter().zip(&o.p).map(|(a, b)| a + b).collect() }
    }
    /// Coordinate divisibility; parameter parts always divide.
    pub fn divides(&self, o: &Monomial) -> bool {
        self.c.iter().zip(&o.c).all(|(a, b)| a <= b)
    }
    pub fn div(&self, o: &Monomial) -> Monomial {
        Monomial { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(), p: self.p.iter().zip(&o.p).map(|(a, b)| a - b).collect() }
    }
    pub fn coord_cmp(&self, o: &Monomial) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.c.cmp(&o.c))
    }
}

impl Ord for Monomial {
    /// Degree-lexicographic on coordinates with x1 > x2 > ..., parameters last.
    fn cmp(&self, o: &Self) -> Ordering {
        self.coord_cmp(o).then_with(|| self.p.cmp(&o.p))
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, NuSeries>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }
    pub fn constant(ring: &RingRef, s: NuSeries) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(Monomial::one(ring.dim(), ring.nparams()), s);
        p
    }
    pub fn scalar(ring: &RingRef, s: Scalar) -> Self {
        Polynomial::constant(ring, NuSeries::scalar(s))
    }
    pub fn int(ring: &RingRef, n: i64) -> Self {
        Polynomial::scalar(ring, Scalar::int(n))
    }
    pub fn one(ring: &RingRef) -> Self {
        Polynomial::int(ring, 1)
    }
    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut m = Monomial::one(ring.dim(), ring.nparams());
        m.c[i] = 1;
        Polynomial::from_term(ring, m, NuSeries::one())
    }
    pub fn param(ring: &RingRef, j: usize, e: i32) -> Self {
        let mut m = Monomial::one(ring.dim(), ring.nparams());
        m.p[j] = e;
        Polynomial::from_term(ring, m, NuSeries::one())
    }
    pub fn from_term(ring: &RingRef, m: Monomial, s: NuSeries) -> Self {
        let mut p = Polynomial::zero(ring);
        p.add_term(m, s);
        p
    }
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Monomial, NuSeries)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, s) in terms {
            p.add_term(m, s);
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, NuSeries> {
        &self.terms
    }
    pub fn into_terms(self) -> BTreeMap<Monomial, NuSeries> {
        self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, m: &Monomial) -> NuSeries {
        self.terms.get(m).cloned().unwrap_or_else(NuSeries::zero)
    }
    pub fn leading(&self) -> Option<(&Monomial, &NuSeries)> {
        self.terms.iter().next_back()
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
    /// No coordinate dependence (parameters and ν allowed).
    pub fn is_coord_free(&self) -> bool {
        self.terms.keys().all(|m| m.is_coord_free())
    }
    pub fn as_constant(&self) -> Option<NuSeries> {
        match self.terms.len() {
            0 => Some(NuSeries::zero()),
            1 => {
                let (m, s) = self.terms.iter().next().unwrap();
                if m.is_coord_free() && m.p.iter().all(|&e| e == 0) {
                    Some(s.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }
    pub fn is_exact(&self) -> bool {
        self.terms.values().all(|s| s.is_exact())
    }

    pub fn add_term(&mut self, m: Monomial, s: NuSeries) {
        if s.is_zero() && s.is_exact() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old.add(&s);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, NuSeries)> {
        self.terms.pop_last()
    }
    pub fn remove_term(&mut self, m: &Monomial) -> Option<NuSeries> {
        self.terms.remove(m)
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, s) in &small.terms {
            out.add_term(m.clone(), s.clone());
        }
        out
    }
    pub fn add_assign(&mut self, o: &Polynomial) {
        for (m, s) in &o.terms {
            self.add_term(m.clone(), s.clone());
        }
    }
    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, s) in &o.terms {
            out.add_term(m.clone(), s.neg());
        }
        out
    }
    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, s)| (m.clone(), s.neg())).collect() }
    }
    pub fn scale(&self, s: &NuSeries) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }
    pub fn scale_scalar(&self, s: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.scale(s));
        }
        out
    }
    pub fn mul_monomial(&self, mono: &Monomial, s: &NuSeries) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.mul(mono), c.mul(s));
        }
        out
    }
    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }
    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, &o.ring)?;
        Ok(self.add(o))
    }
    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        check_ring(&self.ring, &o.ring)?;
        Ok(self.mul(o))
    }
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
    /// ∂/∂x_i.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.c[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.c[i] -= 1;
            out.add_term(m2, c.scale(&Scalar::int(e as i64)));
        }
        out
    }
    /// Complex conjugation of coefficients (ν and coordinates are real).
    pub fn conj(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, s)| (m.clone(), s.conj())).collect() }
    }
    pub fn truncate(&self, n: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.truncate(n));
        }
        out
    }
    /// The ν^k coefficient polynomial.
    pub fn nu_coeff(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, s) in &self.terms {
            let c = s.coeff(k);
            if !c.is_zero() {
                out.terms.insert(m.clone(), NuSeries::scalar(c));
            }
        }
        out
    }
    /// Largest ν-power present.
    pub fn nu_degree(&self) -> usize {
        self.terms.values().filter_map(|s| s.degree()).max().unwrap_or(0)
    }
    pub fn classical(&self) -> Polynomial {
        self.nu_coeff(0)
    }
    /// Equality through the truncation caps of the coefficients.
    pub fn agrees_with(&self, o: &Polynomial) -> bool {
        self.sub(o).terms.values().all(|s| s.is_zero())
    }

    /// Rewrite into coordinates `target` via `x_i = Σ_j m[i][j] y_j`.
    pub fn linear_substitution(&self, target: &RingRef, m: &[Vec<Scalar>]) -> Result<Polynomial> {
        let n = self.ring.dim();
        if target.dim() != n || m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: target.dim() });
        }
        if target.params != self.ring.params {
            return Err(Error::CoordinateMismatch(self.ring.id.clone(), target.id.clone()));
        }
        if super::linalg::det(m).is_zero() {
            return Err(Error::SingularSubstitution);
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let mut p = Polynomial::zero(target);
                for (j, s) in m[i].iter().enumerate() {
                    if !s.is_zero() {
                        p.add_assign(&Polynomial::var(target, j).scale_scalar(s));
                    }
                }
                p
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (mono, s) in &self.terms {
            let mut t = Polynomial::from_term(target, Monomial { c: vec![0; n], p: mono.p.clone() }, s.clone());
            for (i, &e) in mono.c.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out.add_assign(&t);
        }
        Ok(out)
    }

    /// Evaluate coordinates and parameters at scalar values.
    pub fn eval(&self, coords: &[Scalar], params: &[Scalar]) -> NuSeries {
        let mut acc = NuSeries::zero();
        for (m, s) in &self.terms {
            let mut v = Scalar::one();
            for (x, &e) in coords.iter().zip(&m.c) {
                v = &v * &x.pow(e);
            }
            for (x, &e) in params.iter().zip(&m.p) {
                let b = if e < 0 { x.inv().expect("parameter evaluated at zero") } else { x.clone() };
                v = &v * &b.pow(e.unsigned_abs());
            }
            acc = acc.add(&s.scale(&v));
        }
        acc
    }

    /// Unit of the Laurent coefficient ring: a single coordinate-free term
    /// whose series has an invertible constant term.
    pub fn as_unit(&self) -> Option<(Monomial, NuSeries)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, s) = self.terms.iter().next().unwrap();
        if !m.is_coord_free() || s.coeff(0).is_zero() {
            return None;
        }
        Some((m.clone(), s.clone()))
    }
    pub fn unit_inverse(&self) -> Option<Polynomial> {
        let (m, s) = self.as_unit()?;
        let inv = s.inv()?;
        let mi = Monomial { c: m.c.clone(), p: m.p.iter().map(|e| -e).collect() };
        Some(Polynomial::from_term(&self.ring, mi, inv))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        same_ring(&self.ring, &o.ring) && self.agrees_with(o)
    }
}

pub(crate) fn monomial_string(ring: &Ring, m: &Monomial) -> Vec<String> {
    let mut f = Vec::new();
    for (i, &e) in m.c.iter().enumerate() {
        match e {
            0 => {}
            1 => f.push(ring.coords[i].clone()),
            _ => f.push(format!("{}^{}", ring.coords[i], e)),
        }
    }
    for (j, &e) in m.p.iter().enumerate() {
        match e {
            0 => {}
            1 => f.push(ring.params[j].clone()),
            _ => f.push(format!("{}^{}", ring.params[j], e)),
        }
    }
    f
}

/// Flat `coefficient*nu^k*monomial` rendering in the expression grammar.
pub(crate) fn render_terms(terms: impl Iterator<Item = (Vec<String>, NuSeries)>) -> String {
    let mut pieces: Vec<String> = Vec::new();
    for (mono, s) in terms {
        for (c, k) in term_strings(&s) {
            let mut factors = Vec::new();
            if k == 1 {
                factors.push("nu".to_string());
            } else if k > 1 {
                factors.push(format!("nu^{}", k));
            }
            factors.extend(mono.iter().cloned());
            let body = factors.join("*");
            let piece = if factors.is_empty() {
                c.to_string()
            } else if c.is_one() {
                body
            } else if (-&c).is_one() {
                format!("-{}", body)
            } else {
                format!("{}*{}", c, body)
            };
            pieces.push(piece);
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = pieces[0].clone();
    for p in &pieces[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.ring;
        let s = render_terms(self.terms.iter().rev().map(|(m, s)| (monomial_string(ring, m), s.clone())));
        f.write_str(&s)
    }
}
