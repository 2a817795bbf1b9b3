use crate::algebra_core::{RingRef, Scalar};
use crate::cartan_calculus::{constant_combination, constant_rank, Field, VectorField};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Sequence of generator indices; the empty word is the unit.
pub type Word = Vec<usize>;

pub type GenRef = Arc<GeneratorSet>;

/// Named vector fields closing into a finite-dimensional Lie algebra.
#[derive(Debug)]
pub struct GeneratorSet {
    names: Vec<String>,
    fields: Vec<VectorField>,
    /// `[g_i, g_j] = Σ_k bracket[i][j][k] g_k`.
    bracket: Vec<Vec<Vec<Scalar>>>,
    /// `g_i* = Σ_j star[i][j] g_j`.
    star: Option<Vec<Vec<Scalar>>>,
    order_cache: Mutex<HashMap<Word, Vec<(Word, Scalar)>>>,
}

impl GeneratorSet {
    /// Registers the fields, computing the bracket table (which must have
    /// constant coefficients) and the natural star table `g* = −ḡ` when the
    /// conjugates lie in the span.
    pub fn new(names: &[&str], fields: Vec<VectorField>) -> Result<GenRef> {
        if names.len() != fields.len() || fields.is_empty() {
            return Err(Error::ArityMismatch(format!("{} names for {} fields", names.len(), fields.len())));
        }
        let ring = fields[0].ring().clone();
        for f in &fields {
            crate::algebra_core::poly::check_ring(&ring, f.ring())?;
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            if !seen.insert(*n) {
                return Err(Error::Type(format!("duplicate generator name `{}`", n)));
            }
        }
        if constant_rank(&fields) != fields.len() {
            return Err(Error::RankDeficient);
        }
        let m = fields.len();
        let mut bracket = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let b = fields[i].bracket(&fields[j]);
                let c = constant_combination(&fields, &b)
                    .ok_or_else(|| Error::NotClosed(format!("[{}, {}] is not a constant combination of the generators", names[i], names[j])))?;
                bracket[j][i] = c.iter().map(|x| -x).collect();
                bracket[i][j] = c;
            }
        }
        let star =
            fields.iter().map(|f| constant_combination(&fields, &f.conj()).map(|v| v.iter().map(|x| -x).collect())).collect::<Option<Vec<Vec<Scalar>>>>();
        let g = GeneratorSet { names: names.iter().map(|s| s.to_string()).collect(), fields, bracket, star, order_cache: Mutex::new(HashMap::new()) };
        g.check_jacobi()?;
        Ok(Arc::new(g))
    }

    /// Replace the star table; it must be an involutive antihomomorphism.
    pub fn with_star_table(self: &GenRef, star: Vec<Vec<Scalar>>) -> Result<GenRef> {
        let m = self.len();
        if star.len() != m || star.iter().any(|r| r.len() != m) {
            return Err(Error::ArityMismatch("star table shape".into()));
        }
        let g = GeneratorSet {
            names: self.names.clone(),
            fields: self.fields.clone(),
            bracket: self.bracket.clone(),
            star: Some(star),
            order_cache: Mutex::new(HashMap::new()),
        };
        g.check_star()?;
        Ok(Arc::new(g))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn ring(&self) -> &RingRef {
        self.fields[0].ring()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn field(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }
    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }
    pub fn bracket_coeffs(&self, i: usize, j: usize) -> &[Scalar] {
        &self.bracket[i][j]
    }
    pub fn star_table(&self) -> Option<&Vec<Vec<Scalar>>> {
        self.star.as_ref()
    }
    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.bracket[i][j].iter().all(|x| x.is_zero())
    }

    fn check_jacobi(&self) -> Result<()> {
        let m = self.len();
        // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
        let br = |u: &[Scalar], c: usize| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); m];
            for (k, x) in u.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (l, y) in self.bracket[k][c].iter().enumerate() {
                    out[l] += &(x * y);
                }
            }
            out
        };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let t1 = br(&self.bracket[a][b], c);
                    let t2 = br(&self.bracket[b][c], a);
                    let t3 = br(&self.bracket[c][a], b);
                    if (0..m).any(|l| !(&(&t1[l] + &t2[l]) + &t3[l]).is_zero()) {
                        return Err(Error::NotClosed("bracket table violates the Jacobi identity".into()));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_star(&self) -> Result<()> {
        let Some(s) = &self.star else { return Ok(()) };
        let m = self.len();
        // involutive: (g*)* = g with conjugate-linear extension
        for i in 0..m {
            let mut back = vec![Scalar::zero(); m];
            for (j, x) in s[i].iter().enumerate() {
                for (k, y) in s[j].iter().enumerate() {
                    back[k] += &(&x.conj() * y);
                }
            }
            for (k, v) in back.iter().enumerate() {
                let want = if k == i { Scalar::one() } else { Scalar::zero() };
                if *v != want {
                    return Err(Error::Type("star table is not involutive".into()));
                }
            }
        }
        // antihomomorphism: [a,b]* = [b*, a*]
        for a in 0..m {
            for b in 0..m {
                let mut lhs = vec![Scalar::zero(); m];
                for (k, x) in self.bracket[a][b].iter().enumerate() {
                    for (l, y) in s[k].iter().enumerate() {
                        lhs[l] += &(&x.conj() * y);
                    }
                }
                let mut rhs = vec![Scalar::zero(); m];
                for (p, x) in s[b].iter().enumerate() {
                    for (q, y) in s[a].iter().enumerate() {
                        let xy = x * y;
                        if xy.is_zero() {
                            continue;
                        }
                        for (l, z) in self.bracket[p][q].iter().enumerate() {
                            rhs[l] += &(&xy * z);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::Type("star table is not an antihomomorphism".into()));
                }
            }
        }
        Ok(())
    }

    /// PBW normal form of a word: generator indices non-decreasing,
    /// obtained by repeatedly applying `g_b g_a = g_a g_b + [g_b, g_a]`.
    pub fn normal_order(&self, w: &[usize]) -> Vec<(Word, Scalar)> {
        if w.windows(2).all(|p| p[0] <= p[1]) {
            return vec![(w.to_vec(), Scalar::one())];
        }
        if let Some(hit) = self.order_cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let i = w.windows(2).position(|p| p[0] > p[1]).unwrap();
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut push = |v: Vec<(Word, Scalar)>, c: &Scalar| {
            for (k, s) in v {
                let e = acc.entry(k).or_insert_with(Scalar::zero);
                *e += &(&s * c);
            }
        };
        let mut swapped = w.to_vec();
        swapped.swap(i, i + 1);
        push(self.normal_order(&swapped), &Scalar::one());
        for (k, c) in self.bracket[w[i]][w[i + 1]].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut shorter = w[..i].to_vec();
            shorter.push(k);
            shorter.extend_from_slice(&w[i + 2..]);
            push(self.normal_order(&shorter), c);
        }
        let out: Vec<(Word, Scalar)> = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        self.order_cache.lock().unwrap().insert(w.to_vec(), out.clone());
        out
    }

    /// Renders a word as `H^2*E`; the empty word as `1`.
    pub fn word_string(&self, w: &[usize]) -> String {
        word_factors(self, w).join("*")
    }
}

pub(crate) fn word_factors(g: &GeneratorSet, w: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let n = j - i;
        out.push(if n == 1 { g.names[w[i]].clone() } else { format!("{}^{}", g.names[w[i]], n) });
        i = j;
    }
    out
}

pub(crate) fn same_generators(a: &GenRef, b: &GenRef) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::Type("elements over different generator sets".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{Polynomial, Ring};

    #[test]
    fn cylinder_brackets() {
        let r = Ring::standard("x", 3, &[]);
        let x = |i| Polynomial::var(&r, i);
        let z = Polynomial::zero(&r);
        let l12 = VectorField::new(&r, vec![x(1).neg(), x(0), z.clone()]).unwrap();
        let l13 = VectorField::new(&r, vec![z.clone(), z.clone(), x(0)]).unwrap();
        let l23 = VectorField::new(&r, vec![z.clone(), z.clone(), x(1)]).unwrap();
        let g = GeneratorSet::new(&["L12", "L13", "L23"], vec![l12, l13, l23]).unwrap();
        assert_eq!(g.bracket_coeffs(0, 1), &[Scalar::zero(), Scalar::zero(), Scalar::int(-1)]);
        assert_eq!(g.bracket_coeffs(0, 2), &[Scalar::zero(), Scalar::one(), Scalar::zero()]);
        assert!(g.commute(1, 2));
        let star = g.star_table().unwrap();
        assert_eq!(star[0][0], Scalar::int(-1));
        let no = g.normal_order(&[1, 0]);
        assert_eq!(no.len(), 2);
        assert_eq!(g.word_string(&[0, 0, 2]), "L12^2*L23");
    }

    #[test]
    fn non_closed_rejected() {
        let r = Ring::standard("x", 2, &[]);
        let x = |i| Polynomial::var(&r, i);
        let a = VectorField::new(&r, vec![x(0).mul(&x(0)), Polynomial::zero(&r)]).unwrap();
        let b = VectorField::partial(&r, 0);
        assert!(matches!(GeneratorSet::new(&["A", "B"], vec![a, b]), Err(Error::NotClosed(_))));
    }
}
