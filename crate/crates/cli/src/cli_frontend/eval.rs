use super::ast::{BinOp, Expr, ExprKind, Func};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use twistfold::algebra_core::{NuSeries, Polynomial, RingRef, Scalar};
use twistfold::cartan_calculus::{Field, PForm, VectorField};
use twistfold::hopf_twist::{GenRef, UElement};
use twistfold::star_calculus::StarContext;
use twistfold::submanifold::LevelSetFamily;
use twistfold::{Error, Result};

/// Runtime value of an expression.
#[derive(Clone, Debug)]
pub enum Value {
    Poly(Polynomial),
    Vector(VectorField),
    Form(PForm),
    U(UElement),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Poly(_) => "function",
            Value::Vector(_) => "vector field",
            Value::Form(f) if f.degree() == 1 => "1-form",
            Value::Form(_) => "form",
            Value::U(_) => "enveloping-algebra element",
        }
    }
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Poly(p) => p.is_zero(),
            Value::Vector(v) => v.is_zero(),
            Value::Form(f) => f.is_zero(),
            Value::U(u) => u.is_zero(),
        }
    }
    pub fn truncate(&self, n: usize) -> Value {
        match self {
            Value::Poly(p) => Value::Poly(p.truncate(n)),
            Value::Vector(v) => Value::Vector(v.truncate(n)),
            Value::Form(f) => Value::Form(f.truncate(n)),
            Value::U(u) => Value::U(u.truncate(n)),
        }
    }
    /// Normal form modulo the ideal of the family; enveloping-algebra
    /// elements are left alone.
    pub fn reduce(&self, m: &LevelSetFamily) -> Result<Value> {
        Ok(match self {
            Value::Poly(p) => Value::Poly(m.reduce(p)?),
            Value::Vector(v) => Value::Vector(m.reduce_field(v)?),
            Value::Form(f) => Value::Form(m.reduce_field(f)?),
            Value::U(u) => Value::U(u.clone()),
        })
    }
    pub fn as_poly(&self) -> Result<&Polynomial> {
        match self {
            Value::Poly(p) => Ok(p),
            v => Err(type_error("a function", v)),
        }
    }
    pub fn to_vector(&self) -> Result<VectorField> {
        match self {
            Value::Vector(v) => Ok(v.clone()),
            Value::U(u) => u_to_vector(u).ok_or_else(|| Error::Type("enveloping-algebra element is not a combination of generators".into())),
            Value::Poly(p) if p.is_zero() => Err(Error::Type("bare 0 where a vector field is needed; write 0*d1".into())),
            v => Err(type_error("a vector field", v)),
        }
    }
    pub fn to_form(&self) -> Result<PForm> {
        match self {
            Value::Form(f) => Ok(f.clone()),
            Value::Poly(p) => Ok(PForm::function(p.clone())),
            v => Err(type_error("a form", v)),
        }
    }
}

fn type_error(want: &str, got: &Value) -> Error {
    Error::Type(format!("expected {}, found {}", want, got.type_name()))
}

/// `Σ c_g g` with only length-one words, as a vector field.
fn u_to_vector(u: &UElement) -> Option<VectorField> {
    let gens = u.gens();
    let mut out = VectorField::zero(gens.ring());
    for (w, c) in u.terms() {
        if w.len() != 1 {
            return None;
        }
        out = out.add(&gens.field(w[0]).scale(c));
    }
    Some(out)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => p.fmt(f),
            Value::Vector(v) => v.fmt(f),
            Value::Form(w) => w.fmt(f),
            Value::U(u) => u.fmt(f),
        }
    }
}

/// Names in scope and the twist used by `star`.
#[derive(Clone)]
pub struct Env {
    ring: RingRef,
    gens: Option<GenRef>,
    ctx: Option<StarContext>,
    order: usize,
    bindings: BTreeMap<String, Value>,
}

impl Env {
    pub fn new(ring: &RingRef, gens: Option<GenRef>, ctx: Option<StarContext>, order: usize) -> Self {
        Env { ring: ring.clone(), gens, ctx, order, bindings: BTreeMap::new() }
    }
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn context(&self) -> Option<&StarContext> {
        self.ctx.as_ref()
    }
    pub fn gens(&self) -> Option<&GenRef> {
        self.gens.as_ref()
    }
    pub fn bind(&mut self, name: &str, v: Value) -> Result<()> {
        if self.builtin(name).is_some() {
            return Err(Error::Type(format!("`{}` is already defined by the setup", name)));
        }
        self.bindings.insert(name.to_string(), v);
        Ok(())
    }
    pub fn lookup(&self, name: &str) -> Result<Value> {
        if let Some(v) = self.bindings.get(name) {
            return Ok(v.clone());
        }
        self.builtin(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn builtin(&self, name: &str) -> Option<Value> {
        let r = &self.ring;
        match name {
            "nu" => return Some(Value::Poly(Polynomial::constant(r, NuSeries::monomial(Scalar::one(), 1, Some(self.order))))),
            "i" => return Some(Value::Poly(Polynomial::scalar(r, Scalar::i()))),
            _ => {}
        }
        if let Some(i) = r.coord_index(name) {
            return Some(Value::Poly(Polynomial::var(r, i)));
        }
        if let Some(j) = r.param_index(name) {
            return Some(Value::Poly(Polynomial::param(r, j, 1)));
        }
        if let Some(g) = &self.gens {
            if let Some(i) = g.index(name) {
                return Some(Value::U(UElement::generator(g, i)));
            }
        }
        let k: usize = name.strip_prefix('d')?.parse().ok()?;
        (1..=r.dim()).contains(&k).then(|| Value::Vector(VectorField::partial(r, k - 1)))
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        self.eval_inner(e).map_err(|err| locate(err, e))
    }

    fn eval_inner(&self, e: &Expr) -> Result<Value> {
        match &e.kind {
            ExprKind::Int(n) => {
                let q = BigRational::from_integer(BigInt::from(n.clone()));
                Ok(Value::Poly(Polynomial::scalar(&self.ring, Scalar::from_rational(q))))
            }
            ExprKind::Name(s) => self.lookup(s),
            ExprKind::Neg(a) => neg(&self.eval(a)?),
            ExprKind::Binary(op, a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match op {
                    BinOp::Add => add(&x, &y),
                    BinOp::Sub => add(&x, &neg(&y)?),
                    BinOp::Mul => mul(&x, &y),
                    BinOp::Div => {
                        let d = y.as_poly()?;
                        let inv = d.unit_inverse().ok_or_else(|| Error::Singular(format!("cannot divide by `{}`", d)))?;
                        mul(&x, &Value::Poly(inv))
                    }
                }
            }
            ExprKind::Pow(a, k) => pow(&self.eval(a)?, *k),
            ExprKind::Call(f, args) => {
                let vals: Vec<Value> = args.iter().map(|a| self.eval(a)).collect::<Result<_>>()?;
                self.call(*f, &vals)
            }
        }
    }

    fn call(&self, f: Func, a: &[Value]) -> Result<Value> {
        match f {
            Func::Star => self.star(&a[0], &a[1]),
            Func::Bracket => match (&a[0], &a[1]) {
                (Value::U(x), Value::U(y)) => Ok(Value::U(x.commutator(y))),
                (x, y) => Ok(Value::Vector(x.to_vector()?.try_bracket(&y.to_vector()?)?)),
            },
            Func::Wedge => Ok(Value::Form(a[0].to_form()?.wedge(&a[1].to_form()?)?)),
            Func::Pair => {
                let w = a[1].to_form()?;
                Ok(Value::Poly(w.pair(&a[0].to_vector()?)?))
            }
            Func::D => match &a[0] {
                Value::Poly(p) => Ok(Value::Form(PForm::d_function(p))),
                Value::Form(w) => Ok(Value::Form(w.d())),
                v => Err(type_error("a function or form", v)),
            },
            Func::Act => {
                let t = &a[1];
                match &a[0] {
                    Value::U(u) => act_u(u, t),
                    x => {
                        let x = x.to_vector()?;
                        Ok(match t {
                            Value::Poly(p) => Value::Poly(x.apply(p)),
                            Value::Vector(v) => Value::Vector(v.lie(&x)),
                            Value::Form(w) => Value::Form(w.lie(&x)),
                            Value::U(_) => return Err(type_error("a field", t)),
                        })
                    }
                }
            }
        }
    }

    fn star(&self, a: &Value, b: &Value) -> Result<Value> {
        let ctx = self.ctx.as_ref().ok_or_else(|| Error::Type("star needs a twist in the setup".into()))?;
        Ok(match (a, b) {
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(ctx.star(x, y)),
            (Value::U(x), Value::U(y)) => Value::U(ctx.twist().star_u(x, y)),
            (Value::Poly(h), Value::Form(w)) => Value::Form(ctx.left(h, w)),
            (Value::Form(w), Value::Poly(h)) => Value::Form(ctx.right(w, h)),
            (Value::Form(x), Value::Form(y)) => Value::Form(ctx.wedge(x, y)?),
            (Value::Poly(h), x) => Value::Vector(ctx.left(h, &x.to_vector()?)),
            (x, Value::Poly(h)) => Value::Vector(ctx.right(&x.to_vector()?, h)),
            (x, y) => return Err(Error::Type(format!("no star product of {} and {}", x.type_name(), y.type_name()))),
        })
    }
}

fn locate(err: Error, e: &Expr) -> Error {
    match err {
        Error::Type(m) if !m.starts_with("at ") => Error::Type(format!("at {}:{}: {}", e.span.line, e.span.col, m)),
        other => other,
    }
}

fn act_u(u: &UElement, t: &Value) -> Result<Value> {
    Ok(match t {
        Value::Poly(p) => Value::Poly(u.act(p)),
        Value::Vector(v) => Value::Vector(u.act(v)),
        Value::Form(w) => Value::Form(u.act(w)),
        Value::U(v) => Value::U(v.ad_by(u)),
    })
}

fn constant_of(p: &Polynomial) -> Option<NuSeries> {
    p.as_constant()
}

pub fn neg(a: &Value) -> Result<Value> {
    Ok(match a {
        Value::Poly(p) => Value::Poly(p.neg()),
        Value::Vector(v) => Value::Vector(v.neg()),
        Value::Form(w) => Value::Form(w.neg()),
        Value::U(u) => Value::U(u.neg()),
    })
}

pub fn add(a: &Value, b: &Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Poly(p), x) | (x, Value::Poly(p)) if p.is_zero() => x.clone(),
        (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.add(y)),
        (Value::Vector(x), Value::Vector(y)) => Value::Vector(x.add(y)),
        (Value::Form(x), Value::Form(y)) if x.degree() == y.degree() => Value::Form(x.add(y)),
        (Value::U(x), Value::U(y)) => Value::U(x.add(y)),
        (Value::U(u), Value::Poly(p)) | (Value::Poly(p), Value::U(u)) if constant_of(p).is_some() => {
            Value::U(u.add(&UElement::one(u.gens()).scale(&constant_of(p).unwrap())))
        }
        (Value::U(_), Value::Vector(v)) | (Value::Vector(v), Value::U(_)) => {
            let u = if let Value::U(_) = a { a } else { b };
            Value::Vector(u.to_vector()?.add(v))
        }
        (x, y) => return Err(Error::Type(format!("cannot add {} and {}", x.type_name(), y.type_name()))),
    })
}

pub fn mul(a: &Value, b: &Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.try_mul(y)?),
        (Value::Poly(h), Value::Vector(v)) | (Value::Vector(v), Value::Poly(h)) => Value::Vector(v.mul_poly(h)),
        (Value::Poly(h), Value::Form(w)) | (Value::Form(w), Value::Poly(h)) => Value::Form(w.mul_poly(h)),
        (Value::U(x), Value::U(y)) => Value::U(x.try_mul(y)?),
        (Value::Poly(h), Value::U(u)) | (Value::U(u), Value::Poly(h)) => match constant_of(h) {
            Some(c) => Value::U(u.scale(&c)),
            None => Value::Vector(Value::U(u.clone()).to_vector()?.mul_poly(h)),
        },
        (x, y) => {
            let hint = match (x, y) {
                (Value::Form(_), Value::Form(_)) => "; use wedge",
                (Value::Vector(_) | Value::U(_), Value::Vector(_) | Value::U(_)) => "; use bracket or act",
                _ => "",
            };
            return Err(Error::Type(format!("cannot multiply {} by {}{}", x.type_name(), y.type_name(), hint)));
        }
    })
}

pub fn pow(a: &Value, k: i64) -> Result<Value> {
    match a {
        Value::Poly(p) => {
            let base = if k < 0 { p.unit_inverse().ok_or_else(|| Error::Singular(format!("`{}` is not invertible", p)))? } else { p.clone() };
            let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Type("exponent too large".into()))?;
            Ok(Value::Poly(base.pow(e)))
        }
        Value::U(u) if k >= 0 => Ok(Value::U(u.pow(k as usize))),
        v => Err(Error::Type(format!("cannot raise {} to the power {}", v.type_name(), k))),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_expression;
    use super::*;
    use twistfold::hopf_twist::TwistData;
    use twistfold::models;

    fn env() -> (models::Model, Env) {
        let m = models::cylinder(Scalar::one());
        let ctx = StarContext::new(TwistData::build(&m.gens, models::cylinder_twist_d3_l12(), 4).unwrap());
        let env = Env::new(&m.ring, Some(m.gens.clone()), Some(ctx), 4);
        (m, env)
    }

    fn ev(env: &Env, s: &str) -> Value {
        env.eval(&parse_expression(s).unwrap()).unwrap()
    }

    #[test]
    fn rotation_field() {
        let (m, env) = env();
        let Value::Vector(v) = ev(&env, "x1*d2 - x2*d1") else { panic!() };
        assert_eq!(&v, m.gens.field(1));
        let Value::Vector(w) = ev(&env, "x1*L12") else { panic!() };
        assert_eq!(w, m.gens.field(1).mul_poly(&m.ring_var(0)));
    }

    #[test]
    fn star_of_coordinates() {
        let (_, env) = env();
        let Value::Poly(p) = ev(&env, "star(x3, x1) - x1*x3 - i*nu*x2") else { panic!() };
        assert!(p.is_zero());
    }

    #[test]
    fn generator_algebra() {
        let (_, env) = env();
        let Value::U(u) = ev(&env, "bracket[L12, L13] + L23") else { panic!() };
        assert!(u.is_zero());
        assert!(matches!(ev(&env, "L12*L13 - L13*L12"), Value::U(_)));
        assert!(ev(&env, "act(L12, x1) + x2").is_zero());
        assert!(ev(&env, "pair(d2, d(x2)) - 1").is_zero());
        assert!(ev(&env, "R^-1*R - 1").is_zero());
    }

    #[test]
    fn type_errors_are_located() {
        let (_, env) = env();
        let e = env.eval(&parse_expression("x1 + d(x1)").unwrap()).unwrap_err();
        assert!(matches!(&e, Error::Type(m) if m.starts_with("at 1:1")), "{e}");
        let e = env.eval(&parse_expression("x1 + foo").unwrap()).unwrap_err();
        assert!(matches!(e, Error::UnknownSymbol(_)));
        assert!(env.eval(&parse_expression("x1/x2").unwrap()).is_err());
    }
}
