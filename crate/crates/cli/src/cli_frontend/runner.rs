use super::ast::{Expr, ExprKind};
use super::eval::{add, neg, Env, Value};
use super::parser::parse_expression_at;
use super::report::{CheckResult, Report};
use super::scenario::{parse_scenario, CheckDecl, Scenario, SetupLine};
use std::collections::BTreeMap;
use std::sync::Mutex;
use twistfold::algebra_core::{Polynomial, Ring, RingRef, Scalar};
use twistfold::cartan_calculus::{Field, VectorField};
use twistfold::hopf_twist::{check_twist_axioms, GenRef, GeneratorSet, TwistData, TwistSpec};
use twistfold::riemann_geometry::{self as rg, Metric, RicciConvention};
use twistfold::sampling::{self, Sampler};
use twistfold::star_calculus::StarContext;
use twistfold::submanifold::{centrality, classify_vector, star_duality, LevelSetFamily, Part};
use twistfold::twisted_geometry::TwistedConnection;
use twistfold::{Error, Result};

pub const DEFAULT_ORDER: usize = 4;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Validated scenario setup: coordinates, family, generators and twist.
pub struct Setup {
    pub name: String,
    pub ring: RingRef,
    pub family: LevelSetFamily,
    pub metric: Metric,
    pub gens: GenRef,
    pub twist: TwistSpec,
    pub order: usize,
    pub seed: u64,
    pub frame: Vec<VectorField>,
    env: Env,
    contexts: Mutex<BTreeMap<usize, StarContext>>,
}

fn setup_error(l: &SetupLine, msg: impl std::fmt::Display) -> Error {
    Error::Scenario(format!("line {}: {}", l.line, msg))
}

fn parse_value(l: &SetupLine) -> Result<Expr> {
    parse_expression_at(&l.value, l.line, l.value_col)
}

fn constant(env: &Env, l: &SetupLine, e: &Expr) -> Result<Scalar> {
    let v = env.eval(e)?;
    let p = v.as_poly()?;
    let c = p.as_constant().filter(|c| c.is_constant()).ok_or_else(|| setup_error(l, format!("`{}` is not a constant", p)))?;
    Ok(c.constant_term())
}

impl Setup {
    pub fn from_lines(lines: &[SetupLine]) -> Result<Setup> {
        let single = |key: &str| -> Result<Option<&SetupLine>> {
            let mut it = lines.iter().filter(|l| l.key == key);
            let first = it.next();
            if let Some(dup) = it.next() {
                return Err(setup_error(dup, format!("`{}` given twice", key)));
            }
            Ok(first)
        };
        const KEYS: [&str; 10] = ["name", "coords", "params", "level", "metric", "gen", "twist", "order", "seed", "let"];
        if let Some(l) = lines.iter().find(|l| !KEYS.contains(&l.key.as_str()) && l.key != "frame") {
            return Err(setup_error(l, format!("unknown setup key `{}`", l.key)));
        }
        let name = single("name")?.map(|l| l.value.clone()).unwrap_or_else(|| "scenario".into());
        let coords_line = single("coords")?.ok_or_else(|| Error::Scenario("setup needs `coords`".into()))?;
        let coords: Vec<String> = coords_line.value.split_whitespace().map(String::from).collect();
        let params: Vec<String> = single("params")?.map(|l| l.value.split_whitespace().map(String::from).collect()).unwrap_or_default();
        for (l, names) in [(Some(coords_line), &coords), (single("params")?, &params)] {
            for n in names.iter() {
                if !n.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(setup_error(l.expect("names come from a line"), format!("bad name `{}`", n)));
                }
                if matches!(n.as_str(), "nu" | "i") || super::ast::Func::from_name(n).is_some() {
                    return Err(setup_error(l.expect("names come from a line"), format!("`{}` is reserved", n)));
                }
            }
        }
        if coords.is_empty() {
            return Err(setup_error(coords_line, "no coordinates"));
        }
        let order = match single("order")? {
            Some(l) => l.value.parse().map_err(|_| setup_error(l, "order must be a non-negative integer"))?,
            None => DEFAULT_ORDER,
        };
        let seed = match single("seed")? {
            Some(l) => l.value.parse().map_err(|_| setup_error(l, "seed must be a non-negative integer"))?,
            None => DEFAULT_SEED,
        };
        let ring = Ring::new(&name, coords, params);
        let bare = Env::new(&ring, None, None, order);

        let metric = match single("metric")? {
            None => Metric::euclidean(ring.dim()),
            Some(l) if l.value == "euclidean" => Metric::euclidean(ring.dim()),
            Some(l) if l.value == "minkowski" => Metric::minkowski(ring.dim()),
            Some(l) => {
                let mut rows = Vec::new();
                for row in l.value.split(';') {
                    let mut r = Vec::new();
                    for entry in row.split(',') {
                        let e = parse_expression_at(entry.trim(), l.line, l.value_col)?;
                        r.push(constant(&bare, l, &e)?);
                    }
                    rows.push(r);
                }
                if rows.len() != ring.dim() {
                    return Err(setup_error(l, format!("metric has {} rows for {} coordinates", rows.len(), ring.dim())));
                }
                Metric::custom(rows).map_err(|e| setup_error(l, e))?
            }
        };

        let level: Vec<Polynomial> = lines
            .iter()
            .filter(|l| l.key == "level")
            .map(|l| Ok(bare.eval(&parse_value(l)?)?.as_poly().map_err(|e| setup_error(l, e))?.clone()))
            .collect::<Result<_>>()?;
        if level.is_empty() {
            return Err(Error::Scenario("setup needs at least one `level`".into()));
        }
        let family = LevelSetFamily::define(level, metric.clone()).map_err(|e| Error::Scenario(format!("level set: {}", e)))?;

        let gen_lines: Vec<&SetupLine> = lines.iter().filter(|l| l.key == "gen").collect();
        if gen_lines.is_empty() {
            return Err(Error::Scenario("setup needs at least one `gen`".into()));
        }
        let mut names = Vec::new();
        let mut fields = Vec::new();
        for l in &gen_lines {
            let v = bare.eval(&parse_value(l)?)?;
            fields.push(v.to_vector().map_err(|e| setup_error(l, e))?);
            names.push(l.name.clone().expect("gen has a name"));
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let gens = GeneratorSet::new(&refs, fields).map_err(|e| Error::Scenario(format!("generators: {}", e)))?;

        let twist = match single("twist")? {
            None => TwistSpec::Identity,
            Some(l) => parse_twist(l, &gens, &bare)?,
        };
        let data = TwistData::build(&gens, twist.clone(), order).map_err(|e| Error::Scenario(format!("twist: {}", e)))?;
        for g in data.leg_generators() {
            let class = classify_vector(gens.field(g), &family)?;
            if !class.preserves_ideal() {
                return Err(Error::Scenario(format!("twist legs not tangent: `{}` is of class {}", gens.name(g), class.name())));
            }
        }
        let ctx = StarContext::new(data);
        let mut env = Env::new(&ring, Some(gens.clone()), Some(ctx.clone()), order);
        for l in lines.iter().filter(|l| l.key == "let") {
            let v = env.eval(&parse_value(l)?)?;
            env.bind(l.name.as_deref().expect("let has a name"), v).map_err(|e| setup_error(l, e))?;
        }
        let frame = match single("frame")? {
            None => Vec::new(),
            Some(l) => l
                .value
                .split(',')
                .map(|s| {
                    let e = parse_expression_at(s.trim(), l.line, l.value_col)?;
                    env.eval(&e)?.to_vector().map_err(|e| setup_error(l, e))
                })
                .collect::<Result<_>>()?,
        };
        let mut contexts = BTreeMap::new();
        contexts.insert(order, ctx);
        Ok(Setup { name, ring, family, metric, gens, twist, order, seed, frame, env, contexts: Mutex::new(contexts) })
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Star context truncated at `order`, built once per order.
    pub fn context(&self, order: usize) -> Result<StarContext> {
        let mut cache = self.contexts.lock().expect("context cache");
        if let Some(c) = cache.get(&order) {
            return Ok(c.clone());
        }
        let c = StarContext::new(TwistData::build(&self.gens, self.twist.clone(), order)?);
        cache.insert(order, c.clone());
        Ok(c)
    }

    /// Twisted Levi-Civita data; fails for twists outside the Killing class.
    pub fn connection(&self, order: usize) -> Result<TwistedConnection> {
        TwistedConnection::new(self.context(order)?, self.metric.clone(), Some(self.family.clone()))
    }

    /// Generators tangent to every level set, used for random tangent fields.
    pub fn tangent_fields(&self) -> Result<Vec<VectorField>> {
        let mut out = Vec::new();
        for f in self.gens.fields() {
            if matches!(classify_vector(f, &self.family)?, twistfold::submanifold::TangencyClass::Tangent) {
                out.push(f.clone());
            }
        }
        if out.is_empty() {
            return Err(Error::Scenario("no generator is tangent to the family".into()));
        }
        Ok(out)
    }

    fn need_frame(&self) -> Result<&[VectorField]> {
        if self.frame.is_empty() {
            return Err(Error::Scenario("this check needs `frame` in the setup".into()));
        }
        Ok(&self.frame)
    }

    fn env_at(&self, order: usize) -> Result<Env> {
        if order == self.order {
            return Ok(self.env.clone());
        }
        Ok(Env::new(&self.ring, Some(self.gens.clone()), Some(self.context(order)?), order))
    }
}

fn parse_twist(l: &SetupLine, gens: &GenRef, env: &Env) -> Result<TwistSpec> {
    let v = l.value.trim();
    let (kind, rest) = v.split_once(char::is_whitespace).unwrap_or((v, ""));
    let idx = |n: &str| gens.index(n).ok_or_else(|| setup_error(l, format!("unknown generator `{}`", n)));
    match kind {
        "identity" if rest.trim().is_empty() => Ok(TwistSpec::Identity),
        "jordanian" => match rest.split_whitespace().collect::<Vec<_>>().as_slice() {
            [h, e] => Ok(TwistSpec::Jordanian { h: idx(h)?, e: idx(e)? }),
            _ => Err(setup_error(l, "expected `jordanian H E`")),
        },
        "abelian" => {
            let mut terms = Vec::new();
            for part in rest.split(',') {
                let w: Vec<&str> = part.split_whitespace().collect();
                let c = match w.len() {
                    2 => Scalar::one(),
                    3 => constant(env, l, &parse_expression_at(w[2], l.line, l.value_col)?)?,
                    _ => return Err(setup_error(l, "expected `abelian A B [coefficient], ...`")),
                };
                terms.push((idx(w[0])?, idx(w[1])?, c));
            }
            Ok(TwistSpec::Abelian(terms))
        }
        _ => Err(setup_error(l, format!("unknown twist `{}`", v))),
    }
}

/// Parses, validates and runs a scenario.
pub fn run_scenario_text(src: &str) -> Result<Report> {
    let sc = parse_scenario(src)?;
    run(&sc)
}

pub fn run_scenario(path: &std::path::Path) -> Result<Report> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Scenario(format!("{}: {}", path.display(), e)))?;
    run_scenario_text(&src)
}

pub fn run(sc: &Scenario) -> Result<Report> {
    let setup = Setup::from_lines(&sc.setup)?;
    for c in &sc.checks {
        if !OPS.contains(&c.op.as_str()) {
            return Err(Error::Scenario(format!("line {}: unknown operation `{}`", c.line, c.op)));
        }
    }
    let mut report = Report { scenario: setup.name.clone(), checks: Vec::new() };
    for (k, c) in sc.checks.iter().enumerate() {
        report.checks.push(run_check(&setup, c, k as u64));
    }
    Ok(report)
}

pub const OPS: [&str; 26] = [
    "zero",
    "equal",
    "twist-axioms",
    "unitary",
    "triangular",
    "star-associativity",
    "centrality",
    "duality",
    "projections",
    "tangency",
    "tangency-on",
    "e-matrix",
    "nabla",
    "second-form",
    "principal-curvatures",
    "gauss-curvature",
    "mean-curvature",
    "twisted-second-form",
    "intrinsic-flat",
    "ricci-scalar",
    "torsion",
    "compatibility",
    "gauss",
    "leibniz",
    "braiding",
    "d-isomorphism",
];

/// Outcome of one check before it is labelled.
struct Outcome {
    residual: String,
    passed: bool,
    note: Option<String>,
}

impl Outcome {
    fn value(v: &Value) -> Outcome {
        Outcome { residual: v.to_string(), passed: v.is_zero(), note: None }
    }
    fn count(failures: usize, first: Option<String>, total: usize) -> Outcome {
        match first {
            None => Outcome { residual: "0".into(), passed: failures == 0, note: Some(format!("{} cases", total)) },
            Some(r) => Outcome { residual: r, passed: false, note: Some(format!("{} of {} cases fail", failures, total)) },
        }
    }
    fn flag(ok: bool) -> Outcome {
        Outcome { residual: if ok { "0" } else { "1" }.into(), passed: ok, note: None }
    }
}

/// Collects the first nonzero residual over a sequence of cases.
#[derive(Default)]
struct Tally {
    total: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn push(&mut self, r: Result<Value>) {
        self.total += 1;
        match r {
            Ok(v) if v.is_zero() => {}
            Ok(v) => {
                self.failures += 1;
                self.first.get_or_insert_with(|| v.to_string());
            }
            Err(e) => {
                self.failures += 1;
                self.first.get_or_insert_with(|| format!("error({})", e));
            }
        }
    }
    fn outcome(self) -> Outcome {
        Outcome::count(self.failures, self.first, self.total)
    }
}

fn run_check(s: &Setup, c: &CheckDecl, index: u64) -> CheckResult {
    let order = c.option("order").map(|o| o as usize).unwrap_or(s.order);
    let out = execute(s, c, order, index).unwrap_or_else(|e| Outcome { residual: "error".into(), passed: false, note: Some(e.to_string()) });
    CheckResult { name: c.name.clone(), passed: out.passed, residual: out.residual, order, note: out.note, reference: c.reference.clone() }
}

fn arg(c: &CheckDecl, i: usize) -> Result<&Expr> {
    match c.args.get(i).map(Vec::as_slice) {
        Some([e]) => Ok(e),
        Some(_) => Err(Error::ArityMismatch(format!("argument {} of `{}` must be a single expression", i + 1, c.op))),
        None => Err(Error::ArityMismatch(format!("`{}` needs argument {}", c.op, i + 1))),
    }
}

fn list(c: &CheckDecl, i: usize) -> Result<&[Expr]> {
    c.args.get(i).map(Vec::as_slice).ok_or_else(|| Error::ArityMismatch(format!("`{}` needs argument {}", c.op, i + 1)))
}

fn word(c: &CheckDecl, i: usize) -> Result<&str> {
    match &arg(c, i)?.kind {
        ExprKind::Name(n) => Ok(n),
        _ => Err(Error::Type(format!("argument {} of `{}` must be a name", i + 1, c.op))),
    }
}

fn expect_args(c: &CheckDecl, n: usize) -> Result<()> {
    if c.args.len() != n {
        return Err(Error::ArityMismatch(format!("`{}` takes {} argument{}, found {}", c.op, n, if n == 1 { "" } else { "s" }, c.args.len())));
    }
    Ok(())
}

/// `a − b` reduced modulo the ideal and truncated at `order`.
fn difference(s: &Setup, a: &Value, b: &Value, order: usize) -> Result<Value> {
    add(a, &neg(b)?)?.truncate(order).reduce(&s.family)
}

fn poly_diff(s: &Setup, a: &Polynomial, b: &Polynomial, order: usize) -> Result<Value> {
    difference(s, &Value::Poly(a.clone()), &Value::Poly(b.clone()), order)
}

fn rng(s: &Setup, index: u64) -> Sampler {
    sampling::sampler(s.seed.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn execute(s: &Setup, c: &CheckDecl, order: usize, index: u64) -> Result<Outcome> {
    let env = s.env_at(order)?;
    let eval = |e: &Expr| env.eval(e);
    let count = |default: u64| c.option("count").unwrap_or(default) as usize;
    let degree = |default: u64| c.option("degree").unwrap_or(default) as u32;
    match c.op.as_str() {
        "zero" => {
            expect_args(c, 1)?;
            Ok(Outcome::value(&eval(arg(c, 0)?)?.truncate(order).reduce(&s.family)?))
        }
        "equal" => {
            expect_args(c, 2)?;
            Ok(Outcome::value(&difference(s, &eval(arg(c, 0)?)?, &eval(arg(c, 1)?)?, order)?))
        }
        "twist-axioms" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let r = check_twist_axioms(ctx.twist(), degree(3));
            let note =
                Some(format!("counital {}/{}, cocycle mismatches {} of {} triples", r.counital_left, r.counital_right, r.cocycle_mismatches, r.tuples_checked));
            let residual = if r.cocycle_residual.is_zero() { r.cocycle_mismatches.to_string() } else { r.cocycle_residual.to_string() };
            Ok(Outcome { passed: r.passed(), residual, note })
        }
        "unitary" => {
            expect_args(c, 0)?;
            Ok(Outcome::flag(s.context(order)?.twist().is_unitary()?))
        }
        "triangular" => {
            expect_args(c, 0)?;
            Ok(Outcome::flag(s.context(order)?.twist().is_triangular()))
        }
        "star-associativity" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let mut r = rng(s, index);
            let polys: Vec<Polynomial> = (0..count(100)).map(|_| sampling::polynomial(&mut r, &s.ring, degree(3), 3)).collect();
            let mut t = Tally::default();
            for k in 0..polys.len() {
                let (a, b, cc) = (&polys[k], &polys[(k + 1) % polys.len()], &polys[(k + 2) % polys.len()]);
                let lhs = ctx.star(&ctx.star(a, b), cc);
                let rhs = ctx.star(a, &ctx.star(b, cc));
                t.push(Ok(Value::Poly(lhs.sub(&rhs).truncate(order))));
            }
            Ok(t.outcome())
        }
        "centrality" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let rep = centrality(&ctx, &s.family, degree(4));
            let mut t = Tally::default();
            for (_, r) in &rep.entries {
                t.push(Ok(Value::Poly(r.truncate(order))));
            }
            Ok(t.outcome())
        }
        "duality" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let mut t = Tally::default();
            t.push(Ok(Value::Poly(Polynomial::int(&s.ring, i64::from(!s.family.duality_holds())))));
            for (_, r) in &star_duality(&ctx, &s.family)?.entries {
                t.push(Ok(Value::Poly(r.truncate(order))));
            }
            Ok(t.outcome())
        }
        "projections" => {
            expect_args(c, 0)?;
            let m = &s.family;
            let mut r = rng(s, index);
            let mut t = Tally::default();
            for _ in 0..count(50) {
                let x = sampling::vector_field(&mut r, &s.ring, 2);
                let (pt, pn) = (m.project_vector(&x, Part::Tangent)?, m.project_vector(&x, Part::Normal)?);
                t.push(difference(s, &Value::Vector(pt.add(&pn)), &Value::Vector(x), order));
                t.push(difference(s, &Value::Vector(m.project_vector(&pt, Part::Tangent)?), &Value::Vector(pt.clone()), order));
                t.push(difference(s, &Value::Vector(m.project_vector(&pn, Part::Normal)?), &Value::Vector(pn.clone()), order));
                t.push(m.project_vector(&pt, Part::Normal).and_then(|v| Value::Vector(v).reduce(m)));
                let w = sampling::one_form(&mut r, &s.ring, 2);
                let (wt, wn) = (m.project_form(&w, Part::Tangent)?, m.project_form(&w, Part::Normal)?);
                t.push(difference(s, &Value::Form(wt.add(&wn)), &Value::Form(w), order));
                t.push(difference(s, &Value::Form(m.project_form(&wt, Part::Tangent)?), &Value::Form(wt.clone()), order));
                t.push(difference(s, &Value::Form(m.project_form(&wn, Part::Normal)?), &Value::Form(wn.clone()), order));
            }
            Ok(t.outcome())
        }
        "tangency" => {
            expect_args(c, 2)?;
            let x = eval(arg(c, 0)?)?.to_vector()?;
            let want = word(c, 1)?;
            let got = classify_vector(&x, &s.family)?;
            Ok(Outcome {
                passed: got.name() == want,
                residual: if got.name() == want { "0".into() } else { got.name().into() },
                note: Some(format!("class {}", got.name())),
            })
        }
        "tangency-on" => {
            expect_args(c, 3)?;
            let f = eval(arg(c, 0)?)?.as_poly()?.clone();
            let m = LevelSetFamily::define(vec![f], s.metric.clone())?;
            let x = eval(arg(c, 1)?)?.to_vector()?;
            let want = word(c, 2)?;
            let got = classify_vector(&x, &m)?;
            Ok(Outcome {
                passed: got.name() == want,
                residual: if got.name() == want { "0".into() } else { got.name().into() },
                note: Some(format!("class {}", got.name())),
            })
        }
        "e-matrix" => {
            expect_args(c, 1)?;
            let want = list(c, 0)?;
            let e = s.family.e_on_shell()?;
            let flat: Vec<&Polynomial> = e.iter().flatten().collect();
            if flat.len() != want.len() {
                return Err(Error::ArityMismatch(format!("E has {} entries, {} given", flat.len(), want.len())));
            }
            let mut t = Tally::default();
            for (p, w) in flat.into_iter().zip(want) {
                t.push(poly_diff(s, p, eval(w)?.as_poly()?, order));
            }
            Ok(t.outcome())
        }
        "nabla" => {
            expect_args(c, 3)?;
            let x = eval(arg(c, 0)?)?.to_vector()?;
            let y = eval(arg(c, 1)?)?.to_vector()?;
            Ok(Outcome::value(&difference(s, &Value::Vector(rg::flat_nabla(&x, &y)), &eval(arg(c, 2)?)?, order)?))
        }
        "second-form" => {
            expect_args(c, 3)?;
            let x = eval(arg(c, 0)?)?.to_vector()?;
            let y = eval(arg(c, 1)?)?.to_vector()?;
            Ok(Outcome::value(&difference(s, &Value::Vector(rg::second_form(&s.family, &x, &y)?), &eval(arg(c, 2)?)?, order)?))
        }
        "principal-curvatures" | "gauss-curvature" | "mean-curvature" => {
            expect_args(c, 1)?;
            let p = rg::principal_curvatures(&s.family, s.need_frame()?)?;
            let got: Vec<Polynomial> = match c.op.as_str() {
                "principal-curvatures" => p.kappa,
                "gauss-curvature" => vec![p.gauss],
                _ => vec![p.mean],
            };
            let want = list(c, 0)?;
            if got.len() != want.len() {
                return Err(Error::ArityMismatch(format!("{} values computed, {} given", got.len(), want.len())));
            }
            let mut t = Tally::default();
            for (g, w) in got.iter().zip(want) {
                t.push(poly_diff(s, g, eval(w)?.as_poly()?, order));
            }
            Ok(t.outcome())
        }
        "twisted-second-form" => {
            expect_args(c, 0)?;
            let conn = s.connection(order)?;
            let frame = s.need_frame()?;
            let mut t = Tally::default();
            for x in frame {
                for y in frame {
                    let classical = rg::second_form(&s.family, x, y)?;
                    t.push(conn.second_form(x, y).and_then(|v| difference(s, &Value::Vector(v), &Value::Vector(classical.clone()), order)));
                    t.push(conn.second_form_by_legs(x, y).and_then(|v| difference(s, &Value::Vector(v), &Value::Vector(classical), order)));
                }
            }
            Ok(t.outcome())
        }
        "intrinsic-flat" => {
            let twisted = twisted_flag(c)?;
            let frame = s.need_frame()?;
            let conn = if twisted { Some(s.connection(order)?) } else { None };
            let mut t = Tally::default();
            for x in frame {
                for y in frame {
                    for z in frame {
                        let r = match &conn {
                            Some(k) => k.intrinsic_curvature(x, y, z),
                            None => rg::intrinsic_curvature(&s.family, x, y, z),
                        };
                        t.push(r.and_then(|v| Value::Vector(v.truncate(order)).reduce(&s.family)));
                    }
                }
            }
            Ok(t.outcome())
        }
        "ricci-scalar" => {
            if c.args.len() != 1 && c.args.len() != 2 {
                return Err(Error::ArityMismatch("`ricci-scalar` takes [twisted;] expected".into()));
            }
            let twisted = c.args.len() == 2 && twisted_flag_at(c, 0)?;
            let got = if twisted {
                s.connection(order)?.ricci_scalar(RicciConvention::SecondSlot)?
            } else {
                rg::ricci_scalar(&s.family, RicciConvention::SecondSlot)?
            };
            let want = eval(arg(c, c.args.len() - 1)?)?;
            Ok(Outcome::value(&poly_diff(s, &got, want.as_poly()?, order)?))
        }
        "torsion" | "compatibility" | "gauss" => {
            expect_args(c, 0)?;
            let conn = s.connection(order)?;
            let fields = s.tangent_fields()?;
            let mut r = rng(s, index);
            let mut t = Tally::default();
            for _ in 0..count(if c.op == "gauss" { 25 } else { 50 }) {
                let v: Vec<VectorField> = (0..4).map(|_| sampling::tangent_field(&mut r, &fields, 1)).collect();
                let res = match c.op.as_str() {
                    "torsion" => Value::Vector(conn.torsion(&v[0], &v[1])).truncate(order).reduce(&s.family),
                    "compatibility" => conn.compatibility_residual(&v[0], &v[1], &v[2]).map(|p| Value::Poly(p.truncate(order))),
                    _ => conn.gauss_residual(&v[0], &v[1], &v[2], &v[3]).map(|p| Value::Poly(p.truncate(order))),
                };
                t.push(res);
            }
            Ok(t.outcome())
        }
        "leibniz" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let mut r = rng(s, index);
            let mut t = Tally::default();
            for _ in 0..count(50) {
                let x = sampling::vector_field(&mut r, &s.ring, 1);
                let h = sampling::polynomial(&mut r, &s.ring, 2, 3);
                let h2 = sampling::polynomial(&mut r, &s.ring, 2, 3);
                t.push(Ok(Value::Poly(ctx.leibniz_residual(&x, &h, &h2).truncate(order))));
            }
            Ok(t.outcome())
        }
        "braiding" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let mut r = rng(s, index);
            let mut t = Tally::default();
            for k in 0..count(50) {
                let f = |r: &mut Sampler, deg: usize| match deg {
                    0 => twistfold::cartan_calculus::PForm::function(sampling::polynomial(r, &s.ring, 2, 3)),
                    _ => sampling::one_form(r, &s.ring, 1),
                };
                let a = f(&mut r, k % 2);
                let b = f(&mut r, (k / 2) % 2);
                t.push(ctx.braiding_check(&a, &b).map(|ok| Value::Poly(Polynomial::int(&s.ring, i64::from(!ok)))));
            }
            Ok(t.outcome())
        }
        "d-isomorphism" => {
            expect_args(c, 0)?;
            let ctx = s.context(order)?;
            let tw = ctx.twist();
            let mut r = rng(s, index);
            let mut t = Tally::default();
            for _ in 0..count(25) {
                let u = sampling::uelement(&mut r, &s.gens, 2, 3);
                let v = sampling::uelement(&mut r, &s.gens, 2, 3);
                let lhs = tw.d_map(&tw.star_u(&u, &v));
                let rhs = tw.d_map(&u).mul(&tw.d_map(&v));
                t.push(Ok(Value::U(lhs.sub(&rhs).truncate(order))));
            }
            Ok(t.outcome())
        }
        op => Err(Error::Scenario(format!("unknown operation `{}`", op))),
    }
}

fn twisted_flag_at(c: &CheckDecl, i: usize) -> Result<bool> {
    match word(c, i)? {
        "twisted" => Ok(true),
        "classical" => Ok(false),
        w => Err(Error::Type(format!("expected `twisted` or `classical`, found `{}`", w))),
    }
}

fn twisted_flag(c: &CheckDecl) -> Result<bool> {
    match c.args.len() {
        0 => Ok(false),
        1 => twisted_flag_at(c, 0),
        _ => Err(Error::ArityMismatch(format!("`{}` takes at most one argument", c.op))),
    }
}
