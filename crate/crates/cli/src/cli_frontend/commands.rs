//! The CLI verbs, kept out of `main` so they can be tested.

use super::eval::{Env, Value};
use super::parser::parse_expression;
use super::printer::print;
use super::report::{emit_report, Format, Report};
use super::runner::{self, Setup};
use super::scenario::{parse_scenario, CheckDecl, Scenario, SetupLine};
use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;
use twistfold::riemann_geometry::{self as rg, RicciConvention};
use twistfold::submanifold::Part;
use twistfold::{Error, Result};

pub const CYLINDER: &str = include_str!("../../../../scenarios/cylinder_abelian");
pub const HYPERBOLOID: &str = include_str!("../../../../scenarios/hyperboloid_jordanian");
pub const CONE: &str = include_str!("../../../../scenarios/cone_dilatation");

/// Flags shared by every verb.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub order: Option<usize>,
    pub seed: Option<u64>,
    pub format: Format,
}

/// Text printed by a verb and whether it succeeded.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

/// Loads a scenario from a path, or one of the shipped ones by short name.
pub fn load(spec: &str) -> Result<Scenario> {
    let src = match spec {
        "cylinder" | "cylinder_abelian" => CYLINDER.to_string(),
        "hyperboloid" | "hyperboloid_jordanian" => HYPERBOLOID.to_string(),
        "cone" | "cone_dilatation" => CONE.to_string(),
        path => std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Scenario(format!("{}: {}", path, e)))?,
    };
    parse_scenario(&src)
}

/// Replaces `order` and `seed` in the setup when given on the command line.
pub fn apply_overrides(sc: &mut Scenario, opts: &Options) {
    for (key, value) in [("order", opts.order.map(|o| o.to_string())), ("seed", opts.seed.map(|s| s.to_string()))] {
        if let Some(v) = value {
            sc.setup.retain(|l| l.key != key);
            sc.setup.push(SetupLine { line: 0, key: key.into(), name: None, value: v, value_col: 1 });
        }
    }
}

fn setup_of(spec: &str, opts: &Options) -> Result<Setup> {
    let mut sc = load(spec)?;
    apply_overrides(&mut sc, opts);
    Setup::from_lines(&sc.setup)
}

fn report_output(r: &Report, opts: &Options) -> Output {
    Output { text: emit_report(r, opts.format), ok: r.passed() }
}

pub fn run(spec: &str, opts: &Options) -> Result<Output> {
    let mut sc = load(spec)?;
    apply_overrides(&mut sc, opts);
    Ok(report_output(&runner::run(&sc)?, opts))
}

fn synthetic(setup_spec: &str, opts: &Options, checks: Vec<CheckDecl>) -> Result<Output> {
    let mut sc = load(setup_spec)?;
    apply_overrides(&mut sc, opts);
    sc.checks = checks;
    Ok(report_output(&runner::run(&sc)?, opts))
}

fn decl(name: &str, op: &str, options: Vec<(String, u64)>) -> CheckDecl {
    CheckDecl { line: 0, name: name.into(), op: op.into(), args: Vec::new(), options, reference: None }
}

pub fn check_twist(setup: &str, degree: u64, opts: &Options) -> Result<Output> {
    synthetic(setup, opts, vec![decl("twist-axioms", "twist-axioms", vec![("degree".into(), degree)]), decl("unitary", "unitary", Vec::new())])
}

pub fn verify_gauss(setup: &str, count: u64, opts: &Options) -> Result<Output> {
    synthetic(setup, opts, vec![decl("gauss", "gauss", vec![("count".into(), count)])])
}

/// Named values, printed as `name = value` or `value name value`.
fn values(title: &str, rows: &[(String, String)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Human => {
            let _ = writeln!(out, "{}", title);
            for (k, v) in rows {
                let _ = writeln!(out, "  {} = {}", k, v);
            }
        }
        Format::Structured => {
            for (k, v) in rows {
                let compact = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
                let _ = writeln!(out, "value {} {}", compact(k), compact(v));
            }
        }
    }
    out
}

fn eval_src(env: &Env, src: &str) -> Result<Value> {
    env.eval(&parse_expression(src)?)
}

pub fn star(setup: &str, a: &str, b: &str, opts: &Options) -> Result<Output> {
    let s = setup_of(setup, opts)?;
    let env = s.env();
    let (ea, eb) = (parse_expression(a)?, parse_expression(b)?);
    let v = env.eval(&twistfold_star(ea.clone(), eb.clone()))?.truncate(s.order);
    let rows = vec![(format!("star({}, {})", print(&ea), print(&eb)), v.to_string())];
    Ok(Output { text: values(&s.name, &rows, opts.format), ok: true })
}

fn twistfold_star(a: super::ast::Expr, b: super::ast::Expr) -> super::ast::Expr {
    super::ast::Expr::call(super::ast::Func::Star, vec![a, b])
}

pub fn project(setup: &str, expr: &str, opts: &Options) -> Result<Output> {
    let s = setup_of(setup, opts)?;
    let v = eval_src(s.env(), expr)?;
    let m = &s.family;
    let (t, n) = match &v {
        Value::Form(w) => (Value::Form(m.project_form(w, Part::Tangent)?), Value::Form(m.project_form(w, Part::Normal)?)),
        other => {
            let x = other.to_vector()?;
            (Value::Vector(m.project_vector(&x, Part::Tangent)?), Value::Vector(m.project_vector(&x, Part::Normal)?))
        }
    };
    let rows = vec![("tangent".to_string(), t.reduce(m)?.to_string()), ("normal".to_string(), n.reduce(m)?.to_string())];
    Ok(Output { text: values(&s.name, &rows, opts.format), ok: true })
}

pub fn curvature(setup: &str, opts: &Options) -> Result<Output> {
    let s = setup_of(setup, opts)?;
    let m = &s.family;
    let mut rows = Vec::new();
    let frame = if s.frame.is_empty() { s.tangent_fields()? } else { s.frame.clone() };
    for (a, x) in frame.iter().enumerate() {
        for (b, y) in frame.iter().enumerate().skip(a) {
            rows.push((format!("II(e{}, e{})", a + 1, b + 1), rg::second_form(m, x, y)?.to_string()));
        }
    }
    if frame.len() == 2 {
        match rg::principal_curvatures(m, &frame) {
            Ok(p) => {
                for (k, v) in p.kappa.iter().enumerate() {
                    rows.push((format!("kappa{}", k + 1), v.to_string()));
                }
                rows.push(("gauss".into(), p.gauss.to_string()));
                rows.push(("mean".into(), p.mean.to_string()));
            }
            Err(e) => rows.push(("principal".into(), format!("unavailable: {}", e))),
        }
    }
    rows.push(("ricci".into(), rg::ricci_scalar(m, RicciConvention::SecondSlot)?.to_string()));
    let twisted = s.connection(s.order).and_then(|c| c.ricci_scalar(RicciConvention::SecondSlot));
    rows.push(("ricci_twisted".into(), twisted.map(|p| p.truncate(s.order).to_string()).unwrap_or_else(|e| format!("unavailable: {}", e))));
    Ok(Output { text: values(&s.name, &rows, opts.format), ok: true })
}

/// Reads lines from `input`: `let NAME = EXPR` binds, anything else is
/// evaluated and printed. Errors are reported and the loop continues.
pub fn repl(setup: &str, opts: &Options, input: impl BufRead, mut out: impl std::io::Write) -> Result<bool> {
    let s = setup_of(setup, opts)?;
    let mut env = s.env().clone();
    let mut ok = true;
    let io = |e: std::io::Error| Error::Scenario(e.to_string());
    for line in input.lines() {
        let line = line.map_err(io)?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t == "quit" || t == "exit" {
            break;
        }
        let result = match t.strip_prefix("let ").and_then(|r| r.split_once('=')) {
            Some((name, rhs)) => eval_src(&env, rhs.trim()).and_then(|v| {
                let v = v.truncate(s.order);
                env.bind(name.trim(), v.clone()).map(|_| v)
            }),
            None => eval_src(&env, t).map(|v| v.truncate(s.order)),
        };
        match (result, opts.format) {
            (Ok(v), Format::Human) => writeln!(out, "{}", v).map_err(io)?,
            (Ok(v), Format::Structured) => writeln!(out, "value {}", v.to_string().replace(' ', "")).map_err(io)?,
            (Err(e), _) => {
                ok = false;
                writeln!(out, "error: {}", e).map_err(io)?
            }
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OPTS: Options = Options { order: Some(2), seed: None, format: Format::Structured };

    #[test]
    fn star_verb_prints_in_the_grammar() {
        let o = star("cylinder", "x3", "x1", &OPTS).unwrap();
        assert_eq!(o.text, "value star(x3,x1) x1*x3+i*nu*x2\n");
    }

    #[test]
    fn projection_splits_d1() {
        let o = project("cylinder", "d1", &Options { format: Format::Human, ..OPTS }).unwrap();
        assert!(o.text.contains("normal = "), "{}", o.text);
    }

    #[test]
    fn repl_binds_and_recovers() {
        let input = "let a = x1 + x2\nstar(a, x3)\nstar(x3\nact(L12, a)\n";
        let mut buf = Vec::new();
        let ok = repl("cylinder", &Options { format: Format::Human, ..OPTS }, input.as_bytes(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(!ok);
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("error:"), "{}", text);
        assert_eq!(lines[3], "x1 - x2");
    }

    #[test]
    fn check_twist_passes_on_shipped_setups() {
        for s in ["cylinder", "hyperboloid"] {
            assert!(check_twist(s, 2, &OPTS).unwrap().ok, "{s}");
        }
    }
}
