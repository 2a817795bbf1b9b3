//! Scenario files:
//!
//! ```text
//! twistfold-scenario v1
//! [setup]
//! coords = x1 x2 x3
//! level = 1/2*x1^2 + 1/2*x2^2 - 1/2*R^2
//! gen L12 = -x2*d1 + x1*d2
//! ...
//! [checks]
//! name: op arg; arg, arg; key=value | ref free text
//! ```
//!
//! `#` starts a comment line. Expressions never contain `;`, `|`, `=` or
//! `:`, so these split lines unambiguously.

use super::ast::Expr;
use super::lexer::parse_error;
use super::parser::parse_expression_at;
use twistfold::error::{Error, ParseErrorKind};
use twistfold::Result;

pub const HEADER: &str = "twistfold-scenario v1";

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub setup: Vec<SetupLine>,
    pub checks: Vec<CheckDecl>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetupLine {
    pub line: usize,
    pub key: String,
    /// Second word for `gen NAME` and `let NAME`.
    pub name: Option<String>,
    pub value: String,
    /// Column of the first character of `value`.
    pub value_col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckDecl {
    pub line: usize,
    pub name: String,
    pub op: String,
    /// `;`-separated arguments, each a `,`-separated list.
    pub args: Vec<Vec<Expr>>,
    pub options: Vec<(String, u64)>,
    pub reference: Option<String>,
}

impl CheckDecl {
    pub fn option(&self, key: &str) -> Option<u64> {
        self.options.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

fn scenario_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Scenario(format!("line {}: {}", line, msg.into()))
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(h) if h.is_ascii_alphabetic() || h == '_') && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-')
}

/// Column (1-based, in characters) of byte offset `off` of `line`.
fn col_of(line: &str, off: usize) -> usize {
    line[..off].chars().count() + 1
}

pub fn parse_scenario(src: &str) -> Result<Scenario> {
    let mut lines = src.lines().enumerate().map(|(i, l)| (i + 1, l));
    let first = lines.by_ref().find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match first {
        Some((_, l)) if l.trim() == HEADER => {}
        Some((n, l)) => return Err(scenario_error(n, format!("expected header `{}`, found `{}`", HEADER, l.trim()))),
        None => return Err(scenario_error(1, "empty scenario")),
    }
    #[derive(PartialEq)]
    enum Section {
        None,
        Setup,
        Checks,
    }
    let mut section = Section::None;
    let mut seen_setup = false;
    let mut sc = Scenario { setup: Vec::new(), checks: Vec::new() };
    for (n, raw) in lines {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match t {
            "[setup]" if !seen_setup => {
                section = Section::Setup;
                seen_setup = true;
                continue;
            }
            "[checks]" if section == Section::Setup => {
                section = Section::Checks;
                continue;
            }
            _ if t.starts_with('[') => return Err(scenario_error(n, format!("unexpected section `{}`", t))),
            _ => {}
        }
        match section {
            Section::None => return Err(scenario_error(n, "content before [setup]")),
            Section::Setup => sc.setup.push(setup_line(n, raw)?),
            Section::Checks => sc.checks.push(check_line(n, raw)?),
        }
    }
    if !seen_setup {
        return Err(scenario_error(1, "missing [setup] section"));
    }
    let mut names: Vec<&str> = sc.checks.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Scenario(format!("duplicate check name `{}`", w[0])));
    }
    Ok(sc)
}

fn setup_line(n: usize, raw: &str) -> Result<SetupLine> {
    let eq = raw.find('=').ok_or_else(|| scenario_error(n, "expected `key = value`"))?;
    let lhs: Vec<&str> = raw[..eq].split_whitespace().collect();
    let (key, name) = match lhs.as_slice() {
        [k] => (k.to_string(), None),
        [k @ ("gen" | "let"), v] if is_name(v) => (k.to_string(), Some(v.to_string())),
        _ => return Err(scenario_error(n, format!("malformed setup key `{}`", raw[..eq].trim()))),
    };
    if !is_name(&key) {
        return Err(scenario_error(n, format!("malformed setup key `{}`", key)));
    }
    let rest = &raw[eq + 1..];
    let lead = rest.len() - rest.trim_start().len();
    Ok(SetupLine { line: n, key, name, value: rest.trim().to_string(), value_col: col_of(raw, eq + 1 + lead) })
}

fn check_line(n: usize, raw: &str) -> Result<CheckDecl> {
    let (body, reference) = match raw.find('|') {
        Some(p) => {
            let r = raw[p + 1..].trim();
            let r = r.strip_prefix("ref").map(str::trim).ok_or_else(|| scenario_error(n, "expected `| ref <text>`"))?;
            (&raw[..p], Some(r.to_string()))
        }
        None => (raw, None),
    };
    let colon = body.find(':').ok_or_else(|| scenario_error(n, "expected `name: op args`"))?;
    let name = body[..colon].trim();
    if !is_name(name) {
        return Err(scenario_error(n, format!("malformed check name `{}`", name)));
    }
    let rest = &body[colon + 1..];
    let start = colon + 1 + (rest.len() - rest.trim_start().len());
    let rest = body[start..].trim_end();
    let op_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let op = &rest[..op_len];
    if !is_name(op) {
        return Err(scenario_error(n, format!("malformed operation `{}`", op)));
    }
    let mut decl = CheckDecl { line: n, name: name.to_string(), op: op.to_string(), args: Vec::new(), options: Vec::new(), reference };
    let mut off = start + op_len;
    let arg_text = &body[off..];
    if arg_text.trim().is_empty() {
        return Ok(decl);
    }
    for piece in arg_text.split(';') {
        let here = off;
        off += piece.len() + 1;
        let t = piece.trim();
        if t.is_empty() {
            return Err(scenario_error(n, "empty argument"));
        }
        if let Some((k, v)) = t.split_once('=') {
            let v: u64 = v.trim().parse().map_err(|_| scenario_error(n, format!("option `{}` needs an integer", k.trim())))?;
            decl.options.push((k.trim().to_string(), v));
            continue;
        }
        let mut list = Vec::new();
        for (s, text) in split_top_level(piece) {
            let lead = text.len() - text.trim_start().len();
            if text.trim().is_empty() {
                let at = super::ast::Span { line: n, col: col_of(raw, here + s), ..Default::default() };
                return Err(parse_error(ParseErrorKind::Syntax, at, "empty list element"));
            }
            list.push(parse_expression_at(text.trim(), n, col_of(raw, here + s + lead))?);
        }
        decl.args.push(list);
    }
    Ok(decl)
}

/// Splits at commas outside any delimiter, returning byte offsets.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "# demo\ntwistfold-scenario v1\n[setup]\ncoords = x1 x2\ngen L = -x2*d1 + x1*d2\n[checks]\nrot: equal act(L, x1); -x2 | ref rotation\nlist: principal 0, -R^-1, star(x1, x2); count=5\n";

    #[test]
    fn parses_sections() {
        let s = parse_scenario(SRC).unwrap();
        assert_eq!(s.setup.len(), 2);
        assert_eq!(s.setup[1].name.as_deref(), Some("L"));
        assert_eq!(s.setup[1].value_col, 9);
        assert_eq!(s.checks[0].args.len(), 2);
        assert_eq!(s.checks[0].reference.as_deref(), Some("rotation"));
        assert_eq!(s.checks[1].args[0].len(), 3);
        assert_eq!(s.checks[1].option("count"), Some(5));
    }

    #[test]
    fn expression_errors_carry_file_position() {
        let bad = SRC.replace("act(L, x1)", "act(L, x1");
        match parse_scenario(&bad).unwrap_err() {
            Error::Parse { line, kind, .. } => assert_eq!((line, kind), (7, ParseErrorKind::UnbalancedDelimiter)),
            e => panic!("{e}"),
        }
        let bad = SRC.replace("-x2 |", "-x2 $ |");
        assert!(matches!(parse_scenario(&bad).unwrap_err(), Error::Parse { line: 7, col: 28, .. }));
    }

    #[test]
    fn structural_errors() {
        assert!(parse_scenario("[setup]\n").is_err());
        assert!(parse_scenario("twistfold-scenario v2\n[setup]\n").is_err());
        assert!(parse_scenario(&SRC.replace("[setup]", "[checks]")).is_err());
        assert!(parse_scenario(&SRC.replace("list:", "rot:")).is_err());
        assert!(parse_scenario(&SRC.replace("| ref rotation", "| rotation")).is_err());
    }
}
