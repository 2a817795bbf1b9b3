use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "human" => Ok(Format::Human),
            "structured" => Ok(Format::Structured),
            _ => Err(format!("unknown format `{}` (human|structured)", s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Exact residual in the expression grammar; `0` on success.
    pub residual: String,
    /// Highest power of ν retained.
    pub order: usize,
    pub note: Option<String>,
    pub reference: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn counts(&self) -> (usize, usize) {
        let p = self.checks.iter().filter(|c| c.passed).count();
        (p, self.checks.len() - p)
    }
}

/// Whitespace-free residual so each record splits on spaces.
fn compact(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    let mut out = String::new();
    let (p, f) = r.counts();
    match format {
        Format::Structured => {
            let _ = writeln!(out, "scenario {}", r.scenario);
            for c in &r.checks {
                let _ = writeln!(out, "check {} {} {}", c.name, status(c.passed), compact(&c.residual));
                let _ = writeln!(out, "order {} {}", c.name, c.order);
            }
            let _ = writeln!(out, "summary {} {}", p, f);
        }
        Format::Human => {
            let _ = writeln!(out, "scenario {}", r.scenario);
            let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &r.checks {
                let _ = writeln!(out, "  {} {:<width$}  residual {}  (through nu^{})", status(c.passed), c.name, c.residual, c.order);
                if let Some(n) = &c.note {
                    let _ = writeln!(out, "       {}", n);
                }
                if let Some(rf) = &c.reference {
                    let _ = writeln!(out, "       ref: {}", rf);
                }
            }
            let _ = writeln!(out, "{} passed, {} failed", p, f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let ok = CheckResult { name: "a".into(), passed: true, residual: "0".into(), order: 4, note: None, reference: Some("x".into()) };
        let bad = CheckResult { name: "b".into(), passed: false, residual: "2*i*nu*x1 - x2".into(), order: 3, note: None, reference: None };
        Report { scenario: "demo".into(), checks: vec![ok, bad] }
    }

    #[test]
    fn structured_records() {
        let s = emit_report(&sample(), Format::Structured);
        assert_eq!(s, "scenario demo\ncheck a pass 0\norder a 4\ncheck b fail 2*i*nu*x1-x2\norder b 3\nsummary 1 1\n");
    }

    #[test]
    fn human_summary() {
        let s = emit_report(&sample(), Format::Human);
        assert!(s.ends_with("1 passed, 1 failed\n"));
        assert!(s.contains("residual 2*i*nu*x1 - x2"));
    }
}
