//! Expression grammar, scenario files and report emission.

pub mod ast;
pub mod commands;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod report;
pub mod runner;
pub mod scenario;

pub use ast::{BinOp, Expr, ExprKind, Func, Span};
pub use eval::{Env, Value};
pub use parser::{parse_expression, parse_expression_at};
pub use printer::print;
pub use report::{emit_report, CheckResult, Format, Report};
pub use runner::{run_scenario, run_scenario_text, Setup};
pub use scenario::{parse_scenario, Scenario};
