use super::ast::{BinOp, Expr, ExprKind};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

/// Renders with the minimal parentheses the grammar needs, so that
/// `parse(print(e)) == e`.
pub fn print(e: &Expr) -> String {
    let mut s = String::new();
    write(e, 0, &mut s);
    s
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Int(_) | ExprKind::Name(_) | ExprKind::Call(..) => ATOM,
        ExprKind::Pow(..) => POW,
        ExprKind::Neg(_) => UNARY,
        ExprKind::Binary(BinOp::Mul | BinOp::Div, ..) => MUL,
        ExprKind::Binary(..) => ADD,
    }
}

fn write(e: &Expr, min: u8, out: &mut String) {
    let wrap = prec(e) < min;
    if wrap {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Int(n) => out.push_str(&n.to_string()),
        ExprKind::Name(s) => out.push_str(s),
        ExprKind::Neg(a) => {
            out.push('-');
            write(a, UNARY, out);
        }
        ExprKind::Pow(a, k) => {
            write(a, ATOM, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
        ExprKind::Binary(op, a, b) => {
            let (left, right) = match op {
                BinOp::Add | BinOp::Sub => (ADD, MUL),
                BinOp::Mul | BinOp::Div => (MUL, UNARY),
            };
            write(a, left, out);
            match op {
                BinOp::Add | BinOp::Sub => {
                    out.push(' ');
                    out.push_str(op.symbol());
                    out.push(' ');
                }
                _ => out.push_str(op.symbol()),
            }
            write(b, right, out);
        }
        ExprKind::Call(f, args) => {
            let (o, c) = f.delimiters();
            out.push_str(f.name());
            out.push(o);
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write(a, 0, out);
            }
            out.push(c);
        }
    }
    if wrap {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_expression;
    use super::*;

    #[test]
    fn golden_renderings() {
        for (src, want) in [
            ("-(x1^2)", "-x1^2"),
            ("(-x1)^2", "(-x1)^2"),
            ("a - (b - c)", "a - (b - c)"),
            ("(a - b) - c", "a - b - c"),
            ("a*(b*c)", "a*(b*c)"),
            ("a*-b", "a*-b"),
            ("-(a*b)", "-(a*b)"),
            ("(x^2)^3", "(x^2)^3"),
            ("bracket[ L12 ,d3 ]", "bracket[L12, d3]"),
            ("R^-1*x1", "R^-1*x1"),
        ] {
            assert_eq!(print(&parse_expression(src).unwrap()), want, "{src}");
        }
    }
}
