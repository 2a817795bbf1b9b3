//! Precedence, loosest first: `+ -`, `* /`, unary `-`, `^`.

use super::ast::{BinOp, Expr, ExprKind, Func, Span};
use super::lexer::{parse_error, tokenize, Tok, Token};
use twistfold::error::{Error, ParseErrorKind};

pub fn parse_expression(src: &str) -> Result<Expr, Error> {
    parse_expression_at(src, 1, 1)
}

/// Parses with positions offset so that `src` starts at `line:col`.
pub fn parse_expression_at(src: &str, line: usize, col: usize) -> Result<Expr, Error> {
    let toks = tokenize(src, line, col)?;
    let mut p = Parser { toks, pos: 0, open: Vec::new() };
    let e = p.expr()?;
    let t = p.peek().clone();
    match t.tok {
        Tok::Eof => Ok(e),
        Tok::RParen | Tok::RBrack => Err(parse_error(ParseErrorKind::UnbalancedDelimiter, t.span, format!("unmatched {}", t.tok.describe()))),
        _ => Err(parse_error(ParseErrorKind::Syntax, t.span, format!("unexpected {} after expression", t.tok.describe()))),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Open delimiters with their positions, innermost last.
    open: Vec<(Tok, Span)>,
}

fn join(a: Span, b: Span) -> Span {
    Span { end: b.end, ..a }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }
    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.mul()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.mul()?;
            let span = join(lhs.span, rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn mul(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            let span = join(lhs.span, rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.peek().tok == Tok::Minus {
            let m = self.bump();
            let a = self.unary()?;
            let span = join(m.span, a.span);
            return Ok(Expr::new(ExprKind::Neg(Box::new(a)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let Tok::Int(n) = &t.tok else {
            return Err(self.unexpected(&t, "an integer exponent"));
        };
        let k: i64 = n.try_into().map_err(|_| parse_error(ParseErrorKind::Syntax, t.span, "exponent too large"))?;
        let k = if neg { -k } else { k };
        let span = join(base.span, t.span);
        Ok(Expr::new(ExprKind::Pow(Box::new(base), k), span))
    }

    fn primary(&mut self) -> Result<Expr, Error> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(Expr::new(ExprKind::Int(n.clone()), t.span)),
            Tok::Ident(s) => match Func::from_name(s) {
                Some(f) => self.call(f, t.span),
                None => Ok(Expr::new(ExprKind::Name(s.clone()), t.span)),
            },
            Tok::LParen => {
                self.open.push((Tok::LParen, t.span));
                let e = self.expr()?;
                let close = self.expect_close(Tok::RParen)?;
                self.open.pop();
                // parentheses are not kept in the tree
                Ok(Expr { span: join(t.span, close), ..e })
            }
            _ => Err(self.unexpected(&t, "an expression")),
        }
    }

    fn call(&mut self, f: Func, name: Span) -> Result<Expr, Error> {
        let (open, close) = match f {
            Func::Bracket => (Tok::LBrack, Tok::RBrack),
            _ => (Tok::LParen, Tok::RParen),
        };
        let t = self.bump();
        if t.tok != open {
            let (o, _) = f.delimiters();
            return Err(self.unexpected(&t, &format!("`{}` after `{}`", o, f.name())));
        }
        self.open.push((open, t.span));
        let mut args = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        let end = self.expect_close(close)?;
        self.open.pop();
        if args.len() != f.arity() {
            return Err(parse_error(
                ParseErrorKind::Arity,
                name,
                format!("`{}` takes {} argument{}, found {}", f.name(), f.arity(), if f.arity() == 1 { "" } else { "s" }, args.len()),
            ));
        }
        Ok(Expr::new(ExprKind::Call(f, args), join(name, end)))
    }

    fn expect_close(&mut self, close: Tok) -> Result<Span, Error> {
        let t = self.peek().clone();
        if t.tok == close {
            self.bump();
            return Ok(t.span);
        }
        match t.tok {
            Tok::Eof => {
                let (o, at) = self.open.last().cloned().expect("inside a delimiter");
                Err(parse_error(ParseErrorKind::UnbalancedDelimiter, t.span, format!("{} opened at {}:{} is never closed", o.describe(), at.line, at.col)))
            }
            Tok::RParen | Tok::RBrack => Err(parse_error(
                ParseErrorKind::UnbalancedDelimiter,
                t.span,
                format!("{} does not match {}", t.tok.describe(), self.open.last().map(|o| o.0.describe()).unwrap_or_default()),
            )),
            _ => Err(self.unexpected(&t, &format!("`,` or {}", close.describe()))),
        }
    }

    fn unexpected(&self, t: &Token, wanted: &str) -> Error {
        match t.tok {
            Tok::Eof if !self.open.is_empty() => {
                let (o, at) = self.open.last().cloned().expect("nonempty");
                parse_error(ParseErrorKind::UnbalancedDelimiter, t.span, format!("{} opened at {}:{} is never closed", o.describe(), at.line, at.col))
            }
            Tok::RParen | Tok::RBrack if self.open.is_empty() => {
                parse_error(ParseErrorKind::UnbalancedDelimiter, t.span, format!("unmatched {}", t.tok.describe()))
            }
            _ => parse_error(ParseErrorKind::Syntax, t.span, format!("expected {}, found {}", wanted, t.tok.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind_at(src: &str) -> (ParseErrorKind, usize) {
        match parse_expression(src).unwrap_err() {
            Error::Parse { kind, col, .. } => (kind, col),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn precedence() {
        let e = parse_expression("-x1^2*x2 + 3").unwrap();
        let want = Expr::binary(BinOp::Add, Expr::binary(BinOp::Mul, Expr::neg(Expr::pow(Expr::name("x1"), 2)), Expr::name("x2")), Expr::int(3));
        assert_eq!(e, want);
    }

    #[test]
    fn left_associative() {
        let e = parse_expression("a - b - c").unwrap();
        let want = Expr::binary(BinOp::Sub, Expr::binary(BinOp::Sub, Expr::name("a"), Expr::name("b")), Expr::name("c"));
        assert_eq!(e, want);
        let e = parse_expression("a/b*c").unwrap();
        let want = Expr::binary(BinOp::Mul, Expr::binary(BinOp::Div, Expr::name("a"), Expr::name("b")), Expr::name("c"));
        assert_eq!(e, want);
    }

    #[test]
    fn calls_and_negative_exponent() {
        let e = parse_expression("bracket[L12, d3] + star(x1, R^-1)").unwrap();
        let want = Expr::binary(
            BinOp::Add,
            Expr::call(Func::Bracket, vec![Expr::name("L12"), Expr::name("d3")]),
            Expr::call(Func::Star, vec![Expr::name("x1"), Expr::pow(Expr::name("R"), -1)]),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn unclosed_call_reports_end_column() {
        assert_eq!(kind_at("star(x3, x1"), (ParseErrorKind::UnbalancedDelimiter, 12));
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind_at("x1 + )"), (ParseErrorKind::UnbalancedDelimiter, 6));
        assert_eq!(kind_at("(x1]"), (ParseErrorKind::UnbalancedDelimiter, 4));
        assert_eq!(kind_at("x1)"), (ParseErrorKind::UnbalancedDelimiter, 3));
        assert_eq!(kind_at("star(x1)"), (ParseErrorKind::Arity, 1));
        assert_eq!(kind_at("d(x1, x2)"), (ParseErrorKind::Arity, 1));
        assert_eq!(kind_at("x1 $ x2"), (ParseErrorKind::Lexical, 4));
        assert_eq!(kind_at("x1 x2"), (ParseErrorKind::Syntax, 4));
        assert_eq!(kind_at("star[x1, x2]"), (ParseErrorKind::Syntax, 5));
        assert_eq!(kind_at("x^y"), (ParseErrorKind::Syntax, 3));
    }

    #[test]
    fn spans_cover_source() {
        let e = parse_expression("  x1*d2").unwrap();
        assert_eq!((e.span.col, e.span.start, e.span.end), (3, 2, 7));
        let e = parse_expression_at("x1 +\n (x2", 4, 10).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, col: 5, .. }));
    }
}
