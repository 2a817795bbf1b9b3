use super::ast::Span;
use num_bigint::BigUint;
use twistfold::error::{Error, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{}`", n),
            Tok::Ident(s) => format!("name `{}`", s),
            Tok::Eof => "end of input".to_string(),
            t => format!("`{}`", t.symbol()),
        }
    }
    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Comma => ",",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn parse_error(kind: ParseErrorKind, span: Span, msg: impl Into<String>) -> Error {
    Error::Parse { line: span.line, col: span.col, kind, msg: msg.into() }
}

/// Splits `src` into tokens. `line`/`col` locate the first character, so
/// expressions embedded in a larger file report file positions.
pub fn tokenize(src: &str, line: usize, col: usize) -> Result<Vec<Token>, Error> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line, col);
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        let here = Span { line, col, start, end: start + c.len_utf8() };
        if c == '\n' {
            it.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            it.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                it.next();
            }
            let text = &src[start..end];
            if let Some(&(_, d)) = it.peek() {
                if d.is_ascii_alphabetic() || d == '_' {
                    let at = Span { col: col + text.len(), ..here };
                    return Err(parse_error(ParseErrorKind::Lexical, at, format!("letter `{}` directly after a number; write `*`", d)));
                }
            }
            let n: BigUint = text.parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), span: Span { end, ..here } });
            col += text.len();
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, d)) = it.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = i + 1;
                it.next();
            }
            let text = &src[start..end];
            out.push(Token { tok: Tok::Ident(text.to_string()), span: Span { end, ..here } });
            col += text.len();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            _ => return Err(parse_error(ParseErrorKind::Lexical, here, format!("unexpected character `{}`", c.escape_default()))),
        };
        it.next();
        out.push(Token { tok, span: here });
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, span: Span { line, col, start: src.len(), end: src.len() } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_count_characters() {
        let t = tokenize("x1 + d2", 1, 1).unwrap();
        let cols: Vec<usize> = t.iter().map(|t| t.span.col).collect();
        assert_eq!(cols, [1, 4, 6, 8]);
    }

    #[test]
    fn rejects_juxtaposed_number_and_name() {
        let e = tokenize("2x", 1, 1).unwrap_err();
        assert!(matches!(e, Error::Parse { col: 2, kind: ParseErrorKind::Lexical, .. }));
    }

    #[test]
    fn non_ascii_is_lexical() {
        let e = tokenize("x1 ⋆ x2", 1, 1).unwrap_err();
        assert!(matches!(e, Error::Parse { col: 4, kind: ParseErrorKind::Lexical, .. }));
    }
}
