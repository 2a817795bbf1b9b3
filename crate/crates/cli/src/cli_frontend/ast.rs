use num_bigint::BigUint;

/// 1-based line and column (in characters) of the first character, plus
/// the byte range in the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

/// Expression node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigUint),
    Name(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Integer exponent; negative powers are allowed on units.
    Pow(Box<Expr>, i64),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Star,
    Bracket,
    Wedge,
    Pair,
    D,
    Act,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Star, Func::Bracket, Func::Wedge, Func::Pair, Func::D, Func::Act];

    pub fn name(self) -> &'static str {
        match self {
            Func::Star => "star",
            Func::Bracket => "bracket",
            Func::Wedge => "wedge",
            Func::Pair => "pair",
            Func::D => "d",
            Func::Act => "act",
        }
    }
    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
    pub fn arity(self) -> usize {
        match self {
            Func::D => 1,
            _ => 2,
        }
    }
    /// `bracket[a, b]` uses square brackets, everything else parentheses.
    pub fn delimiters(self) -> (char, char) {
        match self {
            Func::Bracket => ('[', ']'),
            _ => ('(', ')'),
        }
    }
}

impl PartialEq for Expr {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }
    pub fn int(n: u64) -> Self {
        Expr::new(ExprKind::Int(BigUint::from(n)), Span::default())
    }
    pub fn name(s: &str) -> Self {
        Expr::new(ExprKind::Name(s.to_string()), Span::default())
    }
    pub fn neg(a: Expr) -> Self {
        Expr::new(ExprKind::Neg(Box::new(a)), Span::default())
    }
    pub fn binary(op: BinOp, a: Expr, b: Expr) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(a), Box::new(b)), Span::default())
    }
    pub fn pow(a: Expr, k: i64) -> Self {
        Expr::new(ExprKind::Pow(Box::new(a), k), Span::default())
    }
    pub fn call(f: Func, args: Vec<Expr>) -> Self {
        Expr::new(ExprKind::Call(f, args), Span::default())
    }

    /// Number of nodes, used to bound generated trees.
    pub fn size(&self) -> usize {
        match &self.kind {
            ExprKind::Int(_) | ExprKind::Name(_) => 1,
            ExprKind::Neg(a) | ExprKind::Pow(a, _) => 1 + a.size(),
            ExprKind::Binary(_, a, b) => 1 + a.size() + b.size(),
            ExprKind::Call(_, args) => 1 + args.iter().map(Expr::size).sum::<usize>(),
        }
    }
}
