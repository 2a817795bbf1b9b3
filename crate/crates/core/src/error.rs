use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate-system mismatch: {0} vs {1}")]
    CoordinateMismatch(String, String),
    #[error("substitution matrix is not invertible")]
    SingularSubstitution,
    #[error("reduction incomplete: {0}")]
    ReductionIncomplete(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree overflow: {0} exceeds dimension {1}")]
    DegreeOverflow(usize, usize),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("bracket precondition violated: {0}")]
    BracketPrecondition(String),
    #[error("generators do not close under the bracket: {0}")]
    NotClosed(String),
    #[error("missing star table on generator set")]
    MissingStarTable,
    #[error("level-set polynomial is constant")]
    ConstantLevelSet,
    #[error("Jacobian rank deficient at all sampled points")]
    RankDeficient,
    #[error("singular: {0}")]
    Singular(String),
    #[error("twist is not Killing-based: {0}")]
    NonKilling(String),
    #[error("not tangent: {0}")]
    NotTangent(String),
    #[error("unsupported surd: {0}")]
    UnsupportedSurd(String),
    #[error("inputs neither commute nor anticommute")]
    NotBraidable,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("{line}:{col}: {kind}: {msg}")]
    Parse { line: usize, col: usize, kind: ParseErrorKind, msg: String },
    #[error("scenario: {0}")]
    Scenario(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    UnbalancedDelimiter,
    Arity,
    Syntax,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::UnbalancedDelimiter => "unbalanced delimiter",
            ParseErrorKind::Arity => "arity mismatch",
            ParseErrorKind::Syntax => "syntax error",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
