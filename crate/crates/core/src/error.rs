use thiserror::Error;

pub type Result<T> = std::result::Result<T, QwError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QwError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("desk bound exceeded: {0}")]
    Bound(String),
    #[error("singular Gram matrix for k={k}, N={n}")]
    SingularGram { k: usize, n: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("spec mismatch: {0}")]
    SpecMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("missing unit class: {0}")]
    MissingUnit(String),
    #[error("boundary map is not injective: {0}")]
    NotInjective(String),
    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),
    #[error("malformed graph: {0}")]
    Graph(String),
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl QwError {
    /// Stable process exit code for the command-line driver.
    pub fn code(&self) -> i32 {
        match self {
            QwError::OutOfRange(_) => 2,
            QwError::Bound(_) => 3,
            QwError::SingularGram { .. } => 4,
            QwError::InvalidSpec(_) | QwError::UnknownGenerator(_) => 5,
            QwError::SpecMismatch(_) => 6,
            QwError::Unsupported(_) => 7,
            QwError::Syntax { .. } => 8,
            QwError::MissingUnit(_) => 9,
            QwError::NotInjective(_) => 10,
            QwError::IllDefined(_) => 11,
            QwError::Graph(_) => 12,
            QwError::NotRational(_) => 13,
            QwError::Io(_) => 14,
        }
    }
}
