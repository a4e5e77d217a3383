use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A reflection or shift exponent does not dominate a term exponent.
    #[error("shift exponent does not dominate term exponent ({m1}, {m2})")]
    Domination { m1: String, m2: String },

    /// A negative power of a coordinate met a zero exponent.
    #[error("multiplier divides by a zero exponent at ({m1}, {m2})")]
    AntiDerivative { m1: String, m2: String },

    #[error("empty input")]
    EmptyInput,

    #[error("duplicate exponent ({m1}, {m2}) while building the pair")]
    Collision { m1: String, m2: String },

    #[error("bound chain violated: {0}")]
    ChainViolation(String),

    #[error("base exceeded the configured maximum without passing the conditions")]
    BaseOverflow,

    #[error("enumeration of 2^{n} subsets exceeds the limit 2^{limit}")]
    EnumTooLarge { n: usize, limit: usize },

    #[error("operation requires strong mode")]
    Mode,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domination { .. } => "domination",
            Error::AntiDerivative { .. } => "anti_derivative",
            Error::EmptyInput => "empty_input",
            Error::Collision { .. } => "collision",
            Error::ChainViolation(_) => "chain_violation",
            Error::BaseOverflow => "base_overflow",
            Error::EnumTooLarge { .. } => "enum_too_large",
            Error::Mode => "mode",
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
