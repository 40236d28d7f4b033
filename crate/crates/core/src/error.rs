use thiserror::Error;

/// Errors raised by the analyses in this crate.
///
/// Variants split into two classes: input problems (malformed documents,
/// invalid tables) and domain refusals (the input parses but lies outside
/// the class an operation handles). [`Error::is_domain`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution is not of constant length")]
    NotConstantLength,
    #[error("no power up to {0} of the first column fixes a letter")]
    NoFixedLetter(usize),
    #[error("column rank is 1; only column rank at least 2 is handled")]
    RankOne,
    #[error("idempotent has rank {rank} but the semigroup has elements of rank {min_rank}")]
    NotMinimalRank { rank: usize, min_rank: usize },
    #[error("no idempotent with the requested image and kernel")]
    NoSuchIdempotent,
    #[error("search space of {needed} exceeds the budget {budget}")]
    TooLarge { needed: u128, budget: u128 },
    #[error("substitution is not in simplified form: {0}")]
    NotSimplified(String),
    #[error("substitution is not quasi-bijective")]
    NotQuasiBijective,
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("substitution is periodic: factor complexity p({n}) = {count} <= {n}")]
    Periodic { n: usize, count: usize },
    #[error("fibre action sends a seed to the non-seed word {0}")]
    SeedNotClosed(String),
    #[error("assignment is not a cocycle: q(theta({0})) != q({0})")]
    InvalidCocycle(String),
    #[error("disagreement region of a proximal candidate does not close within window {0}")]
    WindowExceeded(usize),
    #[error("numbers live in different quadratic fields (sqrt {0} vs sqrt {1})")]
    FieldMismatch(i64, i64),
    #[error("generic cut value has no exact representation; words cannot be generated")]
    GenericCut,
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// `true` for refusals on well-formed input, `false` for malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::InvalidInput(_) | Error::InvalidGroup(_)
        )
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotConstantLength => "NotConstantLength",
            Error::NoFixedLetter(_) => "NoFixedLetter",
            Error::RankOne => "RankOne",
            Error::NotMinimalRank { .. } => "NotMinimalRank",
            Error::NoSuchIdempotent => "NoSuchIdempotent",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotSimplified(_) => "NotSimplified",
            Error::NotQuasiBijective => "NotQuasiBijective",
            Error::NotPrimitive => "NotPrimitive",
            Error::Periodic { .. } => "Periodic",
            Error::SeedNotClosed(_) => "SeedNotClosed",
            Error::InvalidCocycle(_) => "InvalidCocycle",
            Error::WindowExceeded(_) => "WindowExceeded",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::GenericCut => "GenericCut",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
