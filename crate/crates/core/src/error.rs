use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a restricted growth word: {0}")]
    InvalidRgs(String),
    #[error("blocks do not partition [n]: {0}")]
    InvalidBlockCover(String),
    #[error("cannot parse literal {0:?}")]
    Parse(String),
    #[error("partition {0} has no ascent")]
    NoAscent(String),
    #[error("invalid template {0:?}: {1}")]
    InvalidTemplate(String, String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("composition {b} does not dominate {a}")]
    NotDominating { a: String, b: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{0} contains 122")]
    Not122Avoiding(String),
    #[error("divisor has zero constant term")]
    DivisionByZeroConstantTerm,
    #[error("constant term is not the square of a rational")]
    SqrtNonsquareConstant,
    #[error("inner series of a composition has nonzero constant term")]
    ComposeNonzeroConstant,
    #[error("series known to too low an order: {0}")]
    InsufficientPrecision(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("recurrence {0}: wrong inputs")]
    ArityMismatch(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("pattern {0} is crossing")]
    CrossingPattern(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("fixture: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
