use thiserror::Error;

/// Errors surfaced by the toolkit. Resource-limit errors are ordinary
/// values, not panics: a runaway computation must die cleanly with the
/// stage that exhausted its budget.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("budget exceeded in {stage}: {detail}")]
    Budget { stage: &'static str, detail: String },

    #[error("variable sets differ: {0}")]
    ArityMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("modulus {0} is composite; p must be prime")]
    CompositeModulus(u64),

    #[error("prime {0} is outside the supported desk-scale set {{2, 3, 5, 7, 11, 13}}")]
    UnsupportedPrime(u64),

    #[error("point is not on the curve: generator `{generator}` evaluates to {value}")]
    OffCurve { generator: String, value: String },

    #[error("point does not lie on the variety: generator `{generator}` evaluates to {value}")]
    NotOnVariety { generator: String, value: String },

    #[error("coordinate `{coordinate}` = {value} is not v-integral at {place}")]
    NotIntegral {
        coordinate: String,
        value: String,
        place: String,
    },

    #[error("truncation order {target} exceeds jet order {have}")]
    TruncationOrder { have: usize, target: usize },

    #[error("place `{0}` is not a monic irreducible of F_p[t] (or `inf`)")]
    BadPlace(String),

    #[error("translation leaves the affine patch: {0}")]
    ChartEscape(String),

    #[error("invalid scenario field `{field}`: {detail}")]
    Scenario { field: String, detail: String },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
