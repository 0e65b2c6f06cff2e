use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    /// Division by a value that vanishes at the evaluation point.
    #[error("pole: {0}")]
    Pole(String),

    /// Inverting a power series whose constant term is zero.
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// A formal sum or product that cannot be truncated to finitely many terms.
    #[error("not truncatable: {0}")]
    NonTruncatable(String),

    #[error("out of domain: {0}")]
    Domain(String),

    /// A leading minor or subpfaffian vanishes; `index` is 1-based.
    #[error("vanishing pivot at index {index}")]
    Pivot { index: usize },

    #[error("odd dimension {0}")]
    OddDimension(usize),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// Skew-symmetry violated at the 0-based position `(i, j)`.
    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkew { i: usize, j: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid index set: {0}")]
    IndexSet(String),

    #[error("invalid shape or profile: {0}")]
    Shape(String),

    /// A plane partition condition fails at 1-based cell `(row, col)`.
    #[error("condition ({condition}) violated at cell ({row}, {col})")]
    Monotonicity {
        condition: &'static str,
        row: usize,
        col: usize,
    },

    #[error("sampling budget exhausted after {0} attempts")]
    SamplingBudget(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
