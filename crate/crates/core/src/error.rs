use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pretzel parameters: {0}")]
    InvalidParams(String),
    #[error("parameter a_{index} = {value} is even; the Seifert surface construction needs all bands odd")]
    EvenParameter { index: usize, value: i64 },
    #[error("invalid family parameters: {0}")]
    BadFamily(String),
    #[error("odd A-exponent {exponent} survived writhe normalization")]
    MalformedNormalization { exponent: i64 },
    #[error("value is not of the form (-1)^s i^(r-1) (i sqrt3)^d for d <= {cap}")]
    NotLMForm { cap: u32 },
    #[error("norm has a non-real residue")]
    NonRealNorm,
    #[error("diagram has {crossings} crossings, above the state-sum cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("band index {index} is out of range for {bands} bands")]
    BadBand { index: usize, bands: usize },
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("{0} is not a knot")]
    NotAKnot(String),
    #[error("premise failed at step {step}: {reason}")]
    PremiseFailed { step: String, reason: String },
    #[error("terminal diagram failed certification: {0}")]
    CertificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
