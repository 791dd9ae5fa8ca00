use thiserror::Error;

/// Invalid run parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("p = {0} is not a prime")]
    NotPrime(u32),
    #[error("n must be at least {min}, got {n}")]
    TooSmall { n: u32, min: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("negative highest weight {0}")]
    NegativeWeight(i64),
    #[error("weight {weight} outside the allowed range [0, {max}]")]
    OutOfRange { weight: i64, max: i64 },
    #[error("character is not a nonnegative combination of tilting characters: residual {residual} at weight {weight}")]
    NotTilting { weight: i64, residual: String },
    #[error("character mixes weight parities (weights {0} and {1})")]
    MixedParity(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    #[error("weight {weight} is outside the fundamental alcove [0, {max}]")]
    OutOfAlcove { weight: u32, max: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("removing {needed} trivial summands in degree {degree} but only {available} are available")]
    SubtractionUnderflow {
        degree: usize,
        needed: String,
        available: String,
    },
    #[error("summand {summand} lies outside its predicted range")]
    RangeViolation { summand: String },
    #[error("n = {0} is too small, the decomposition needs n >= 4")]
    NTooSmall(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("oracle instance needs about {attempted} bytes, budget is {budget}")]
    BudgetExceeded { attempted: u128, budget: u128 },
    #[error("Hilbert series are not defined for {0}-level summand lists")]
    UnsupportedLevel(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcrError {
    #[error("Hom series ({row}, {col}) has negative coefficient in degree {degree}")]
    NegativeEntry {
        row: String,
        col: String,
        degree: usize,
    },
    #[error("constant-term matrix is singular")]
    SingularConstantTerm,
    #[error("n = {0} is too small for the Hom matrix (need n >= 4)")]
    NTooSmall(u32),
}

/// Crate-level error. The variant names the module the failure originated in.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("params::{0}")]
    Params(#[from] ParamsError),
    #[error("char_calculus::{0}")]
    Char(#[from] CharError),
    #[error("fusion_ring::{0}")]
    Fusion(#[from] FusionError),
    #[error("frobenius_decomposition::{0}")]
    Decomp(#[from] DecompError),
    #[error("hilbert_verification::{0}")]
    Hilbert(#[from] HilbertError),
    #[error("ncr_analysis::{0}")]
    Ncr(#[from] NcrError),
}

impl Error {
    /// Short variant name, e.g. `NotTilting`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Params(ParamsError::NotPrime(_)) => "NotPrime",
            Error::Params(ParamsError::TooSmall { .. }) => "TooSmall",
            Error::Char(e) | Error::Decomp(DecompError::Char(e)) => char_kind(e),
            Error::Hilbert(HilbertError::Decomp(DecompError::Char(e))) => char_kind(e),
            Error::Fusion(_) => "OutOfAlcove",
            Error::Decomp(e) | Error::Hilbert(HilbertError::Decomp(e)) => match e {
                DecompError::SubtractionUnderflow { .. } => "SubtractionUnderflow",
                DecompError::RangeViolation { .. } => "RangeViolation",
                DecompError::NTooSmall(_) => "NTooSmall",
                DecompError::Char(_) => unreachable!(),
            },
            Error::Hilbert(HilbertError::BudgetExceeded { .. }) => "BudgetExceeded",
            Error::Hilbert(HilbertError::UnsupportedLevel(_)) => "UnsupportedLevel",
            Error::Ncr(NcrError::NegativeEntry { .. }) => "NegativeEntry",
            Error::Ncr(NcrError::SingularConstantTerm) => "SingularConstantTerm",
            Error::Ncr(NcrError::NTooSmall(_)) => "NTooSmall",
        }
    }
}

fn char_kind(e: &CharError) -> &'static str {
    match e {
        CharError::NegativeWeight(_) => "NegativeWeight",
        CharError::OutOfRange { .. } => "OutOfRange",
        CharError::NotTilting { .. } => "NotTilting",
        CharError::MixedParity(..) => "MixedParity",
    }
}
