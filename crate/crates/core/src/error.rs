use thiserror::Error;

use crate::rootdata::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} is out of range for type {family}")]
    RankOutOfRange { family: Family, rank: usize },

    #[error("simple root index {index} is out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} does not lie in the weight lattice")]
    NotInLattice(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("tensor degree must be at least 1")]
    ZeroDegree,

    #[error("carrier dimension {dim} exceeds the configured cap {cap}")]
    CarrierTooLarge { dim: usize, cap: usize },

    #[error("eigenvalue {value} of H_{index} escapes [-{r}, {r}]")]
    SpectrumOutOfRange {
        index: usize,
        value: String,
        r: usize,
    },

    #[error("operator H_{0} is not diagonal in the standard basis")]
    NonDiagonalCartan(usize),

    #[error("deleted factor {k} lies outside [-{r}, {r}]")]
    FactorOutOfRange { k: i64, r: usize },

    #[error("representation has type {found}, expected {expected}")]
    TypeMismatch { expected: String, found: String },

    #[error("idempotent family does not belong to this representation: {0}")]
    FamilyMismatch(String),

    #[error("interpolation formula and eigenspace projector disagree at weight {0}")]
    IdempotentMismatch(String),

    #[error("character subtraction drove the multiplicity of {0} negative")]
    NegativeMultiplicity(String),

    #[error("Freudenthal recursion produced a non-integral multiplicity at {0}")]
    NonIntegralMultiplicity(String),

    #[error("appendix rules and character oracle disagree for {lie_type}, r = {r}: {detail}")]
    Pi0Disagreement {
        lie_type: String,
        r: usize,
        detail: String,
    },

    #[error("crystal exceeds the element cap {0}")]
    CrystalTooLarge(usize),

    #[error("string extraction failed: {0}")]
    StringExtraction(String),

    #[error("saturation test needs dominant weights, got {0}")]
    NonDominantMember(String),

    #[error("parse error: {0}")]
    Parse(String),
}
