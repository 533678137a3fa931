use thiserror::Error;

/// Whether a failed operation indicates bad input or a genuine mathematical
/// contradiction (a witness the theory says cannot happen on valid input).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Caller supplied inconsistent or out-of-contract data.
    Input,
    /// A computation contradicted a structural guarantee.
    Math,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("tensors have mixed degrees: {0} vs {1}")]
    MixedDegree(usize, usize),
    #[error("tensors belong to different scalar fields")]
    MixedField,
    #[error("imaginary coefficient supplied over the rational field")]
    FieldLacksI,
    #[error("word count {words} in degree {degree} exceeds resource cap {cap}")]
    ResourceBound {
        degree: usize,
        words: usize,
        cap: usize,
    },
    #[error("coordinate vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is zero where a nonzero element is required")]
    ZeroElement,
    #[error("element of degree {0} is not central")]
    NotCentral(usize),
    #[error(
        "candidate map violates the deformation condition on {violations} overlap basis vectors"
    )]
    NotClifford { violations: usize },
    #[error(
        "deformation dimension {got} at truncation bound {bound} differs from expected {expected}"
    )]
    PbwFailure {
        expected: usize,
        got: usize,
        bound: usize,
    },
    #[error("top graded component has dimension {0}, expected 1")]
    NotFrobeniusTop(usize),
    #[error("bilinear form is degenerate (rank {rank} of {dim})")]
    NondegeneracyFailure { rank: usize, dim: usize },
    #[error("radical is not homogeneous for the parity grading")]
    InhomogeneousRadical,
    #[error("multiplication by the central element is not bijective at degree {degree}")]
    NotStabilized { degree: usize },
    #[error("central element fails regularity at degree {degree}")]
    NotRegular { degree: usize },
    #[error("dual class of the lifted relation is not central")]
    WNotCentral,
    #[error("could not generate a fresh generator name")]
    NameClash,
    #[error("generator image does not kill a defining relation (relation index {0})")]
    RelationNotKilled(usize),
    #[error("algebra axiom violated: {0}")]
    StructureViolation(&'static str),
    #[error("element lies outside the relation space")]
    NotInRelationSpan,
    #[error("graded components never vanish below the resource cap (last degree tried {0})")]
    NoTopDegree(usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relation is not homogeneous of degree 2")]
    RelationDegree,
}

impl Error {
    /// Stable machine-readable code, used verbatim in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedDegree(..) => "MixedDegree",
            Error::MixedField => "MixedField",
            Error::FieldLacksI => "FieldLacksI",
            Error::ResourceBound { .. } => "ResourceBound",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroElement => "ZeroElement",
            Error::NotCentral(..) => "NotCentral",
            Error::NotClifford { .. } => "NotClifford",
            Error::PbwFailure { .. } => "PBWFailure",
            Error::NotFrobeniusTop(..) => "NotFrobeniusTop",
            Error::NondegeneracyFailure { .. } => "NondegeneracyFailure",
            Error::InhomogeneousRadical => "InhomogeneousRadical",
            Error::NotStabilized { .. } => "NotStabilized",
            Error::NotRegular { .. } => "NotRegular",
            Error::WNotCentral => "WNotCentral",
            Error::NameClash => "NameClash",
            Error::RelationNotKilled(..) => "RelationNotKilled",
            Error::StructureViolation(..) => "StructureViolation",
            Error::NotInRelationSpan => "NotInRelationSpan",
            Error::NoTopDegree(..) => "NoTopDegree",
            Error::DuplicateGenerator(..) => "DuplicateGenerator",
            Error::RelationDegree => "DegreeError",
        }
    }

    /// Input errors exit a CLI run with code 2, mathematical failures with 1.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::PbwFailure { .. }
            | Error::NondegeneracyFailure { .. }
            | Error::InhomogeneousRadical
            | Error::WNotCentral
            | Error::RelationNotKilled(..)
            | Error::StructureViolation(..)
            | Error::NotStabilized { .. }
            | Error::NotRegular { .. } => ErrorClass::Math,
            _ => ErrorClass::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
