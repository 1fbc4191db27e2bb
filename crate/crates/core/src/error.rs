use thiserror::Error;

use crate::scalar::SingularityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("element lies in the null cone (vanishing components {:?})", .0.vanishing_components)]
    SingularElement(SingularityReport),

    /// A hat-component of the operator is rank-deficient or too badly
    /// conditioned to invert. `components` lists the offending indices (1 or 2).
    #[error("operator is singular in hat-component(s) {components:?} (condition numbers {condition:?})")]
    SingularOperator {
        components: Vec<u8>,
        condition: [f64; 2],
    },

    #[error("collection is empty")]
    EmptyCollection,

    #[error("functional is inconsistent on the generators (residual {residual:e})")]
    InconsistentFunctional { residual: f64 },

    #[error("a component distance to the submodule is zero (d1 = {d1:e}, d2 = {d2:e})")]
    ComponentInNullDistance { d1: f64, d2: f64 },

    #[error("vector lies in the null cone (component norms {norms:?})")]
    NullConeVector { norms: [f64; 2] },

    #[error("unknown check id `{0}`")]
    UnknownCheckId(String),

    #[error("non-finite value")]
    NonFinite,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty module: dimension must be at least 1")]
    EmptyDimension,
}

impl Error {
    /// Stable machine-readable tag used in structured CLI errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularElement(_) => "SingularElement",
            Error::SingularOperator { .. } => "SingularOperator",
            Error::EmptyCollection => "EmptyCollection",
            Error::InconsistentFunctional { .. } => "InconsistentFunctional",
            Error::ComponentInNullDistance { .. } => "ComponentInNullDistance",
            Error::NullConeVector { .. } => "NullConeVector",
            Error::UnknownCheckId(_) => "UnknownCheckId",
            Error::NonFinite => "NonFinite",
            Error::Parse(_) => "Parse",
            Error::EmptyDimension => "EmptyDimension",
        }
    }
}
