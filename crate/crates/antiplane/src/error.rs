use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive modulus: mu_plus = {mu_plus}, mu_minus = {mu_minus}")]
    NonPositiveModulus { mu_plus: f64, mu_minus: f64 },

    #[error("non-positive half-length: {0}")]
    NonPositiveHalfLength(f64),

    #[error("defect on interface (y = 0)")]
    DefectOnInterface,

    #[error("defect crosses interface: |y| = {y_abs} <= reach {reach}")]
    DefectCrossesInterface { y_abs: f64, reach: f64 },

    #[error("zero load force")]
    ZeroForce,

    #[error("non-positive load-tip distance: a = {0}")]
    NonPositiveTipDistance(f64),

    #[error("defect at tip")]
    DefectAtTip,

    #[error("evaluation point coincides with the crack tip or a load point")]
    SingularPoint,

    #[error("point on the crack line; the field is face-dependent there")]
    OnCrackLine,

    #[error("defect {index}: {source}")]
    AtDefect {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("defect {index} too close to the tip at step {step}: d = {d} <= {limit}")]
    OverlapDuringPropagation {
        index: usize,
        step: usize,
        d: f64,
        limit: f64,
    },

    #[error("channel formulas require identical materials (eta = {0})")]
    NonIdenticalMaterials(f64),

    #[error("invalid channel: {0}")]
    InvalidChannel(&'static str),

    #[error("wrong channel arrangement for this formula: {0}")]
    WrongArrangement(&'static str),
}

impl Error {
    /// Wraps an error with the index of the defect it occurred at.
    pub fn at_defect(self, index: usize) -> Error {
        Error::AtDefect {
            index,
            source: Box::new(self),
        }
    }
}
