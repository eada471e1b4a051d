use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("generation {generation} gives 3^{generation} sites, which overflows the index type")]
    SizeOverflow { generation: u32 },

    #[error("a two-scatter layout needs generation >= 1")]
    NoScatterSites,

    #[error("layout has no type-1 coin")]
    NoType1Coin,

    #[error("self-similarity check needs a Cantor layout with generation >= 1")]
    NotCantor,

    #[error("position {x} lies outside [-{half_width}, {half_width}]")]
    PositionOutOfRange { x: i64, half_width: usize },

    #[error("coin angle {0} is not finite")]
    NonFiniteAngle(f64),

    #[error("step to t={next} would let amplitude reach the chain edge (L={half_width})")]
    BoundaryViolation { next: usize, half_width: usize },

    #[error("state has half-width {state} but the coin field has half-width {coins}")]
    HalfWidthMismatch { state: usize, coins: usize },

    #[error("amplitude arrays have lengths {right} and {left}, expected {expected}")]
    AmplitudeLength { right: usize, left: usize, expected: usize },

    #[error("no step to undo at t=0")]
    NothingToUndo,

    #[error("reduced coin density eigenvalue {0} lies outside [0, 1]")]
    EigenvalueOutOfRange(f64),

    #[error("norm drifted to {norm} at t={t}")]
    NormDrift { t: usize, norm: f64 },

    #[error("closed-form entropy {closed} and eigenvalue entropy {oracle} disagree at t={t}")]
    EntropyMismatch { t: usize, closed: f64, oracle: f64 },

    #[error("cos(theta2) = {0} is not positive, the critical-time prediction is undefined")]
    UndefinedPrediction(f64),

    #[error("the two series are not sampled on the same time grid")]
    GridMismatch,

    #[error("series ends at t={last}, analysis needs data up to t={needed}")]
    InsufficientData { last: usize, needed: usize },

    #[error("invalid configuration: {0}")]
    Validation(ValidationErrors),
}

impl Error {
    /// True for failures of a numerical invariant during a run (norm drift,
    /// entropy route disagreement, unphysical eigenvalues).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NormDrift { .. } | Error::EntropyMismatch { .. } | Error::EigenvalueOutOfRange(_))
    }
}

/// Every problem found while validating an experiment configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationErrors(pub Vec<String>);

impl ValidationErrors {
    pub fn push(&mut self, msg: impl Into<String>) {
        self.0.push(msg.into());
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, msg) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(msg)?;
        }
        Ok(())
    }
}
