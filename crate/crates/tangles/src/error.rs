use crate::universe::SepId;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("separation id {0} out of range")]
    UnknownId(SepId),
    #[error("separation {0} is not a member of the system")]
    NotAMember(SepId),
    #[error("operands belong to different universes or systems")]
    Mismatch,
    #[error("system is not submodular: neither join nor meet of {0} and {1} is a member")]
    NotSubmodular(SepId, SepId),
    #[error("orientation {0} is not a profile")]
    NotAProfile(usize),
    #[error("orientation {0} is not consistent")]
    NotConsistent(usize),
    #[error("orientations {0} and {1} are equal")]
    DuplicateOrientations(usize, usize),
    #[error("set does not distinguish the given orientations")]
    DoesNotDistinguish,
    #[error("separations {0} and {1} are not nested")]
    NotNested(SepId, SepId),
    #[error("generating set is not closed downwards: contains {0} but not {1} below it")]
    NotDownClosed(SepId, SepId),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("shifted set is not a star inside the system (emulation precondition violated)")]
    ShiftNotStar,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
