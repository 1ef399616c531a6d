use thiserror::Error;

use crate::quiver::DimVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed quiver file or quiver data. `location` is a JSON path such
    /// as `arrows[2].to`, or `line 3, column 7` for syntax errors.
    #[error("invalid quiver at {location}: {message}")]
    InvalidQuiver { location: String, message: String },

    #[error("unsupported quiver: not of Dynkin type ({witness})")]
    NotDynkin { witness: String },

    #[error("{0:?} is not a positive root of this quiver")]
    NotARoot(DimVector),

    #[error("positive root enumeration exceeded the cap of {cap} roots")]
    RootCapExceeded { cap: usize },

    #[error("functor word parse error at position {position}: {message}")]
    FunctorGrammar { position: usize, message: String },

    #[error("composition endpoint mismatch: {0}")]
    Composition(String),

    #[error("orbit scan exceeded the certified bound {bound} (partial total {partial})")]
    CertifiedBoundExceeded { bound: i64, partial: usize },

    #[error("degenerate functor F = identity: every F^i U lies in the heart, so finiteness fails")]
    DegenerateFunctor,

    #[error("orbit category hypotheses fail: {0}")]
    HypothesesFail(String),

    #[error("bad object coordinate {input:?}: {message}")]
    BadCoordinate { input: String, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
