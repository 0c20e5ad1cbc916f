use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

/// Errors raised by the kernel, the interception layer and the corpus SUTs.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    // geometry
    RingNotClosed,
    TooFewCoordinates { len: usize },
    NonFiniteCoordinate,
    UnknownPredicate(String),

    // interception
    UnknownSut(String),
    UnknownOperation(String),
    ArgumentKindMismatch { operation: String },
    AlreadyWoven,
    NoMatchingTarget { operator: String },
    StaleHandle,
    /// Advice rewrote an argument into a different kind.
    KindViolation { operation: String },
    /// Raised while woven advice was active in the failing call.
    MutantRuntime(Box<Error>),

    // operator catalog / engine
    UnknownOperator(String),
    InapplicableArguments { operator: &'static str, reason: &'static str },
    UnknownTargetName(String),
    NotActive,
    NotPending,

    // corpus
    InvalidRadius,
    UnknownParcel(String),
    DifferentOwner,
    NotAdjacent,
    NotMergeable,
    MergeInconsistent,
    DuplicateId(String),
}

impl Error {
    pub fn is_mutant_runtime(&self) -> bool {
        matches!(self, Error::MutantRuntime(_))
    }

    /// The underlying error with any mutant-runtime tag removed.
    pub fn cause(&self) -> &Error {
        match self {
            Error::MutantRuntime(inner) => inner.cause(),
            other => other,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingNotClosed => f.write_str("ring is not closed (first coordinate != last)"),
            Error::TooFewCoordinates { len } => {
                write!(f, "ring needs at least 4 coordinates, got {len}")
            }
            Error::NonFiniteCoordinate => f.write_str("coordinate component is not finite"),
            Error::UnknownPredicate(name) => write!(f, "unknown topological predicate `{name}`"),
            Error::UnknownSut(id) => write!(f, "unknown system under test `{id}`"),
            Error::UnknownOperation(name) => write!(f, "unknown operation `{name}`"),
            Error::ArgumentKindMismatch { operation } => {
                write!(f, "arguments do not match the signature of `{operation}`")
            }
            Error::AlreadyWoven => f.write_str("an advice is already woven in this context"),
            Error::NoMatchingTarget { operator } => {
                write!(f, "operator `{operator}` matches no operation of the SUT")
            }
            Error::StaleHandle => f.write_str("weave handle is not active"),
            Error::KindViolation { operation } => {
                write!(f, "advice changed argument kinds of `{operation}`")
            }
            Error::MutantRuntime(inner) => write!(f, "mutant runtime error: {inner}"),
            Error::UnknownOperator(id) => write!(f, "unknown mutation operator `{id}`"),
            Error::InapplicableArguments { operator, reason } => {
                write!(f, "{operator} cannot be applied: {reason}")
            }
            Error::UnknownTargetName(name) => write!(f, "SUT has no operation named `{name}`"),
            Error::NotActive => f.write_str("mutant is not active"),
            Error::NotPending => f.write_str("mutant is not pending"),
            Error::InvalidRadius => f.write_str("geofence radius must be positive"),
            Error::UnknownParcel(id) => write!(f, "unknown parcel `{id}`"),
            Error::DifferentOwner => f.write_str("parcels belong to different owners"),
            Error::NotAdjacent => f.write_str("parcels are not adjacent"),
            Error::NotMergeable => {
                f.write_str("parcels are not axis-aligned rectangles sharing a full edge")
            }
            Error::MergeInconsistent => f.write_str("merged shape does not cover its inputs"),
            Error::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
