use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse partition `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("dominance is only defined for partitions of equal size ({lhs} vs {rhs})")]
    SizeMismatch { lhs: usize, rhs: usize },

    #[error("modulus {0} is not an odd integer >= 3")]
    InvalidModulus(usize),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("bead count {given} is smaller than the number of parts {needed}")]
    TooFewBeads { needed: usize, given: usize },

    #[error("no bead at position {0}")]
    NoBead(usize),

    #[error("cannot move bead {bead} up {steps} row(s): target is occupied or off the abacus")]
    BlockedMove { bead: usize, steps: usize },

    #[error("rim hooks of {0} times the modulus are not supported")]
    UnsupportedHookSteps(usize),

    #[error("{0} is not a {1}-core")]
    NotACore(Partition, usize),

    #[error("{partition} has {p}-weight {found}, expected {expected}")]
    WrongWeight {
        partition: Partition,
        p: usize,
        expected: usize,
        found: usize,
    },

    #[error("{0} does not lie in the requested block")]
    NotInBlock(Partition),

    #[error("colour is only defined when delta = 0 (delta({0}) = {1})")]
    ColourUndefined(Partition, usize),

    #[error("{0} is not {1}-regular")]
    Singular(Partition, usize),

    #[error("two-runner hypotheses violated: {0}")]
    Hypotheses(String),

    #[error("{0}")]
    Unsupported(String),

    /// A computed object failed one of the structural checks the library
    /// asserts on its own output.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
