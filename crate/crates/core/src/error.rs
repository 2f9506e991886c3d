use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A probability vector does not sum to one.
    NotNormalized { sum: f64 },
    NegativeProbability { index: usize, value: f64 },
    EmptyAlphabet,
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    UnknownVariable(String),
    OverlappingGroups,
    /// An inner-class operation received an outer-class chain.
    OuterChainForInnerBound,
    AlphabetTooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
    /// The requested sweep would evaluate more chains than allowed.
    GridTooLarge { count: u128, cap: u128 },
    InvalidParameter { name: &'static str, value: f64 },
    NegativeArgument(f64),
    /// A polytope escapes the `[0, 64]^3` sanity box.
    Unbounded,
    MemoryCapExceeded { needed: u128, cap: u128 },
    EnumerationCapExceeded { needed: u128, cap: u128 },
    MessageOutOfRange {
        which: &'static str,
        index: usize,
        count: usize,
    },
}

impl Error {
    /// True for errors that signal a resource cap rather than bad input.
    pub fn is_cap_violation(&self) -> bool {
        matches!(
            self,
            Error::GridTooLarge { .. }
                | Error::MemoryCapExceeded { .. }
                | Error::EnumerationCapExceeded { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotNormalized { sum } => {
                write!(f, "probabilities sum to {sum}, expected 1 within 1e-12")
            }
            Error::NegativeProbability { index, value } => {
                write!(f, "negative probability {value} at index {index}")
            }
            Error::EmptyAlphabet => f.write_str("alphabet must contain at least one symbol"),
            Error::DimensionMismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected size {expected}, found {found}"),
            Error::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            Error::OverlappingGroups => f.write_str("variable groups must be disjoint"),
            Error::OuterChainForInnerBound => {
                f.write_str("inner bound requires p(v1,v2|u) = p(v1|u)p(v2|u)")
            }
            Error::AlphabetTooLarge { what, size, max } => {
                write!(f, "{what} alphabet size {size} exceeds the cardinality cap {max}")
            }
            Error::GridTooLarge { count, cap } => {
                write!(f, "sweep would evaluate {count} chains, cap is {cap}")
            }
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid value {value} for parameter `{name}`")
            }
            Error::NegativeArgument(x) => write!(f, "argument must be non-negative, got {x}"),
            Error::Unbounded => f.write_str("polytope is not bounded within [0, 64]^3"),
            Error::MemoryCapExceeded { needed, cap } => {
                write!(f, "codebook needs {needed} codewords, memory cap is {cap}")
            }
            Error::EnumerationCapExceeded { needed, cap } => {
                write!(f, "exact enumeration needs {needed} terms, cap is {cap}")
            }
            Error::MessageOutOfRange {
                which,
                index,
                count,
            } => write!(f, "message {which}={index} out of range 0..{count}"),
        }
    }
}

impl core::error::Error for Error {}
