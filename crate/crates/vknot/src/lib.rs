//! Invariants of long virtual knots presented by Gauss codes.
//!
//! The crate computes the two writhe polynomials and the twelve intersection
//! polynomials of a long virtual knot, the canonically associated closed
//! surface and its first-homology intersection data, upper and lower bounds
//! for the two supporting genera, a calculus of two-strand tangles (closures
//! and the tangle sum), and constructive realizability: given an admissible
//! Laurent polynomial, it produces a diagram whose chosen invariant equals it.
//!
//! Diagrams are given as based Gauss codes such as `O1+ U2+ O3+ U1+ O2+ U3+`,
//! read from the start of the long strand to its end.  All polynomial
//! arithmetic is exact (arbitrary-precision integer coefficients).

pub mod construct;
pub mod diagram;
pub mod invariants;
pub mod laurent;
pub mod surface;
pub mod tangle;

pub mod cli;

use diagram::Role;

/// Integer Laurent polynomial in `t` with arbitrary-precision coefficients.
///
/// This is the concrete scalar type used throughout the public API; the
/// underlying [`laurent::LaurentPoly`] is generic over any signed integer
/// coefficient type.
pub type Poly = laurent::LaurentPoly<num_bigint::BigInt>;

/// Errors produced by parsing, moves, surface construction, and constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A token of a Gauss code or a polynomial string could not be parsed.
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    /// A crossing label occurs a number of times other than exactly two.
    #[error("label {0} occurs {1} time(s), expected exactly 2")]
    LabelCountNotTwo(u64, usize),
    /// Both passages of one crossing are over, or both are under.
    #[error("label {0} has two {1} passages")]
    RoleDuplicated(u64, Role),
    /// The two passages of one crossing carry different signs.
    #[error("label {0} has conflicting signs")]
    SignMismatch(u64),
    /// A crossing id is not present in the diagram.
    #[error("no crossing with id {0}")]
    UnknownCrossing(usize),
    /// An arc index exceeds the number of arcs of the diagram.
    #[error("arc index {0} out of range, diagram has {1} arcs")]
    ArcOutOfRange(usize, usize),
    /// A Reidemeister move was requested at a site where it does not apply.
    #[error("move does not apply at the requested site")]
    InvalidSite,
    /// The surface graph of the diagram is disconnected.
    #[error("surface graph is disconnected")]
    Disconnected,
    /// A passage or position index exceeds the length of the diagram.
    #[error("index out of range")]
    IndexOutOfRange,
    /// The crossing-relocation loop exceeded its iteration budget.
    #[error("crossing relocation did not terminate")]
    NonterminatingRelocation,
    /// A numeric parameter is outside its admissible range.
    #[error("bad parameter: {0}")]
    BadParameter(String),
    /// A precondition on a polynomial argument does not hold.
    #[error("condition violated: {0}")]
    ConditionViolated(String),
}

impl Error {
    /// Stable short name of the error variant, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedToken(_) => "MalformedToken",
            Error::LabelCountNotTwo(..) => "LabelCountNotTwo",
            Error::RoleDuplicated(..) => "RoleDuplicated",
            Error::SignMismatch(_) => "SignMismatch",
            Error::UnknownCrossing(_) => "UnknownCrossing",
            Error::ArcOutOfRange(..) => "ArcOutOfRange",
            Error::InvalidSite => "InvalidSite",
            Error::Disconnected => "Disconnected",
            Error::IndexOutOfRange => "IndexOutOfRange",
            Error::NonterminatingRelocation => "NonterminatingRelocation",
            Error::BadParameter(_) => "BadParameter",
            Error::ConditionViolated(_) => "ConditionViolated",
        }
    }
}

/// Convenience result alias for fallible crate operations.
pub type Result<T> = std::result::Result<T, Error>;
