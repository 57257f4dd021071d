use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {modulus:#x} for GF(2^{l}): {reason}")]
    InvalidModulus {
        l: u32,
        modulus: u16,
        reason: &'static str,
    },

    #[error("value {value} is not an element of GF(2^{l})")]
    ElementOutOfRange { value: u32, l: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("polynomials are defined over different fields")]
    SpecMismatch,

    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("irreducibility is undefined for constant polynomials")]
    DegreeTooSmall,

    #[error("closed-form count only exists for b in {{1, 2}}, got b={0}")]
    UnsupportedDegree(usize),

    #[error("parameters violate l*b = m (l={l}, b={b}, m={m})")]
    ParameterMismatch { l: u32, b: usize, m: usize },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },

    #[error("polynomial of degree {degree} does not fit a window of length {window}")]
    DegreeExceedsWindow { degree: usize, window: usize },

    #[error("the zero polynomial does not define a linear map")]
    ZeroPolynomial,

    #[error("map matrix has rank {rank} < {expected}")]
    DegenerateMap { rank: usize, expected: usize },

    #[error("subspaces live in different ambient dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("polynomials #{first} {first_poly} and #{second} {second_poly} are not coprime{note}")]
    NotCoprime {
        first: usize,
        second: usize,
        first_poly: String,
        second_poly: String,
        note: &'static str,
    },

    #[error("expected a partial spread of {expected} subspaces, got {actual}")]
    WrongSpreadSize { expected: usize, actual: usize },

    #[error("subspace of size {actual} where {expected} was required")]
    WrongSubspaceSize { expected: usize, actual: usize },

    #[error("subspaces overlap at nonzero vector {0:#x}")]
    OverlapDetected(u32),

    #[error("Boolean function of odd arity {0} cannot be bent")]
    OddArity(usize),

    #[error("constructed function failed the bentness check")]
    BentCheckFailed,

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    #[error("truth table text {input:?} is invalid for n={n}: {reason}")]
    TruthTableParse {
        input: String,
        n: usize,
        reason: &'static str,
    },

    #[error("family manifest line is malformed: {0}")]
    ManifestParse(String),
}
