use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported bound 2^31")]
    ModulusTooLarge(u64),
    #[error("unrecognized field `{0}` (expected Q, Fp <p> or Fp:<p>)")]
    Unrecognized(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("variable universes differ: [{0}] vs [{1}]")]
    UniverseMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no declared weight")]
    UnweightedVariable(String),
    #[error("cannot substitute a non-monomial for `{0}`, which carries a negative exponent")]
    NonInvertibleSubstitution(String),
    #[error("division is not exact: {0}")]
    InexactDivision(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },
    #[error("{line}:{column}: unknown variable `{name}`")]
    UnknownVariable {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: exponent `{literal}` is too large")]
    ExponentOverflow {
        line: usize,
        column: usize,
        literal: String,
    },
    #[error("{line}:{column}: denominator vanishes in the coefficient field")]
    ZeroDenominator { line: usize, column: usize },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: {message}")]
    BadValue { key: String, message: String },
    #[error("key `{key}`: {source}")]
    Parse { key: String, source: ParseError },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("{0}")]
    Invalid(String),
    #[error("the defining polynomial is not monic in the free variable")]
    NotMonic,
    #[error("element is not in the ring: {0}")]
    NotInRing(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("t{0} divides the top form of the defining polynomial; gr is not of the expected shape")]
    DivisibleTopForm(usize),
    #[error("weight vector has {got} entries, ring has m = {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("filtrations are only defined on Danielewski rings without adjoined generators")]
    UnsupportedRing,
    #[error("the defining polynomial is zero")]
    ZeroRelation,
    #[error("homogenized candidate failed verification: {0}")]
    CandidateFailed(String),
    #[error("input map is trivial or fails the exponential-map axioms: {0}")]
    BadInput(String),
    #[error("witness {0} is not invariant under the input map")]
    WitnessNotInvariant(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpMapError {
    #[error("r_{0} is not 1")]
    NotUnitExponent(usize),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("`{0}` is not a generator of the ring")]
    UnknownGenerator(String),
    #[error("`{0}` occurs in the defining relation; the ring is not a polynomial extension in it")]
    NotAdjoined(String),
    #[error("division is not exact: {0}")]
    Inexact(String),
    #[error("no clearing exponent up to {0} brings the localized map into the ring")]
    ClearingFailed(u32),
    #[error("constructed map fails verification: {0}")]
    Verification(String),
    #[error("the ring family does not support this construction")]
    WrongFamily,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StisoError {
    #[error("F and F_V are not coprime: {0}")]
    NotCoprime(String),
    #[error("F must be a polynomial in V alone for automatic cofactors")]
    NotUnivariate,
    #[error("cofactors do not satisfy F*g1 + F_V*g2 = 1")]
    BadCofactors,
    #[error("no coordinate with r_i >= 2 to reduce")]
    NothingToReduce,
    #[error("target vector must have length {expected} with positive entries")]
    BadTarget { expected: usize },
    #[error("inexact division while building {0}")]
    InexactDivision(String),
    #[error("transcript identity failed: {0}")]
    TranscriptFailure(String),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    ExpMap(#[from] ExpMapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsanumaError {
    #[error("a_1(Z) is zero; H is not linear in T with a nonzero T-coefficient")]
    ZeroA1,
    #[error("H is not of the shape a_0(Z) + a_1(Z)T + H~(X, Z)")]
    NotLinearInT,
    #[error("coordinate change is not invertible: {0}")]
    BadCoordinates(String),
    #[error(transparent)]
    ExpMap(#[from] ExpMapError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
