use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown token `{0}` in braid word")]
    UnknownToken(String),

    #[error("malformed integer `{0}`")]
    MalformedInteger(String),

    #[error("zero exponent in exponent-vector form")]
    ZeroExponent,

    #[error("empty braid word has no 2-bridge closure")]
    EmptyWord,

    #[error("2-bridge closure requires sigma_1 as the first generator")]
    LeadingSigma2,

    #[error("word cannot be converted to odd length: {0}")]
    Unconvertible(String),

    #[error("syllable index {index} out of range for a word of {len} syllables")]
    SiteOutOfRange { index: usize, len: usize },

    #[error("closure is a {components}-component link, not a knot")]
    NotAKnot { components: usize },

    #[error("fraction numerator {p} does not describe a knot")]
    NonKnotFraction { p: BigInt },

    #[error("invalid fraction {p}/{q}")]
    InvalidFraction { p: BigInt, q: BigInt },

    #[error("continued fraction must be nonempty")]
    EmptyContinuedFraction,

    #[error("beta must have odd length, found {0} syllables")]
    EvenLength(usize),

    #[error("family parameters must be nonzero (m = {m}, n = {n})")]
    ZeroParameter { m: i64, n: i64 },

    #[error("surgery order must be nonzero")]
    ZeroOrder,

    #[error("site {site} has algebraic intersection {value}; not a crossing circle")]
    NonzeroIntersection { site: usize, value: i64 },

    #[error("genus and adjacency order out of domain: {0}")]
    ObstructionDomain(String),

    #[error("malformed PD code: {0}")]
    MalformedPd(String),

    #[error("Jones polynomial mismatch inside Schubert class S({p},{q})")]
    JonesMismatch { p: BigInt, q: BigInt },

    #[error("malformed polynomial term `{0}`")]
    MalformedTerm(String),

    #[error("graph JSON: {0}")]
    GraphJson(String),

    #[error("unsupported graph schema version {0}")]
    SchemaVersion(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
