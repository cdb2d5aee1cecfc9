use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("element {0:?} is not a canonical member of the group")]
    NotCanonical(Vec<u64>),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no monic irreducible polynomial of degree {k} over F_{p}")]
    NoIrreducible { p: u64, k: u32 },

    #[error(
        "field of order {q} has q = 1 (mod 4); its squares are not a skew set (need q = 3 mod 4)"
    )]
    NotSkewOrder { q: u64 },

    #[error("unsupported group shape {0}: automorphisms are enumerated only for cyclic or elementary abelian groups")]
    UnsupportedGroup(String),

    #[error("automorphism group has {size} elements, above the enumeration budget of {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("sets live in different groups ({0} vs {1})")]
    GroupMismatch(String, String),

    #[error("set is not skew: elements {0} and {1} violate the partition {{0}} + D + -D")]
    NotSkew(usize, usize),

    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not a tournament: {0}")]
    NotTournament(String),

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("{what} is capped at n = {cap} (got n = {n}); {hint}")]
    TooLarge {
        what: &'static str,
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("vertex sets overlap")]
    Overlap,

    #[error("vertex sets must be nonempty")]
    EmptyPart,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
