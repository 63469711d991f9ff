//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arc {0} -> {1} is not present")]
    ArcNotPresent(usize, usize),
    #[error("digraph has an antisymmetry-violating cycle in its loopless part")]
    NotInTa,
    #[error("digraph is not a poset")]
    NotAPoset,
    #[error("digraph is not reflexive")]
    NotReflexive,
    #[error("parameter n = {given} is below the height {height}")]
    BelowHeight { given: usize, height: usize },
    #[error("expected height {expected}, digraph has height {found}")]
    HeightMismatch { expected: usize, found: usize },
    #[error("arc weight is not hosted on this digraph")]
    HostMismatch,
    #[error("not a subgraph of the host digraph")]
    NotASubgraph,
    #[error("map is not a homomorphism between the given digraphs")]
    NotAHomomorphism,
    #[error("homomorphism set is empty; maximum is undefined")]
    EmptyHomSet,
    #[error("homomorphism is not mu-maximal on every member of the family")]
    NotMuMaximal,
    #[error("iota profile does not occur among the mu-maximal maps into the second target")]
    ProfileNotInClass,
    #[error("codomain has {0} vertices; the engine supports at most 64")]
    CodomainTooLarge(usize),
    #[error("vertex count {0} exceeds the supported maximum {1}")]
    TooManyVertices(usize, usize),
    #[error("{0} lists of lengths {1} and {2} do not match")]
    LengthMismatch(&'static str, usize, usize),
    #[error("sum condition violated: sum(x) = {0} exceeds sum(y) = {1}")]
    SumExceeds(u64, u64),
    #[error("inputs must be positive")]
    NotPositive,
    #[error("digraph admits no shell encapsulation of its off-top vertices")]
    NotShellEncapsulated,
    #[error("catalog bound {given} exceeds the hard cap {cap} for kind {kind}")]
    CatalogCap {
        kind: &'static str,
        given: usize,
        cap: usize,
    },
    #[error("unknown catalog kind `{0}`")]
    UnknownKind(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
