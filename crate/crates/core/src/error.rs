use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph contains a cycle (edge {0} -- {1})")]
    Cyclic(String, String),
    #[error("intersection form is not negative definite: leading principal minor of size {size} of -I has determinant {det}")]
    NotNegativeDefinite { size: usize, det: i128 },
    #[error("invalid Seifert pair ({alpha},{omega})")]
    InvalidSeifertPair { alpha: i128, omega: i128 },
    #[error("invalid lens parameters p={p}, q={q}")]
    InvalidLens { p: i128, q: i128 },
    #[error("expected {expected} node(s), found {found}")]
    NodeCount { expected: usize, found: usize },
    #[error("leg or chain vertex `{0}` has decoration > -2")]
    NonNormalizedString(String),
    #[error("term budget of {0} exceeded")]
    Budget(u64),
    #[error("query outside the truncation window")]
    Window,
    #[error("vector is not in the required cone")]
    NotInCone,
    #[error("denominator exponents are linearly dependent")]
    DegenerateDenominator,
    #[error("congruence condition violated")]
    Congruence,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no consistent quasipolynomial fit: {0}")]
    Fit(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("discriminant group is nontrivial")]
    NontrivialGroup,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
