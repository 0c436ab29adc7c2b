use thiserror::Error;

/// Errors produced by graph construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: String },

    #[error("undeclared vertex {0}")]
    UndeclaredVertex(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("unknown edge {0}")]
    UnknownEdge(String),

    #[error(
        "invalid id {0:?}: ids are non-empty, contain no whitespace and do not start with '#'"
    )]
    InvalidId(String),

    #[error("walk is not composable at step {step}")]
    NotComposable { step: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("not connected")]
    NotConnected,

    #[error("not strongly connected")]
    NotStronglyConnected,

    #[error("not row-finite: edge {0} carries the infinite-multiplicity marker")]
    NotRowFinite(String),

    #[error("simple-loop enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("permutation group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("infinite group: {0}")]
    InfiniteGroup(&'static str),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid group element {0}")]
    InvalidElement(String),

    #[error("invalid group specification {0}")]
    InvalidGroupSpec(String),

    #[error("coset space is infinite")]
    InfiniteCosetSpace,

    #[error("labelling is missing edge {0}")]
    MissingLabel(String),

    #[error("{0} is not the root of the spanning tree")]
    NotRoot(String),

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("invalid graph morphism: {0}")]
    InvalidMorphism(String),

    #[error("not a covering map: {side}-star of {vertex} is not mapped bijectively")]
    NotCovering { vertex: String, side: StarSide },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("C*(E) is not simple")]
    NotSimple,

    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
}

/// Which star of a vertex failed the covering condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StarSide {
    In,
    Out,
}

impl std::fmt::Display for StarSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StarSide::In => f.write_str("in"),
            StarSide::Out => f.write_str("out"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
