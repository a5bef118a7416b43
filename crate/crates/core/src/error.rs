use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("composite is nonzero: {0}")]
    CompositeNonzero(String),
    #[error("object is not projective: {0}")]
    NotProjective(String),
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid fixture: {0}")]
    InvalidFixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
