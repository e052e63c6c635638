use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants that signal a broken invariant (`NotNormalWitnessFailure`,
/// `NotComaximal`) mean a backend advertised a capability it does not have;
/// they are bugs, not user errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different backends")]
    MixedBackends,
    #[error("unsupported capability: {0}")]
    UnsupportedCapability(String),
    #[error("normality witness failure: {0}")]
    NotNormalWitnessFailure(String),
    #[error("integral relation does not expand to zero")]
    RelationInvalid,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("elements are not comaximal")]
    NotComaximal,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("exact division failed")]
    ExactDivisionFailed,
    #[error("degenerate branch: element is zero in the node ring")]
    DegenerateBranch,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("orbit too large: C({n}, {m}) exceeds the configured bound")]
    OrbitTooLarge { n: usize, m: usize },
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("certificate carries no weighted form")]
    MissingWeightedForm,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
