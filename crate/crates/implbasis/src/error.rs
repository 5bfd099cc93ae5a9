use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid attribute name {0:?}")]
    InvalidAttrName(String),

    #[error("ground set must contain at least one attribute")]
    EmptyGround,

    #[error("duplicate attribute {0:?} in ground set")]
    DuplicateAttr(String),

    #[error("implication premise must be non-empty")]
    EmptyPremise,

    #[error("implication conclusion must be non-empty")]
    EmptyConclusion,

    #[error("premise and conclusion overlap")]
    PremiseConclusionOverlap,

    #[error("operands are over different ground sets")]
    GroundMismatch,

    #[error("input does not define a standard closure system: {0}")]
    NotStandard(String),

    #[error("input basis is not regular")]
    NotRegular,

    #[error("the set is not an order ideal of the attribute order")]
    NotOrderIdeal,

    #[error("the set is not closed")]
    NotClosed,

    #[error("the set is not a critical set of this closure system")]
    NotCritical,

    #[error("attribute {0:?} does not form a critical singleton")]
    NotCriticalSingleton(String),

    #[error("the closure system has a D-cycle: {0}")]
    DCycle(String),

    #[error("the closure system is not a unique-criticals system")]
    NotUc,

    #[error("join-semidistributivity could not be certified for this input (pass --force to skip the check)")]
    JsdUnverified,

    #[error("ground set has {n} attributes, oracle bound is {bound}")]
    OracleBound { n: usize, bound: usize },

    #[error("search bound exceeded: {0}")]
    SearchBound(String),

    #[error("combinatorial bound exceeded: {0}")]
    CombinatorialBound(String),

    #[error("set cover instance is trivial (a member equals Q or Q minus one element)")]
    TrivialInstance,

    #[error("invalid set cover instance: {0}")]
    InvalidInstance(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
