use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {k} outside 1..={n}")]
    OutOfRange { k: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("inadmissible Dynkin type `{0}`")]
    InadmissibleType(String),
    #[error("not a Dynkin graph automorphism: {0}")]
    NotGraphAut(String),
    #[error("Weyl group enumeration exceeded the budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("automorphism does not normalize the group")]
    NotNormalizing,
    #[error("orbit roots are not pairwise orthogonal")]
    OrbitNotOrthogonal,
    #[error("matrix does not lie in the Lie algebra")]
    NotInAlgebra,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("surface-group relation violated, residual element has word {0:?}")]
    RelationViolated(Vec<usize>),
    #[error("global invariants survive (H^0 has rank {0})")]
    NonvanishingH0(usize),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("scaling parameter must be non-zero")]
    ZeroScalar,
    #[error("slice carries no finite-group action")]
    NoFiniteAction,
    #[error("group action does not preserve the polynomial")]
    ActionNotPreserving,
}

pub type Result<T> = std::result::Result<T, Error>;
