use thiserror::Error;

/// Errors surfaced by the operator, lattice, rule, and valuation layers.
///
/// Failed *checks* are not errors: verification routines return reports with
/// pass/fail content. Errors signal structural problems (bad inputs, violated
/// preconditions) or internal inconsistencies.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator is not self-adjoint (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("operator is not a projection (self-adjoint defect {adjoint_defect:.3e}, idempotency defect {idempotent_defect:.3e})")]
    NotProjection {
        adjoint_defect: f64,
        idempotent_defect: f64,
    },

    #[error("invalid tolerance context: {reason}")]
    InvalidTolerance { reason: String },

    #[error(
        "no convergence after {iterations} iterations (last step {last_step:.3e}{})",
        contraction_rate.map(|r| format!(", contraction rate {r:.6}")).unwrap_or_default()
    )]
    NoConvergence {
        iterations: usize,
        last_step: f64,
        /// Largest sub-unit eigenvalue modulus of the iterated operator,
        /// when one is available to explain the convergence rate.
        contraction_rate: Option<f64>,
    },

    #[error("empty operator set")]
    EmptySet,

    #[error("set of vectors spans nothing at dimension {dim}")]
    EmptySpan { dim: usize },

    #[error("lattice closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("lattice element list is not closed: {reason}")]
    LatticeNotClosed { reason: String },

    #[error("chain is not a strictly decreasing list of nonzero projections (position {position})")]
    ChainNotStrict { position: usize },

    #[error("truncation depth {requested} exceeds the {available} chain differences")]
    TruncationTooDeep { requested: usize, available: usize },

    #[error("not a density operator: {reason}")]
    NotDensityOperator { reason: String },

    #[error("state vector has no nonzero component in any eigenspace")]
    AllComponentsZero,

    #[error("projection is not a member of the definite set")]
    NotInD,

    #[error("operator is not in the extension of the definite set")]
    NotInExtension,

    #[error("atom is neither below the projection nor below its complement")]
    AtomNotResolved,

    #[error("lattice of {size} elements exceeds the exhaustive bound of {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("not an ideal: {reason}")]
    IdealInvalid { reason: String },

    #[error("internal oracle disagreement: {context}")]
    OracleDisagreement { context: String },

    #[error("no spectral projector absorbs the selector")]
    NoSelectedProjector,

    #[error("{count} spectral projectors absorb the selector; expected exactly one")]
    MultipleSelectedProjectors { count: usize },

    #[error("sequence did not converge to the target in norm")]
    SequenceNotConvergent,

    #[error("the supplied projections do not span the image of the state (defect {defect:.3e})")]
    IdealMismatch { defect: f64 },

    #[error("operators at positions {i} and {j} do not commute (defect {defect:.3e})")]
    NotCommuting { i: usize, j: usize, defect: f64 },

    #[error("family members {i} and {j} have nonzero meet")]
    NotDisjoint { i: usize, j: usize },

    #[error("precondition violated: {reason}")]
    PreconditionViolated { reason: String },

    #[error("the two orthogonal pairs coincide")]
    PairsNotDistinct,
}

pub type Result<T> = std::result::Result<T, Error>;
