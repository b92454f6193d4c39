use thiserror::Error;

/// Errors shared across the whole engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("composite of the two differentials is nonzero at column {col}")]
    CompositionNotZero { col: usize },

    #[error("vector is not a cycle: differential is nonzero at row {row}")]
    NotACycle { row: usize },

    #[error("cutoffs do not match: {left} vs {right}")]
    CutoffMismatch { left: usize, right: usize },

    #[error("cutoff {cutoff} is too small: {needed}")]
    CutoffTooSmall { cutoff: usize, needed: String },

    #[error("degree mismatch: {context}")]
    DegreeMismatch { context: String },

    #[error("not a chain map: fails on basis element `{witness}`")]
    NotAChainMap { witness: String },

    #[error("bar construction requires a 1-connected algebra; `{witness}` has degree {degree}")]
    NotOneConnected { witness: String, degree: usize },

    #[error("coalgebra is not cocomplete: iterated reduced comultiplication never vanishes on `{witness}`")]
    NotCocomplete { witness: String },

    #[error("invalid homotopy: {reason}")]
    InvalidHomotopy { reason: String },

    #[error("homotopies do not share their middle twisting cochain")]
    EndpointMismatch,

    #[error("source algebra is not a cobar construction")]
    SourceNotCobar,

    #[error("invalid twisting cochain: {reason}")]
    InvalidTwistingCochain { reason: String },

    #[error("algebra is not commutative: fails on `{left}`·`{right}`")]
    NotCommutative { left: String, right: String },

    #[error("Koszul oracle requires a polynomial base on even generators; `{name}` has odd degree {degree}")]
    OddGeneratorInBase { name: String, degree: usize },

    #[error("functoriality squares do not commute: fails on `{witness}`")]
    SquaresDoNotCommute { witness: String },

    #[error("cell budget exhausted: construction needs more than {limit} basis elements")]
    CutoffTooLarge { limit: usize },

    #[error("operands live over different coefficient rings")]
    RingMismatch,

    #[error("structure axiom fails: {reason}")]
    AxiomFailure { reason: String },

    #[error("unknown generator `{name}` in expression")]
    UnknownGenerator { name: String },

    #[error("expression parse error: {reason}")]
    ExprParse { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
