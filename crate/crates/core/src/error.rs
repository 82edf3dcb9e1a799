use thiserror::Error;

/// Errors produced by the computation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),

    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: u64 },

    #[error("group ring moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),

    #[error("singularity ({m1},{m2},{n}) is not in the stable range: mu = {mu:?}")]
    NotStable {
        m1: u64,
        m2: u64,
        n: u64,
        mu: Vec<u64>,
    },

    #[error("unknown trace method `{0}`")]
    UnknownMethod(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid fiber graph: {0}")]
    Validation(String),

    #[error("self-intersection of vertex `{vertex}` is not integral: -({sum})/{mult}")]
    NonIntegralSelfIntersection { vertex: String, sum: u64, mult: u64 },

    #[error("1 - trace has negative coefficient {coeff} at exponent {exponent}")]
    NegativeCharacterCoefficient { exponent: u64, coeff: String },

    #[error("jump sweeps disagree: {0}")]
    InconsistentRounding(String),

    #[error("candidate {p}/{n} is farther than 1/{n} from every k/{n_tilde}")]
    ToleranceExceeded { p: u64, n: u64, n_tilde: u64 },

    #[error("unknown fiber type `{0}`")]
    UnknownType(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
