use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deformation parameter must be finite, got {0}")]
    NonFiniteLambda(f64),

    #[error("invalid physical parameters: {0}")]
    InvalidParams(&'static str),

    #[error("operation requires a nonzero deformation parameter")]
    ZeroLambda,

    #[error("bound-state count is infinite for non-positive deformation {0}")]
    NonPositiveLambda(f64),

    #[error("normalization mismatch: expected {expected}, found {found}")]
    NormalizationMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("polynomial family too short: need {needed} members, got {got}")]
    FamilyTooShort { needed: usize, got: usize },

    #[error("exponents differ by a non-integer amount; functions are not in a common family")]
    ExponentMismatch,

    #[error("y = {y} lies outside the open domain (-{half_width}, {half_width})")]
    OutOfDomain { y: f64, half_width: f64 },

    #[error("state m = {m} is not normalizable; largest bound index is {max}")]
    UnboundState { m: u64, max: u64 },

    #[error("quadrature did not converge with {nodes} nodes (last {last}, previous {previous})")]
    QuadratureNotConverged {
        nodes: usize,
        last: f64,
        previous: f64,
    },

    #[error("integrand does not decay at infinity (tail rate {rate})")]
    DivergentTail { rate: f64 },

    #[error("grid too small: {n} < {min}")]
    GridTooSmall { n: usize, min: usize },

    #[error("truncation half-width must be positive, got {0}")]
    NonPositiveHalfWidth(f64),

    #[error("requested {k} eigenvalues from a matrix of order {order}")]
    TooManyEigenvalues { k: usize, order: usize },

    #[error("eigenvalue iteration for index {index} did not converge after {iterations} sweeps")]
    EigenNotConverged { index: usize, iterations: usize },

    #[error("tolerance {0} is below the supported floor")]
    ToleranceTooSmall(f64),

    #[error("refinement reached grid cap {grid} with error estimate {estimate}")]
    RefineNotConverged { grid: usize, estimate: f64 },

    #[error("integration step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("trajectory left the domain |x| < 1/sqrt(|lambda|) at t = {t}")]
    DomainExit { t: f64 },
}
