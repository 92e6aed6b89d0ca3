//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("density ratio rho must satisfy 0 <= rho < 1, got {0}")]
    RhoOutOfRange(f64),
    #[error("depth ratio h must be positive, got {0}")]
    DepthNonpositive(f64),
    #[error("beta = {beta} must exceed beta0 = {beta0}")]
    BetaBelowBeta0 { beta: f64, beta0: f64 },
    #[error("lambda within {dist:.3e} of a tangent pole at {pole}")]
    NearPole { pole: f64, dist: f64 },
    #[error("sign changes closer than twice the scan resolution near {0}")]
    ResolutionTooCoarse(f64),
    #[error("contour integral failed the integrality check: winding {0}")]
    ContourUnresolved(f64),
    #[error("out of domain: {0}")]
    OutOfDomain(&'static str),
    #[error("double-root residuals ({0:.3e}, {1:.3e}) exceed tolerance")]
    ResidualTooLarge(f64, f64),
    #[error("iteration failed to converge: {0}")]
    NoConvergence(&'static str),
    #[error("grid sizes differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error("state violates operator boundary conditions by {0:.3e}")]
    BoundaryViolation(f64),
    #[error("change-of-variables denominator {0:.3e} too close to zero")]
    DenominatorDegenerate(f64),
    #[error("parameter point inconsistent with eigenchain case: {0}")]
    CaseMismatch(&'static str),
    #[error("bracketed denominator {0:.3e} within 1e-10 of zero")]
    SingularBracket(f64),
    #[error("sign preconditions violated: {0}")]
    SignMismatch(&'static str),
    #[error("state dimension {got} does not match system dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("linearization is not hyperbolic (P = {0} >= 2)")]
    NonHyperbolic(f64),
    #[error("orbit is not single-signed")]
    NotSingleSigned,
    #[error("orbit is not even: {0}")]
    NotSymmetric(&'static str),
    #[error("critical ratio rho = 1/h^2: coefficient A vanishes")]
    CriticalRatioDegenerate,
}

pub type Result<T> = std::result::Result<T, Error>;
