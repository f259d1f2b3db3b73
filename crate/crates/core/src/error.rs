use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closure exceeded cap of {cap} elements")]
    ClosureOverflow { cap: usize },
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("masses are not compatible with the group permutations")]
    IncompatibleMasses,
    #[error("group is not of type R")]
    NotTypeR,
    #[error("rotating frame not representable: {0}")]
    IrrationalFrame(String),
    #[error("action is not coercive at omega = {0}")]
    NotCoercive(f64),
    #[error("no convergence after {iterations} iterations (gradient norm {gradient_norm:e})")]
    MaxIterations { iterations: usize, gradient_norm: f64 },
    #[error("collision on the quadrature grid")]
    CollisionOnGrid,
    #[error("root not bracketed in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },
    #[error("omega = {0} is an integer")]
    OmegaInteger(f64),
    #[error("degenerate frequency: k equals omega")]
    DegenerateFrequency,
    #[error("geometry violated: need 0 < R < 3d, got R = {r}, d = {d}")]
    GeometryViolated { r: f64, d: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("theta = {0} outside (0, 2pi)")]
    ThetaOutOfRange(f64),
    #[error("series does not converge at cos(theta) = {0}")]
    SeriesDiverges(f64),
    #[error("zero separation")]
    ZeroSeparation,
    #[error("variation is not equivariant under g0")]
    NonEquivariantDelta,
    #[error("quadrature did not reach tolerance (estimated error {0:e})")]
    GridTooCoarse(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
