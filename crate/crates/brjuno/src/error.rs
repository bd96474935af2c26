use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("insufficient depth: need at least {need}, have {have}")]
    InsufficientDepth { need: usize, have: usize },
    #[error("Hölder weights violate B/A > {bound}: got {ratio}")]
    BadWeights { ratio: f64, bound: f64 },
    #[error("Neumann series did not reach tolerance after {0} terms")]
    NoConvergence(usize),
    #[error("argument {0} lies on the branch cut [1, inf)")]
    BranchCut(f64),
    #[error("point lies on the slit [0, 1]")]
    OnSlit,
    #[error("evaluation point too close to the pole of L_g")]
    PoleProximity,
    #[error("small divisor vanishes at order {order}, mode {mode}")]
    SmallDivisorZero { order: usize, mode: i64 },
    #[error("mode-0 right-hand side {value:e} exceeds tolerance at order {order}")]
    SolvabilityViolation { order: usize, value: f64 },
    #[error("radius estimates are unstable: {0}")]
    Unstable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
