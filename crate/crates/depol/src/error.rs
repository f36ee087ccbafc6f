//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input Stokes vector must be unit length, got |s| = {norm}")]
    NonUnitStokes { norm: f64 },
    #[error("plate {index}: drive frequency must be a nonzero integer")]
    ZeroFrequency { index: usize },
    #[error("plate {index}: retardation error {xi} outside the sanity bound |xi| <= 0.5")]
    XiOutOfRange { index: usize, xi: f64 },
    #[error("plate {index}: custom retardation must be finite")]
    NonFiniteRetardation { index: usize },
    #[error("cascade must contain at least one plate")]
    EmptyCascade,
    #[error("expected {expected} values for {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("error box xi_max = {xi_max} outside [0, 0.3]")]
    BadErrorBox { xi_max: f64 },
    #[error("no closed form for a degenerate frequency pair")]
    DegenerateCombo,
    #[error("sampling plan selects no points")]
    EmptyPlan,
    #[error("need at least one phase sample")]
    NoPhaseSamples,
    #[error("scaling grid must be geometric with >= 4 points, span >= 1 decade and xi_max <= 0.1 (lo = {lo}, hi = {hi}, points = {points})")]
    BadScalingGrid { lo: f64, hi: f64, points: usize },
    #[error("dop {dop:e} at xi_max = {xi_max} is below the fit floor 1e-14")]
    BelowFloor { xi_max: f64, dop: f64 },
    #[error("frequency collision: sum of k[i]*m[i] = 0 for k = {k:?}")]
    FrequencyCollision { k: Vec<i32> },
    #[error("collision search supports at most {max} plates, got {got}")]
    ChainTooLong { got: usize, max: usize },
    #[error("max_m = {max_m} outside 1..=12")]
    MaxMOutOfRange { max_m: i32 },
    #[error("table 1 verification expects xi_max in [0.005, 0.05], got {xi_max}")]
    BoxOutsideTable1Range { xi_max: f64 },
}
