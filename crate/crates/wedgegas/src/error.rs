use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor or operation received an argument outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// `backward_trace` was called with a velocity that is not incoming on the
    /// upper arm (`v' . n >= 0`).
    #[error("backward trace requires an incoming velocity (v'.n < 0), got v'.n = {v_dot_n}")]
    NonIncomingVelocity { v_dot_n: f64 },

    /// The backward trace found a second reflection, contradicting the
    /// single-recollision property of half-angles in [pi/4, pi/2).
    #[error("backward trace found more than one reflection (eta = {eta}, theta = {theta})")]
    MultipleRecollisions { eta: f64, theta: f64 },

    /// Adaptive quadrature could not reach the requested tolerance within its
    /// subdivision budget. Carries the best estimate and its residual error.
    #[error("quadrature did not converge: estimate = {estimate:e}, residual = {residual:e}")]
    QuadratureNonConvergence { estimate: f64, residual: f64 },

    /// A Monte Carlo stratum received no samples.
    #[error("stratum {stratum} of {total} received zero samples; increase n_samples")]
    EmptyStratum { stratum: usize, total: usize },

    /// The stationarity scan found a grid point where d(delta g)/dT is not
    /// strictly positive. Each offending point is reported as (V, T, value).
    #[error("stationarity obstruction violated at {} grid point(s): {points:?}", points.len())]
    ObstructionViolation { points: Vec<(f64, f64, f64)> },

    /// The limiting-velocity solver found no sign change below the cap.
    #[error("no root of E - F0(V) - g_inf(V) found for V <= {v_cap}; velocity unbounded?")]
    UnboundedVelocity { v_cap: f64 },

    /// The balance function E - F0 - g_inf was not strictly decreasing across
    /// the bracket, so the root may not be unique.
    #[error("E - F0(V) - g_inf(V) is not strictly decreasing on [{lo}, {hi}]")]
    NonMonotoneBalance { lo: f64, hi: f64 },

    /// Too few usable samples above the noise floor to fit a decay law.
    #[error("decay fit has only {usable} usable grid points (need >= {needed})")]
    FitWindowTooSmall { usable: usize, needed: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
