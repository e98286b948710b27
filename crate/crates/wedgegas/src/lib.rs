//! Friction of a free (collisionless) gas on a wedge-shaped concave body held
//! at constant velocity.
//!
//! A rigid wedge of half-angle `theta in [pi/4, pi/2)` moves hollow-side-first
//! through a gas in thermal equilibrium whose particles interact with the body
//! only through elastic reflections. Because the arms are tilted, a particle
//! can bounce off one arm onto the other, and these recollisions make the drag
//! time dependent even at constant velocity:
//!
//! * `F^V(t) = F0(V) + g(V, t)` splits the drag into its recollision-free part
//!   and a nonnegative correction that grows from 0 to `g_inf(V)`
//!   ([`quadrature`]);
//! * the deficit `delta_g = g_inf - g` relaxes like `(1+t)^-5`, verified by
//!   log-log fits with empirical sandwich constants ([`asymptotics`]);
//! * `d(delta_g)/dT > 0` for every positive velocity, so no constant velocity
//!   balances a constant driving force for all time; the expected long-time
//!   velocity instead solves `E = F0(V) + g_inf(V)` ([`asymptotics`]);
//! * every quadrature answer is cross-checked by a Monte Carlo estimator whose
//!   recollision resolution is pure backward ray tracing ([`montecarlo`]).
//!
//! All quantities default to the nondimensional normalization
//! `rho = beta = L = 1`; every parameter is overridable.

pub mod asymptotics;
pub mod error;
pub mod geometry;
pub mod integrate;
pub mod montecarlo;
pub mod quadrature;

pub use asymptotics::{
    fit_decay_exponent, fit_decay_profile, log_spaced_grid, solve_limiting_velocity,
    stationarity_obstruction_scan, DecayFit, LimitingVelocity, StationarityEntry, StationarityScan,
};
pub use error::{Error, Result};
pub use geometry::{
    backward_trace, frame_vectors, in_recollision_region, precollision_speed_sq, psi_hat, reflect,
    region_bounds, FrameVectors, RegionBounds, TraceResult, Vec2, WedgeConfig,
};
pub use montecarlo::{
    estimate_friction_mc, region_agreement_audit, AuditReport, McEstimate, McSpec,
};
pub use quadrature::{
    delta_g_direct, delta_g_dt_param, delta_g_raw, friction_breakdown, friction_f0, friction_g,
    friction_g_inf, FrictionBreakdown, GasState, QuadratureSpec,
};
