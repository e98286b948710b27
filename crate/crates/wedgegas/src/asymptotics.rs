//! Long-time behavior of the friction: empirical verification that the
//! deficit `delta_g(V, t)` relaxes like `(1+t)^-5`, the no-stationary-velocity
//! criterion `d(delta_g)/dT > 0`, and the heuristic limiting velocity solving
//! `E = F0(V) + g_inf(V)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::WedgeConfig;
use crate::quadrature::{
    delta_g_direct, delta_g_dt_param, friction_f0, friction_g_inf, GasState, QuadratureSpec,
};

/// Result of a log-log power-law fit of the deficit against time.
///
/// `c_lower`/`c_upper` are the observed extremes of `delta_g * (1+t)^5` over
/// the usable grid: empirical stand-ins for the sandwich constants, which the
/// relaxation estimate only guarantees to exist.
#[derive(Debug, Clone)]
pub struct DecayFit {
    /// Least-squares slope of `ln delta_g` against `ln t`.
    pub exponent: f64,
    /// Intercept of the same regression.
    pub log_intercept: f64,
    pub r_squared: f64,
    /// Grid points actually used (those above the noise floor).
    pub t_grid: Vec<f64>,
    pub c_lower: f64,
    pub c_upper: f64,
}

/// Root of the force balance `E - F0(V) - g_inf(V) = 0`.
#[derive(Debug, Clone, Copy)]
pub struct LimitingVelocity {
    pub v_bar_inf: f64,
    /// Balance residual at the root.
    pub residual: f64,
    /// Bracket within which the root was isolated.
    pub bracket: (f64, f64),
}

/// One grid point of the stationarity scan.
#[derive(Debug, Clone, Copy)]
pub struct StationarityEntry {
    pub v_body: f64,
    pub t_param: f64,
    /// `d(delta_g)/dT`, strictly positive away from `V = 0`.
    pub d_delta_g: f64,
}

/// Outcome of [`stationarity_obstruction_scan`].
#[derive(Debug, Clone)]
pub struct StationarityScan {
    pub entries: Vec<StationarityEntry>,
    /// `d(delta_g)/dT > 0` held at every grid point with `V > 0`.
    pub all_strictly_positive: bool,
    /// Whether the grid contained `V = 0` rows, which are identically zero
    /// and excluded from the strictness assertion; a resting body fails the
    /// stationarity balance separately, since `F0(0) = g(0, t) = 0` cannot
    /// absorb a positive driving force.
    pub zero_velocity_rows: usize,
}

/// Grid points whose deficit is at or below this multiple of the quadrature
/// absolute tolerance are dropped from decay fits as noise.
const NOISE_FLOOR_FACTOR: f64 = 100.0;

/// Fit `ln f(t)` against `ln t` on the given grid, dropping grid points where
/// `f` is at or below `noise_floor`, and record the extremes of
/// `f(t) * (1+t)^5`. The probe function is injectable so synthetic decay laws
/// can exercise the fitting path.
pub fn fit_decay_profile<F>(mut delta_g: F, t_grid: &[f64], noise_floor: f64) -> Result<DecayFit>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut ts = Vec::with_capacity(t_grid.len());
    let mut ys = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if t <= 0.0 || t.is_nan() {
            return Err(Error::InvalidParam(format!(
                "decay grid times must be positive, got {t}"
            )));
        }
        let y = delta_g(t)?;
        if y > noise_floor {
            ts.push(t);
            ys.push(y);
        }
    }
    if ts.len() < 3 {
        return Err(Error::FitWindowTooSmall {
            usable: ts.len(),
            needed: 3,
        });
    }

    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ls.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ls) {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::InvalidParam(
            "decay grid must span more than one distinct time".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };

    let scaled: Vec<f64> = ts
        .iter()
        .zip(&ys)
        .map(|(t, y)| y * (1.0 + t).powi(5))
        .collect();
    let c_lower = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_upper = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    Ok(DecayFit {
        exponent: slope,
        log_intercept: intercept,
        r_squared,
        t_grid: ts,
        c_lower,
        c_upper,
    })
}

/// Log-spaced grid of `n` points on `[lo, hi]`.
pub fn log_spaced_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Fit the decay exponent of the physical deficit `delta_g(V, t)` on a
/// log-spaced grid of `n_points` times in `[t_min, t_max]`.
///
/// The fit window defaults in callers to `t in [2, 50]`: late enough for the
/// relaxation law to dominate, early enough that the deficit stays far above
/// quadrature noise. The window is an argument so it is always explicit.
pub fn fit_decay_exponent(
    v_body: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    t_min: f64,
    t_max: f64,
    n_points: usize,
    spec: &QuadratureSpec,
) -> Result<DecayFit> {
    if v_body <= 0.0 || v_body.is_nan() {
        return Err(Error::InvalidParam(format!(
            "decay fit requires V > 0 (the deficit vanishes at rest), got {v_body}"
        )));
    }
    if t_min <= 0.0 || t_max <= t_min || t_min.is_nan() || t_max.is_nan() {
        return Err(Error::InvalidParam(format!(
            "decay window must satisfy 0 < t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if n_points < 8 {
        return Err(Error::InvalidParam(format!(
            "decay fit needs at least 8 grid points, got {n_points}"
        )));
    }
    let grid = log_spaced_grid(t_min, t_max, n_points);
    fit_decay_profile(
        |t| delta_g_direct(v_body, t, cfg, gas, spec),
        &grid,
        NOISE_FLOOR_FACTOR * spec.abs_tol,
    )
}

/// Evaluate `d(delta_g)/dT` on a `(V, T)` grid and assert strict positivity
/// everywhere away from `V = 0` (equivalently `dg/dT < 0`: no constant
/// velocity can balance a constant force for all time).
///
/// `V = 0` rows are evaluated, must vanish, and are excluded from the
/// strictness assertion. Any non-positive value at `V > 0` is returned as an
/// [`Error::ObstructionViolation`] listing the offending points.
pub fn stationarity_obstruction_scan(
    cfg: &WedgeConfig,
    gas: &GasState,
    v_grid: &[f64],
    t_param_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<StationarityScan> {
    if v_grid.is_empty() || t_param_grid.is_empty() {
        return Err(Error::InvalidParam("scan grids must be nonempty".into()));
    }
    for &t_param in t_param_grid {
        if t_param <= 0.0 || t_param.is_nan() {
            return Err(Error::InvalidParam(format!(
                "scan decay parameters must be positive, got {t_param}"
            )));
        }
    }
    let points: Vec<(f64, f64)> = v_grid
        .iter()
        .flat_map(|&v| t_param_grid.iter().map(move |&t| (v, t)))
        .collect();
    // Grid points are independent quadratures; grid order is preserved in
    // the collected entries regardless of scheduling.
    let entries: Vec<StationarityEntry> = points
        .par_iter()
        .map(|&(v_body, t_param)| {
            Ok(StationarityEntry {
                v_body,
                t_param,
                d_delta_g: delta_g_dt_param(v_body, t_param, cfg, gas, spec)?,
            })
        })
        .collect::<Result<_>>()?;

    let violations: Vec<(f64, f64, f64)> = entries
        .iter()
        .filter(|e| e.v_body > 0.0 && (e.d_delta_g <= 0.0 || e.d_delta_g.is_nan()))
        .map(|e| (e.v_body, e.t_param, e.d_delta_g))
        .collect();
    if !violations.is_empty() {
        return Err(Error::ObstructionViolation { points: violations });
    }
    Ok(StationarityScan {
        zero_velocity_rows: v_grid.iter().filter(|&&v| v == 0.0).count(),
        entries,
        all_strictly_positive: true,
    })
}

/// Solve `E = F0(V) + g_inf(V)` for the heuristic limiting velocity.
///
/// Starting from `h(0) = E > 0`, the bracket is expanded geometrically until
/// the balance changes sign (failing with [`Error::UnboundedVelocity`] beyond
/// `v_cap`), checked for strict monotonicity so a non-unique root surfaces as
/// an error, then bisected until the residual drops below `1e-10 * E`.
pub fn solve_limiting_velocity(
    driving_force: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    v_cap: f64,
    spec: &QuadratureSpec,
) -> Result<LimitingVelocity> {
    if driving_force <= 0.0 || !driving_force.is_finite() {
        return Err(Error::InvalidParam(format!(
            "driving force must be positive and finite, got {driving_force}"
        )));
    }
    if v_cap <= 0.0 || v_cap.is_nan() {
        return Err(Error::InvalidParam(format!(
            "velocity cap must be positive, got {v_cap}"
        )));
    }
    // The residual target needs quadrature noise well below 1e-10 * E; the
    // balance terms are of size E near the root.
    let spec = spec.tightened(1e-12, (1e-14 * driving_force).min(1e-15));
    let residual_tol = 1e-10 * driving_force;

    let balance = |v: f64| -> Result<f64> {
        Ok(driving_force - friction_f0(v, cfg, gas, &spec)? - friction_g_inf(v, cfg, gas, &spec)?)
    };

    let mut lo = 0.0;
    let mut h_lo = driving_force;
    let mut hi = (driving_force * 0.5).max(1e-3).min(v_cap);
    let mut h_hi = balance(hi)?;
    while h_hi > 0.0 {
        lo = hi;
        h_lo = h_hi;
        hi *= 2.0;
        if hi > v_cap {
            return Err(Error::UnboundedVelocity { v_cap });
        }
        h_hi = balance(hi)?;
    }
    let bracket = (lo, hi);

    // Strict monotonic decrease across the bracket; a flat or rising stretch
    // would mean the first root is not the only one.
    let mut prev = h_lo;
    for i in 1..=16 {
        let v = lo + (hi - lo) * i as f64 / 16.0;
        let h = balance(v)?;
        if h >= prev {
            return Err(Error::NonMonotoneBalance { lo, hi });
        }
        prev = h;
    }

    let mut root = 0.5 * (lo + hi);
    let mut residual = balance(root)?;
    let mut iterations = 0;
    while residual.abs() > residual_tol {
        if residual > 0.0 {
            lo = root;
        } else {
            hi = root;
        }
        root = 0.5 * (lo + hi);
        residual = balance(root)?;
        iterations += 1;
        if iterations > 200 {
            return Err(Error::QuadratureNonConvergence {
                estimate: root,
                residual,
            });
        }
    }

    Ok(LimitingVelocity {
        v_bar_inf: root,
        residual,
        bracket,
    })
}
