//! Deterministic evaluation of the friction functionals for a wedge held at
//! constant velocity: the recollision-free part `F0(V)`, the recollision
//! correction `g(V, t)` with its long-time limit `g_inf(V)`, the deficit
//! `delta_g(V, t) = g_inf - g`, and the derivative of the deficit with respect
//! to the decay parameter `T = sin(2 theta) / t`.
//!
//! The velocity integrals run in the rotated frame `w = (v'.p, v'.p_perp)`,
//! where the recollision region at arm coordinate `eta` becomes the slope
//! wedge `a w1 < w2 < b(eta) w1` with `w1` thresholded at `eta sin(2theta)/t`,
//! so iterated limits capture the region exactly (`w2` inner, `w1` outer,
//! `eta` outermost). The deficit is additionally available in unrotated
//! Cartesian velocity coordinates ([`delta_g_raw`]) as an independent route.
//!
//! Gaussian factors are truncated at `velocity_cutoff_sigmas / sqrt(beta)`
//! plus one thermal unit of padding for the polynomial weight; with the
//! default cutoff of 6 the neglected tail mass is below 1e-15 of the
//! integrand scale.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::geometry::{frame_vectors, Vec2, WedgeConfig};
use crate::integrate::{integrate, Tolerance};

/// Free-gas state: mass density `rho` and inverse temperature `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasState {
    rho: f64,
    beta: f64,
}

impl GasState {
    pub fn new(rho: f64, beta: f64) -> Result<Self> {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "gas density must be positive and finite, got {rho}"
            )));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "inverse temperature must be positive and finite, got {beta}"
            )));
        }
        Ok(Self { rho, beta })
    }

    #[inline]
    pub fn rho(&self) -> f64 {
        self.rho
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Equilibrium prefactor `k = rho * beta / pi`, always derived.
    #[inline]
    pub fn k(&self) -> f64 {
        self.rho * self.beta / std::f64::consts::PI
    }
}

/// Accuracy and truncation controls for the friction quadratures.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Gaussian truncation radius in units of `1/sqrt(beta)`.
    pub velocity_cutoff_sigmas: f64,
    /// Number of graded initial panels for the arm-coordinate integral;
    /// refinement beyond them is adaptive.
    pub eta_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-15,
            velocity_cutoff_sigmas: 6.0,
            eta_panels: 12,
        }
    }
}

impl QuadratureSpec {
    /// A copy with tolerances tightened to at most the given values.
    pub fn tightened(&self, rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rel_tol: self.rel_tol.min(rel_tol),
            abs_tol: self.abs_tol.min(abs_tol),
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0
            || self.abs_tol <= 0.0
            || self.rel_tol.is_nan()
            || self.abs_tol.is_nan()
        {
            return Err(Error::InvalidParam(format!(
                "quadrature tolerances must be positive, got rel={}, abs={}",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.velocity_cutoff_sigmas < 4.0 || self.velocity_cutoff_sigmas.is_nan() {
            return Err(Error::InvalidParam(format!(
                "velocity cutoff must be at least 4 sigmas, got {}",
                self.velocity_cutoff_sigmas
            )));
        }
        if self.eta_panels == 0 {
            return Err(Error::InvalidParam("eta_panels must be at least 1".into()));
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            rel: self.rel_tol,
            abs: self.abs_tol,
        }
    }
}

/// The friction functionals at one `(V, t)` point: total `F = F0 + g`.
#[derive(Debug, Clone, Copy)]
pub struct FrictionBreakdown {
    pub f0: f64,
    pub g: f64,
    pub g_inf: f64,
    pub delta_g: f64,
    pub fv_total: f64,
}

fn record_err(cell: &RefCell<Option<Error>>, r: Result<f64>) -> f64 {
    match r {
        Ok(v) => v,
        Err(e) => {
            let mut slot = cell.borrow_mut();
            if slot.is_none() {
                *slot = Some(e);
            }
            0.0
        }
    }
}

fn take_err(cell: RefCell<Option<Error>>, value: f64) -> Result<f64> {
    match cell.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Shared per-call constants of the rotated-frame integrand.
struct WFrame {
    beta: f64,
    /// Normal of the upper arm in the rotated frame: `(-cos 2theta, -sin 2theta)`.
    n_w: (f64, f64),
    /// Lower slope `a = tan(2 theta - pi/2)`.
    slope_a: f64,
    /// `V sin theta` and `V cos theta`: Gaussian centers in `w1` and `w2`.
    v_p: f64,
    v_c: f64,
    /// Truncation radius including polynomial padding.
    radius: f64,
    length: f64,
    cos2t: f64,
    sin2t: f64,
}

impl WFrame {
    fn new(v_body: f64, cfg: &WedgeConfig, gas: &GasState, spec: &QuadratureSpec) -> Self {
        let two_theta = 2.0 * cfg.theta();
        WFrame {
            beta: gas.beta(),
            n_w: (-two_theta.cos(), -two_theta.sin()),
            slope_a: (two_theta - std::f64::consts::FRAC_PI_2).tan(),
            v_p: v_body * cfg.theta().sin(),
            v_c: v_body * cfg.theta().cos(),
            radius: (spec.velocity_cutoff_sigmas + 1.0) / gas.beta().sqrt(),
            length: cfg.length(),
            cos2t: two_theta.cos(),
            sin2t: two_theta.sin(),
        }
    }

    /// Upper slope `b(eta)`; infinite at the vertex.
    #[inline]
    fn slope_b(&self, eta: f64) -> f64 {
        if eta == 0.0 {
            f64::INFINITY
        } else {
            (self.length - eta * self.cos2t) / (eta * self.sin2t)
        }
    }

    /// `w1`-only part of the rotated-frame integrand, with the Boltzmann
    /// bracket folded into a cancellation-free form:
    /// `exp(-beta (w1-Vp)^2) - exp(-beta (w1+Vp)^2)`.
    #[inline]
    fn w1_factor(&self, w1: f64) -> f64 {
        let d1 = w1 - self.v_p;
        (-self.beta * d1 * d1).exp() * -f64::exp_m1(-4.0 * self.beta * self.v_p * w1)
    }

    /// Inner `w2` integral across the slope wedge at fixed `w1`; the
    /// `w1`-only factor is hoisted out of the node loop.
    fn inner_w2(&self, w1: f64, slope_b: f64, tol: Tolerance) -> Result<f64> {
        let lo = (self.slope_a * w1).max(self.v_c - self.radius);
        let hi = (slope_b * w1).min(self.v_c + self.radius);
        if lo >= hi {
            return Ok(0.0);
        }
        let scale = self.w1_factor(w1);
        if scale == 0.0 {
            return Ok(0.0);
        }
        let value = integrate(
            |w2| {
                let n_dot_w = self.n_w.0 * w1 + self.n_w.1 * w2;
                let d2 = w2 - self.v_c;
                n_dot_w * n_dot_w * (-self.beta * d2 * d2).exp()
            },
            lo,
            hi,
            &[],
            tol,
        )?;
        Ok(scale * value)
    }

    /// `w1` integral over `[w1_lo, w1_hi]` (already clipped against the
    /// Gaussian window) at fixed `eta`.
    fn w1_integral(&self, eta: f64, w1_lo: f64, w1_hi: f64, tol: Tolerance) -> Result<f64> {
        if w1_lo >= w1_hi {
            return Ok(0.0);
        }
        let slope_b = self.slope_b(eta);
        // Slope limits clamp against the w2 window at these w1; the integrand
        // has derivative kinks there.
        let mut kinks = [0.0f64; 2];
        let mut n_kinks = 0;
        if slope_b.is_finite() && slope_b > 0.0 {
            kinks[n_kinks] = (self.v_c + self.radius) / slope_b;
            n_kinks += 1;
        }
        if self.slope_a > 0.0 && self.v_c > self.radius {
            kinks[n_kinks] = (self.v_c - self.radius) / self.slope_a;
            n_kinks += 1;
        }
        let err = RefCell::new(None);
        let value = integrate(
            |w1| record_err(&err, self.inner_w2(w1, slope_b, tol.inner())),
            w1_lo,
            w1_hi,
            &kinks[..n_kinks],
            tol,
        )?;
        take_err(err, value)
    }
}

/// Graded breakpoints for the arm-coordinate integral, clustered toward the
/// vertex where the upper slope varies fastest.
fn eta_breakpoints(length: f64, panels: usize) -> Vec<f64> {
    (1..panels)
        .map(|j| {
            let s = j as f64 / panels as f64;
            length * s * s
        })
        .collect()
}

/// Which `w1` window the arm-coordinate integral runs over.
#[derive(Clone, Copy)]
enum W1Window {
    /// Full recollision region for `t -> inf`: `w1 in (0, cap]`.
    Unbounded,
    /// Recollision region at finite time: `w1 >= eta * T`.
    AboveThreshold { t_param: f64 },
    /// Deficit region: `w1 <= eta * T` (the whole region when `t_param` is infinite).
    BelowThreshold { t_param: f64 },
}

fn region_integral(
    v_body: f64,
    window: W1Window,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    let frame = WFrame::new(v_body, cfg, gas, spec);
    let w1_cap = frame.v_p + frame.radius;
    let tol = spec.tolerance();
    let breaks = eta_breakpoints(cfg.length(), spec.eta_panels);

    let err = RefCell::new(None);
    let value = integrate(
        |eta| {
            let (lo, hi) = match window {
                W1Window::Unbounded => (0.0, w1_cap),
                W1Window::AboveThreshold { t_param } => (t_param * eta, w1_cap),
                W1Window::BelowThreshold { t_param } => {
                    if t_param.is_infinite() {
                        (0.0, w1_cap)
                    } else {
                        (0.0, (t_param * eta).min(w1_cap))
                    }
                }
            };
            record_err(&err, frame.w1_integral(eta, lo, hi, tol.inner()))
        },
        0.0,
        cfg.length(),
        &breaks,
        tol,
    )?;
    let value = take_err(err, value)?;
    Ok(4.0 * gas.k() * cfg.theta().sin() * value)
}

fn check_v_arg(v_body: f64) -> Result<()> {
    if !v_body.is_finite() || v_body < 0.0 {
        return Err(Error::InvalidParam(format!(
            "recollision functionals require V >= 0, got {v_body}"
        )));
    }
    Ok(())
}

fn check_g_args(v_body: f64, t: f64) -> Result<()> {
    check_v_arg(v_body)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParam(format!(
            "elapsed time must be nonnegative and finite, got {t}"
        )));
    }
    Ok(())
}

/// Recollision-free friction `F0(V)`, by 2D quadrature of the two signed
/// half-space integrals in unrotated velocity coordinates. Defined (and odd)
/// for all `V`.
pub fn friction_f0(
    v_body: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if !v_body.is_finite() {
        return Err(Error::InvalidParam(format!(
            "body velocity must be finite, got {v_body}"
        )));
    }
    let beta = gas.beta();
    let (sin_t, cos_t) = (cfg.theta().sin(), cfg.theta().cos());
    let v_shift = v_body * sin_t;
    let radius = (spec.velocity_cutoff_sigmas + 1.0) / beta.sqrt();
    let tol = spec.tolerance();

    let weight = move |x: f64, y: f64| {
        let u = x * sin_t - y * cos_t - v_shift;
        u * u * (-beta * (x * x + y * y)).exp()
    };

    // The sign of v'.n flips across the line y = (x sin - Vs)/cos; split the
    // inner integral there. The outer interval is pre-split where that line
    // enters and leaves the truncation box.
    let x_enter = (v_shift - radius * cos_t) / sin_t;
    let x_exit = (v_shift + radius * cos_t) / sin_t;

    let err = RefCell::new(None);
    let value = integrate(
        |x| {
            let y_split = ((x * sin_t - v_shift) / cos_t).clamp(-radius, radius);
            let incoming = integrate(|y| weight(x, y), y_split, radius, &[], tol.inner());
            let outgoing = integrate(|y| weight(x, y), -radius, y_split, &[], tol.inner());
            record_err(&err, incoming) - record_err(&err, outgoing)
        },
        -radius,
        radius,
        &[x_enter, x_exit],
        tol,
    )?;
    let value = take_err(err, value)?;
    Ok(4.0 * gas.k() * cfg.length() * sin_t * value)
}

/// Recollision correction `g(V, t) >= 0`. Zero at `V = 0` (the Boltzmann
/// bracket vanishes) and at `t = 0` (empty region); grows monotonically to
/// [`friction_g_inf`] as `t -> inf`.
pub fn friction_g(
    v_body: f64,
    t: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_g_args(v_body, t)?;
    if t == 0.0 {
        spec.validate()?;
        return Ok(0.0);
    }
    let t_param = cfg.decay_parameter(t);
    region_integral(v_body, W1Window::AboveThreshold { t_param }, cfg, gas, spec)
}

/// Long-time recollision correction `g_inf(V)`, the integral over the full
/// recollision cone.
pub fn friction_g_inf(
    v_body: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_v_arg(v_body)?;
    region_integral(v_body, W1Window::Unbounded, cfg, gas, spec)
}

/// Deficit `delta_g(V, t) = g_inf(V) - g(V, t)`, integrated directly over the
/// complement region in the rotated frame. At `t = 0` the whole cone is
/// deficit and this equals `g_inf(V)`.
pub fn delta_g_direct(
    v_body: f64,
    t: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_g_args(v_body, t)?;
    let t_param = if t == 0.0 {
        f64::INFINITY
    } else {
        cfg.decay_parameter(t)
    };
    region_integral(v_body, W1Window::BelowThreshold { t_param }, cfg, gas, spec)
}

/// The deficit region at fixed `eta` is the triangle with vertices at the
/// origin and the two intersections of the threshold line with the cone
/// edges, here in unrotated `v'` coordinates.
fn deficit_triangle(eta: f64, t_param: f64, cfg: &WedgeConfig) -> [Vec2; 3] {
    let (s, c) = cfg.theta().sin_cos();
    let sin2t = (2.0 * cfg.theta()).sin();
    let length = cfg.length();
    let on_arm = t_param * eta / sin2t;
    let on_chord = t_param / sin2t;
    [
        Vec2::new(0.0, 0.0),
        Vec2::new(on_arm * c, on_arm * s),
        Vec2::new(
            -on_chord * (length - eta) * c,
            on_chord * (eta + length) * s,
        ),
    ]
}

fn edge_y_at(p: Vec2, q: Vec2, x: f64) -> f64 {
    p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x)
}

/// Deficit `delta_g(V, t)` evaluated in unrotated Cartesian velocity
/// coordinates by slicing the deficit triangle vertically: an independent
/// algebraic route to [`delta_g_direct`] (the rotation has unit Jacobian, so
/// the two must agree to quadrature tolerance).
pub fn delta_g_raw(
    v_body: f64,
    t: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_g_args(v_body, t)?;
    spec.validate()?;
    let t_param = if t == 0.0 {
        f64::INFINITY
    } else {
        cfg.decay_parameter(t)
    };
    if !t_param.is_finite() {
        // The triangle degenerates only for finite thresholds; fall back to
        // the full-cone integral.
        return region_integral(v_body, W1Window::Unbounded, cfg, gas, spec);
    }
    let beta = gas.beta();
    let fr = frame_vectors(cfg);
    let v_p = v_body * cfg.theta().sin();
    let tol = spec.tolerance();
    let breaks = eta_breakpoints(cfg.length(), spec.eta_panels);

    // (v'.n)^2 e^{-beta (v'+V)^2} [e^{4 beta Vp v'.p} - 1], with both
    // exponentials kept in a combined, overflow-free form.
    let raw_integrand = move |x: f64, y: f64| {
        let vn = x * fr.n_hat.x + y * fr.n_hat.y;
        let vp = x * fr.p_hat.x + y * fr.p_hat.y;
        let xs = x + v_body;
        let base = -beta * (xs * xs + y * y);
        let boost = 4.0 * beta * v_p * vp;
        vn * vn * (base + boost).exp() * (-f64::exp_m1(-boost))
    };

    let err = RefCell::new(None);
    let value = integrate(
        |eta| {
            let mut vs = deficit_triangle(eta, t_param, cfg);
            vs.sort_by(|p, q| p.x.total_cmp(&q.x));
            let [a, b, c] = vs;
            let mut strips = 0.0;
            for (x_lo, x_hi) in [(a.x, b.x), (b.x, c.x)] {
                if x_hi <= x_lo {
                    continue;
                }
                let first_strip = x_lo == a.x && x_hi == b.x;
                let strip = integrate(
                    |x| {
                        let y_long = edge_y_at(a, c, x);
                        let y_short = if first_strip {
                            edge_y_at(a, b, x)
                        } else {
                            edge_y_at(b, c, x)
                        };
                        let (y_lo, y_hi) = if y_long < y_short {
                            (y_long, y_short)
                        } else {
                            (y_short, y_long)
                        };
                        record_err(
                            &err,
                            integrate(
                                |y| raw_integrand(x, y),
                                y_lo,
                                y_hi,
                                &[],
                                tol.inner().inner(),
                            ),
                        )
                    },
                    x_lo,
                    x_hi,
                    &[],
                    tol.inner(),
                );
                strips += record_err(&err, strip);
            }
            strips
        },
        0.0,
        cfg.length(),
        &breaks,
        tol,
    )?;
    let value = take_err(err, value)?;
    Ok(4.0 * gas.k() * cfg.theta().sin() * value)
}

/// Derivative of the deficit with respect to the decay parameter,
/// `d(delta_g)/dT = -dg/dT`: a single arm-coordinate integral of the rotated
/// integrand evaluated on the threshold line `w1 = eta T`. Strictly positive
/// for `V > 0`, `T > 0`; identically zero at `V = 0`.
pub fn delta_g_dt_param(
    v_body: f64,
    t_param: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_v_arg(v_body)?;
    if t_param <= 0.0 || !t_param.is_finite() {
        return Err(Error::InvalidParam(format!(
            "decay parameter must be positive and finite, got {t_param}"
        )));
    }
    spec.validate()?;
    let frame = WFrame::new(v_body, cfg, gas, spec);
    let tol = spec.tolerance();
    let breaks = eta_breakpoints(cfg.length(), spec.eta_panels);

    let err = RefCell::new(None);
    let value = integrate(
        |eta| {
            let w1 = t_param * eta;
            if w1 > frame.v_p + frame.radius {
                return 0.0;
            }
            eta * record_err(&err, frame.inner_w2(w1, frame.slope_b(eta), tol.inner()))
        },
        0.0,
        cfg.length(),
        &breaks,
        tol,
    )?;
    let value = take_err(err, value)?;
    Ok(4.0 * gas.k() * cfg.theta().sin() * value)
}

/// All friction functionals at one `(V, t)` point. `delta_g` is evaluated by
/// its own quadrature, so `delta_g = g_inf - g` holds only to quadrature
/// tolerance and is re-checked here.
pub fn friction_breakdown(
    v_body: f64,
    t: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    spec: &QuadratureSpec,
) -> Result<FrictionBreakdown> {
    let f0 = friction_f0(v_body, cfg, gas, spec)?;
    let g = friction_g(v_body, t, cfg, gas, spec)?;
    let g_inf = friction_g_inf(v_body, cfg, gas, spec)?;
    let delta_g = delta_g_direct(v_body, t, cfg, gas, spec)?;

    let slack = 1e3 * (spec.rel_tol * g_inf.abs() + spec.abs_tol);
    if g < -slack || g > g_inf + slack {
        return Err(Error::QuadratureNonConvergence {
            estimate: g,
            residual: (g - g_inf).max(-g),
        });
    }
    if (delta_g - (g_inf - g)).abs() > slack.max(1e-6 * delta_g.abs()) {
        return Err(Error::QuadratureNonConvergence {
            estimate: delta_g,
            residual: (delta_g - (g_inf - g)).abs(),
        });
    }
    Ok(FrictionBreakdown {
        f0,
        g,
        g_inf,
        delta_g,
        fv_total: f0 + g,
    })
}
