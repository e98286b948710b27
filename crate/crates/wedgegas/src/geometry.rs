//! Body geometry, frame vectors, elastic-collision laws, recollision-region
//! membership, and the backward ray trace that serves as ground truth for both.
//!
//! The body is a wedge of two straight arms of length `L` meeting at the
//! vertex, tilted at `+theta` (upper arm) and `-theta` (lower arm) to the
//! direction of motion, hollow side facing forward. All routines here work in
//! the body frame, where the arms are the fixed segments
//! `C+ = {(eta cos t, eta sin t)}` and `C- = {(eta cos t, -eta sin t)}`,
//! `eta in [0, L]`, and a gas particle with lab velocity `v` moves with
//! `v' = v - V x_hat`.
//!
//! The body's mass is taken as infinite relative to a gas particle, so a
//! collision never alters the body velocity: reflections are specular in the
//! body frame.

use crate::error::{Error, Result};

/// 2D vector; velocity components in units of the thermal scale `1/sqrt(beta)`
/// or positions in units of the arm length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    #[inline]
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.x, s * self.y)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Wedge body: half-angle `theta` between the direction of motion and the
/// upper arm, and arm length `length`.
///
/// `theta` is restricted to `[pi/4, pi/2)`; below `pi/4` a trapped particle
/// can bounce more than once between the arms and the single-recollision
/// analysis no longer applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeConfig {
    theta: f64,
    length: f64,
}

impl WedgeConfig {
    pub fn new(theta: f64, length: f64) -> Result<Self> {
        if !theta.is_finite()
            || !(std::f64::consts::FRAC_PI_4..std::f64::consts::FRAC_PI_2).contains(&theta)
        {
            return Err(Error::InvalidParam(format!(
                "wedge half-angle must lie in [pi/4, pi/2) radians, got {theta}"
            )));
        }
        if !length.is_finite() || length <= 0.0 {
            return Err(Error::InvalidParam(format!(
                "arm length must be positive and finite, got {length}"
            )));
        }
        Ok(Self { theta, length })
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    /// The decay parameter `T = sin(2 theta) / t` used for the long-time
    /// analysis. The single source of truth for the `t <-> T` substitution.
    #[inline]
    pub fn decay_parameter(&self, t: f64) -> f64 {
        (2.0 * self.theta).sin() / t
    }

    /// Inverse of [`decay_parameter`](Self::decay_parameter): `t = sin(2 theta) / T`.
    #[inline]
    pub fn time_from_decay_parameter(&self, t_param: f64) -> f64 {
        (2.0 * self.theta).sin() / t_param
    }
}

/// Unit vectors attached to the body.
///
/// `n_hat` and `p_hat` are the forward-facing normals of the upper and lower
/// arm; `p_perp_hat` is the upward tangent of the lower-arm plane;
/// `phi = pi/2 - theta` is the rotation angle that maps `p_hat` to `x_hat`.
#[derive(Debug, Clone, Copy)]
pub struct FrameVectors {
    pub n_hat: Vec2,
    pub p_hat: Vec2,
    pub p_perp_hat: Vec2,
    pub phi: f64,
}

/// Slopes and threshold describing the time-deficit velocity region in the
/// rotated frame `w = (v'.p_hat, v'.p_perp_hat)`:
/// `{ 0 <= w1 <= threshold, a w1 < w2 < b w1 }`.
#[derive(Debug, Clone, Copy)]
pub struct RegionBounds {
    /// Lower slope `a = tan(2 theta - pi/2) >= 0`.
    pub a: f64,
    /// Upper slope `b = (L - eta cos 2theta) / (eta sin 2theta)`. At the wedge
    /// vertex (`eta = 0`) there is no finite upper slope and `b` is
    /// `f64::INFINITY`.
    pub b: f64,
    /// `threshold = eta sin(2 theta) / t`, the largest reachable `w1`.
    pub threshold: f64,
}

/// Outcome of tracing a surface impact backward in time.
#[derive(Debug, Clone, Copy)]
pub struct TraceResult {
    /// Whether the backward trajectory includes a prior bounce off the lower arm.
    pub recollided: bool,
    /// Lab-frame velocity at time 0. Equals the input velocity exactly when
    /// `recollided` is false.
    pub v0: Vec2,
    /// Arm coordinate of the prior bounce on the lower arm, when it exists.
    pub recollision_point_eta: Option<f64>,
}

/// Forward-facing normals and rotation angle for the wedge.
pub fn frame_vectors(cfg: &WedgeConfig) -> FrameVectors {
    let (s, c) = cfg.theta.sin_cos();
    FrameVectors {
        n_hat: Vec2::new(s, -c),
        p_hat: Vec2::new(s, c),
        p_perp_hat: Vec2::new(-c, s),
        phi: std::f64::consts::FRAC_PI_2 - cfg.theta,
    }
}

/// Unit vector orthogonal to the chord from the upper-arm point at `eta` to
/// the lower-arm tip, oriented so that `psi_hat . n_hat > 0`. Proportional to
/// `((eta + L) sin theta, (L - eta) cos theta)`.
///
/// A velocity `v'` points from the lower arm toward the impact point iff
/// `v' . psi_hat > 0`.
pub fn psi_hat(cfg: &WedgeConfig, eta: f64) -> Result<Vec2> {
    if !(0.0..=cfg.length).contains(&eta) {
        return Err(Error::InvalidParam(format!(
            "arm coordinate eta must lie in [0, {}], got {eta}",
            cfg.length
        )));
    }
    let (s, c) = cfg.theta.sin_cos();
    let raw = Vec2::new((eta + cfg.length) * s, (cfg.length - eta) * c);
    Ok(raw.scale(1.0 / raw.norm()))
}

/// Elastic reflection of a gas particle off a wall with unit normal `n_hat`
/// carried by a body moving at `v_body` along x. The normal component becomes
/// `2 V_N - v_N` with `V_N = v_body (n_hat . x_hat)`; the tangential component
/// is preserved exactly.
pub fn reflect(v: Vec2, v_body: f64, n_hat: Vec2) -> Vec2 {
    let v_n = v.dot(n_hat);
    let wall_n = v_body * n_hat.x;
    let out_n = 2.0 * wall_n - v_n;
    v + n_hat.scale(out_n - v_n)
}

/// Squared speed at time 0 of a particle observed at the upper arm with lab
/// velocity `v` after one prior bounce off the lower arm:
/// `v0^2 = v^2 - 4 V_p (v - V x_hat) . p_hat` with `V_p = v_body sin theta`.
///
/// The formula is evaluated for any input; it describes a physical
/// pre-collision speed only when `v` lies in the recollision region.
pub fn precollision_speed_sq(v: Vec2, v_body: f64, cfg: &WedgeConfig) -> f64 {
    let fr = frame_vectors(cfg);
    let v_p = v_body * cfg.theta.sin();
    let v_rel = v - Vec2::new(v_body, 0.0);
    v.norm_sq() - 4.0 * v_p * v_rel.dot(fr.p_hat)
}

/// Rotated-frame slopes and `w1` threshold for the deficit region at arm
/// coordinate `eta` and elapsed time `t`.
pub fn region_bounds(cfg: &WedgeConfig, eta: f64, t: f64) -> Result<RegionBounds> {
    if !(0.0..=cfg.length).contains(&eta) {
        return Err(Error::InvalidParam(format!(
            "arm coordinate eta must lie in [0, {}], got {eta}",
            cfg.length
        )));
    }
    if t <= 0.0 || t.is_nan() {
        return Err(Error::InvalidParam(format!(
            "time must be positive, got {t}"
        )));
    }
    let two_theta = 2.0 * cfg.theta;
    let a = (two_theta - std::f64::consts::FRAC_PI_2).tan();
    let b = if eta == 0.0 {
        f64::INFINITY
    } else {
        (cfg.length - eta * two_theta.cos()) / (eta * two_theta.sin())
    };
    Ok(RegionBounds {
        a,
        b,
        threshold: eta * two_theta.sin() / t,
    })
}

/// Membership test for the exact recollision region at arm coordinate `eta`
/// and elapsed time `t`: with `v' = v - v_body x_hat`,
/// `v'.n_hat < 0`, `v'.psi_hat > 0` and `v'.p_hat >= (eta/t) sin(2 theta)`.
///
/// Boundary cases follow the literal inequality signs; the boundary sets have
/// measure zero and cannot affect integrals. `t = 0` yields `false` (the
/// region is empty).
pub fn in_recollision_region(cfg: &WedgeConfig, eta: f64, t: f64, v: Vec2, v_body: f64) -> bool {
    if t <= 0.0 {
        return false;
    }
    let fr = frame_vectors(cfg);
    // psi_hat direction; normalization is irrelevant for the sign test.
    let (s, c) = cfg.theta.sin_cos();
    let psi = Vec2::new((eta + cfg.length) * s, (cfg.length - eta) * c);
    let v_rel = v - Vec2::new(v_body, 0.0);
    v_rel.dot(fr.n_hat) < 0.0
        && v_rel.dot(psi) > 0.0
        && v_rel.dot(fr.p_hat) >= eta * (2.0 * cfg.theta).sin() / t
}

/// Intersection of the backward ray `origin - dir * tau` (`tau > 0`) with the
/// segment from the body vertex to `tip`, by solving the 2x2 system
/// `dir * tau + tip * s = origin`. Returns `(tau, s)` when `tau > 0` and
/// `s in [0, 1]`.
fn backward_ray_segment_hit(origin: Vec2, dir: Vec2, tip: Vec2) -> Option<(f64, f64)> {
    let det = dir.x * tip.y - tip.x * dir.y;
    if det == 0.0 {
        return None;
    }
    let tau = (origin.x * tip.y - tip.x * origin.y) / det;
    let s = (dir.x * origin.y - origin.x * dir.y) / det;
    if tau > 0.0 && (0.0..=1.0).contains(&s) {
        Some((tau, s))
    } else {
        None
    }
}

/// Trace a particle that strikes the upper arm at coordinate `eta` at time `t`
/// with incoming lab velocity `v` (`v'.n_hat < 0`) backward to time 0 in the
/// body frame, against the two arm segments only (the body has zero
/// thickness).
///
/// If the straight backward ray meets the lower arm within the elapsed time,
/// the reflection law is applied once and the reconstructed pre-collision
/// velocity is reported; otherwise `v0 = v`. The trace then verifies that no
/// further reflection occurs on either arm, returning
/// [`Error::MultipleRecollisions`] if one is found (for `theta in
/// [pi/4, pi/2)` this cannot happen; it is checked, not assumed).
///
/// This routine is pure ray tracing: it never consults the inequality
/// characterization in [`in_recollision_region`], which makes the two
/// independent answers comparable.
pub fn backward_trace(
    cfg: &WedgeConfig,
    eta: f64,
    v: Vec2,
    v_body: f64,
    t: f64,
) -> Result<TraceResult> {
    let fr = frame_vectors(cfg);
    let v_rel = v - Vec2::new(v_body, 0.0);
    let v_dot_n = v_rel.dot(fr.n_hat);
    if v_dot_n >= 0.0 {
        return Err(Error::NonIncomingVelocity { v_dot_n });
    }

    let (s, c) = cfg.theta.sin_cos();
    let impact = Vec2::new(eta * c, eta * s);
    let lower_tip = Vec2::new(cfg.length * c, -cfg.length * s);
    let upper_tip = Vec2::new(cfg.length * c, cfg.length * s);

    // First backward leg: the ray leaves the upper-arm plane immediately
    // (v'.n < 0), so only the lower arm can be hit.
    let hit = backward_ray_segment_hit(impact, v_rel, lower_tip).filter(|&(tau, _)| tau <= t);

    let Some((tau, seg_s)) = hit else {
        return Ok(TraceResult {
            recollided: false,
            v0: v,
            recollision_point_eta: None,
        });
    };

    // Reflect backward through the lower-arm bounce: the pre-collision
    // body-frame velocity is the mirror image of v' across the lower arm.
    let v0_rel = v_rel - fr.p_hat.scale(2.0 * v_rel.dot(fr.p_hat));
    let v0 = v0_rel + Vec2::new(v_body, 0.0);

    // Second backward leg: from the bounce point with the pre-collision
    // velocity for the remaining time. The mirrored velocity satisfies
    // v0'.p = -(v'.p) < 0, so the ray leaves the lower-arm plane for good and
    // only the upper arm could be struck again.
    let bounce = impact - v_rel.scale(tau);
    let remaining = t - tau;
    let second =
        backward_ray_segment_hit(bounce, v0_rel, upper_tip).filter(|&(tau2, _)| tau2 <= remaining);
    if second.is_some() {
        return Err(Error::MultipleRecollisions {
            eta,
            theta: cfg.theta,
        });
    }

    Ok(TraceResult {
        recollided: true,
        v0,
        recollision_point_eta: Some(seg_s * cfg.length),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, SQRT_2};

    fn cfg(theta: f64) -> WedgeConfig {
        WedgeConfig::new(theta, 1.0).unwrap()
    }

    #[test]
    fn config_rejects_bad_angles_and_lengths() {
        assert!(WedgeConfig::new(FRAC_PI_4 - 1e-9, 1.0).is_err());
        assert!(WedgeConfig::new(std::f64::consts::FRAC_PI_2, 1.0).is_err());
        assert!(WedgeConfig::new(FRAC_PI_3, 0.0).is_err());
        assert!(WedgeConfig::new(FRAC_PI_3, -1.0).is_err());
        assert!(WedgeConfig::new(f64::NAN, 1.0).is_err());
        assert!(WedgeConfig::new(FRAC_PI_4, 1.0).is_ok());
    }

    #[test]
    fn frame_vectors_match_hand_values() {
        let fr = frame_vectors(&cfg(FRAC_PI_4));
        assert!((fr.n_hat.x - SQRT_2 / 2.0).abs() < 1e-15);
        assert!((fr.n_hat.y + SQRT_2 / 2.0).abs() < 1e-15);
        assert!((fr.p_hat.x - SQRT_2 / 2.0).abs() < 1e-15);
        assert!((fr.p_hat.y - SQRT_2 / 2.0).abs() < 1e-15);

        let fr = frame_vectors(&cfg(FRAC_PI_3));
        assert!((fr.n_hat.x - 3.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((fr.n_hat.y + 0.5).abs() < 1e-15);
    }

    #[test]
    fn frame_vectors_are_unit_and_orthogonal_to_arms() {
        for &theta in &[FRAC_PI_4, FRAC_PI_3, 1.2, 1.45, 1.55] {
            let c = cfg(theta);
            let fr = frame_vectors(&c);
            assert!((fr.n_hat.norm() - 1.0).abs() < 1e-15);
            assert!((fr.p_hat.norm() - 1.0).abs() < 1e-15);
            assert!((fr.p_perp_hat.norm() - 1.0).abs() < 1e-15);
            let upper_dir = Vec2::new(theta.cos(), theta.sin());
            assert!(fr.n_hat.dot(upper_dir).abs() < 1e-15);
            assert!(fr.n_hat.x > 0.0 && fr.p_hat.x > 0.0);
            assert!((fr.phi - (std::f64::consts::FRAC_PI_2 - theta)).abs() < 1e-15);
        }
    }

    #[test]
    fn psi_hat_endpoint_values() {
        let c = cfg(FRAC_PI_3);
        let fr = frame_vectors(&c);
        let at_vertex = psi_hat(&c, 0.0).unwrap();
        assert!((at_vertex - fr.p_hat).norm() < 1e-15);
        let at_tip = psi_hat(&c, 1.0).unwrap();
        assert!((at_tip - Vec2::new(1.0, 0.0)).norm() < 1e-15);

        let c = cfg(FRAC_PI_4);
        let mid = psi_hat(&c, 0.5).unwrap();
        let expected = Vec2::new(3.0, 1.0).scale(1.0 / 10.0f64.sqrt());
        assert!((mid - expected).norm() < 1e-15);

        assert!(psi_hat(&c, -0.1).is_err());
        assert!(psi_hat(&c, 1.1).is_err());
    }

    #[test]
    fn psi_hat_orthogonal_to_chord_on_grid() {
        for &theta in &[FRAC_PI_4, FRAC_PI_3, 1.45] {
            let c = cfg(theta);
            let tip = Vec2::new(theta.cos(), -theta.sin());
            for i in 0..=1000 {
                let eta = i as f64 / 1000.0;
                let ps = psi_hat(&c, eta).unwrap();
                let impact = Vec2::new(eta * theta.cos(), eta * theta.sin());
                assert!(
                    ps.dot(tip - impact).abs() < 1e-12,
                    "theta={theta} eta={eta}"
                );
                assert!(ps.dot(frame_vectors(&c).n_hat) >= -1e-15);
            }
        }
    }

    #[test]
    fn reflect_hand_values() {
        let n = Vec2::new(1.0, 0.0);
        let w = reflect(Vec2::new(-1.0, 0.0), 0.0, n);
        assert_eq!(w, Vec2::new(1.0, 0.0));

        let w = reflect(Vec2::new(-1.0, 3.0), 1.0, n);
        assert_eq!(w, Vec2::new(3.0, 3.0));

        let w = reflect(Vec2::new(0.0, 1.0), 0.0, n);
        assert_eq!(w, Vec2::new(0.0, 1.0));
    }

    #[test]
    fn reflect_fixed_wall_preserves_speed_axis_aligned() {
        let n = Vec2::new(1.0, 0.0);
        let v = Vec2::new(-0.3, 1.7);
        let w = reflect(v, 0.0, n);
        assert_eq!(w.norm_sq(), v.norm_sq());
    }

    #[test]
    fn precollision_speed_hand_value() {
        let c = cfg(FRAC_PI_4);
        assert!((precollision_speed_sq(Vec2::new(2.0, 0.0), 1.0, &c) - 2.0).abs() < 1e-14);
        // V = 0 returns |v|^2 exactly.
        let v = Vec2::new(0.37, -1.21);
        assert_eq!(precollision_speed_sq(v, 0.0, &c), v.norm_sq());
    }

    #[test]
    fn region_bounds_hand_values() {
        let c = cfg(FRAC_PI_4);
        let rb = region_bounds(&c, 0.5, 1.0).unwrap();
        assert!(rb.a.abs() < 1e-15);
        assert!((rb.b - 2.0).abs() < 1e-14);
        assert!((rb.threshold - 0.5).abs() < 1e-15);

        let rb = region_bounds(&c, 0.0, 1.0).unwrap();
        assert!(rb.b.is_infinite());
        assert_eq!(rb.threshold, 0.0);

        assert!(region_bounds(&c, 0.5, 0.0).is_err());
        assert!(region_bounds(&c, 2.0, 1.0).is_err());
    }

    #[test]
    fn region_membership_hand_case() {
        let c = cfg(FRAC_PI_4);
        assert!(in_recollision_region(
            &c,
            0.5,
            1.0,
            Vec2::new(0.1, 2.0),
            0.0
        ));
        // A velocity along the upper arm sits on the n-boundary (v'.n = 0
        // exactly, even in floats): excluded by the strict sign. At the
        // boundary angle pi/4 this is the direction of p_hat.
        let along_arm = Vec2::new(FRAC_PI_4.cos(), FRAC_PI_4.sin()).scale(3.0);
        assert!(!in_recollision_region(&c, 0.5, 1.0, along_arm, 0.0));
        // Vanishing elapsed time empties the region.
        assert!(!in_recollision_region(
            &c,
            0.5,
            0.0,
            Vec2::new(0.1, 2.0),
            0.0
        ));
        assert!(!in_recollision_region(
            &c,
            0.5,
            1e-300,
            Vec2::new(0.1, 2.0),
            0.0
        ));
    }

    #[test]
    fn backward_trace_hand_cases() {
        let c = cfg(FRAC_PI_4);
        // Incoming but pointing away from the lower arm: no recollision.
        let v = Vec2::new(-2.0, 0.1);
        let tr = backward_trace(&c, 0.5, v, 0.0, 10.0).unwrap();
        assert!(!tr.recollided);
        assert_eq!(tr.v0, v);

        // The region-membership positive example recollides and, with a
        // stationary body, preserves speed.
        let v = Vec2::new(0.1, 2.0);
        let tr = backward_trace(&c, 0.5, v, 0.0, 1.0).unwrap();
        assert!(tr.recollided);
        assert!((tr.v0.norm_sq() - v.norm_sq()).abs() < 1e-14);
        let eta_hit = tr.recollision_point_eta.unwrap();
        assert!((0.0..=1.0).contains(&eta_hit));

        // Outgoing velocity violates the contract.
        assert!(matches!(
            backward_trace(&c, 0.5, Vec2::new(3.0, 0.0), 0.0, 1.0),
            Err(Error::NonIncomingVelocity { .. })
        ));
    }

    #[test]
    fn traced_speed_matches_formula_with_moving_body() {
        let c = cfg(FRAC_PI_3);
        let v_body = 0.7;
        let v = Vec2::new(1.0, 1.9);
        let tr = backward_trace(&c, 0.4, v, v_body, 50.0).unwrap();
        assert!(tr.recollided);
        let expected = precollision_speed_sq(v, v_body, &c);
        assert!((tr.v0.norm_sq() - expected).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution_in_the_body_frame(
            vx in -5.0f64..5.0, vy in -5.0f64..5.0,
            v_body in -2.0f64..2.0,
            theta in FRAC_PI_4..1.57f64,
        ) {
            let n = Vec2::new(theta.sin(), -theta.cos());
            let v = Vec2::new(vx, vy);
            let back = reflect(reflect(v, v_body, n), v_body, n);
            prop_assert!((back - v).norm() < 1e-14);
        }

        #[test]
        fn reflect_fixed_wall_preserves_speed(
            vx in -5.0f64..5.0, vy in -5.0f64..5.0,
            theta in FRAC_PI_4..1.57f64,
        ) {
            let n = Vec2::new(theta.sin(), -theta.cos());
            let v = Vec2::new(vx, vy);
            let w = reflect(v, 0.0, n);
            prop_assert!((w.norm_sq() - v.norm_sq()).abs() <= 1e-14 * (1.0 + v.norm_sq()));
        }

        #[test]
        fn precollision_speed_matches_componentwise_reconstruction(
            vx in -4.0f64..4.0, vy in -4.0f64..4.0,
            v_body in 0.0f64..3.0,
            theta in FRAC_PI_4..1.57f64,
        ) {
            let c = WedgeConfig::new(theta, 1.0).unwrap();
            let fr = frame_vectors(&c);
            let v = Vec2::new(vx, vy);
            let v_p = v_body * theta.sin();
            let v0p = 2.0 * v_p - v.dot(fr.p_hat);
            let v0perp = v.dot(fr.p_perp_hat);
            let reconstructed = v0p * v0p + v0perp * v0perp;
            prop_assert!((precollision_speed_sq(v, v_body, &c) - reconstructed).abs() < 1e-12);
        }

        #[test]
        fn recollision_regions_grow_with_time(
            vx in -4.0f64..4.0, vy in -4.0f64..4.0,
            v_body in 0.0f64..2.0,
            theta in FRAC_PI_4..1.57f64,
            eta in 0.0f64..1.0,
            t1 in 0.01f64..50.0,
            factor in 1.0f64..100.0,
        ) {
            let c = WedgeConfig::new(theta, 1.0).unwrap();
            let v = Vec2::new(vx, vy);
            if in_recollision_region(&c, eta, t1, v, v_body) {
                prop_assert!(in_recollision_region(&c, eta, t1 * factor, v, v_body));
            }
        }

        #[test]
        fn region_upper_slope_dominates_tangent(
            theta in FRAC_PI_4..1.57f64,
            eta in 1e-6f64..1.0,
            t in 0.01f64..100.0,
        ) {
            let c = WedgeConfig::new(theta, 1.0).unwrap();
            let rb = region_bounds(&c, eta, t).unwrap();
            prop_assert!(rb.b >= theta.tan() - 1e-12);
            prop_assert!(rb.b > rb.a);
            prop_assert!(rb.a >= 0.0);
        }
    }
}
