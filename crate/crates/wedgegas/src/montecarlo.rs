//! Monte Carlo estimator of the friction `F^V(t)` that resolves pre-collision
//! velocities exclusively by backward ray tracing, plus an audit that compares
//! the traced answer against the analytic recollision inequalities.
//!
//! The estimator is the anti-circular cross-check for the quadrature module:
//! nothing here evaluates the region inequalities when computing a weight.
//! Impact points are stratified along the arm; velocities are drawn from the
//! unshifted Maxwellian and reweighted by `exp(beta (v^2 - v0^2))` where `v0`
//! comes from the trace, keeping all weights integrable against the proposal.
//!
//! Randomness is counter-based: one ChaCha stream per stratum shard, derived
//! from the seed and the shard index, so results are bit-identical regardless
//! of how many threads execute the shards.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{
    backward_trace, frame_vectors, in_recollision_region, psi_hat, Vec2, WedgeConfig,
};
use crate::integrate::pairwise_sum;
use crate::quadrature::GasState;

/// Sampling controls. The seed fully determines the sample stream.
#[derive(Debug, Clone, Copy)]
pub struct McSpec {
    pub n_samples: usize,
    pub seed: u64,
    /// Number of equal-width strata along the arm coordinate.
    pub stratify_eta: usize,
}

impl Default for McSpec {
    fn default() -> Self {
        Self {
            n_samples: 100_000,
            seed: 0x5eed_cafe,
            stratify_eta: 16,
        }
    }
}

/// Stratified-mean estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_effective: usize,
}

struct ShardStats {
    sum: f64,
    sum_sq: f64,
    n: usize,
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64 + 1);
    rng
}

/// Unbiased estimate of `F^V(t)`.
///
/// Samples `(eta, v)` with `eta` stratified-uniform on `[0, L]` and `v` from
/// the unit Maxwellian; each sample contributes
/// `sign * (v'.n)^2 * exp(beta (v^2 - v0^2))` where the sign follows the two
/// half-space integrals of the friction functional and `v0` is the traced
/// time-zero velocity (`v0 = v` whenever the trace finds no prior bounce).
pub fn estimate_friction_mc(
    v_body: f64,
    t: f64,
    cfg: &WedgeConfig,
    gas: &GasState,
    mc: &McSpec,
) -> Result<McEstimate> {
    if !v_body.is_finite() || v_body < 0.0 {
        return Err(Error::InvalidParam(format!(
            "Monte Carlo friction requires V >= 0, got {v_body}"
        )));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParam(format!(
            "elapsed time must be nonnegative and finite, got {t}"
        )));
    }
    if mc.n_samples < 2 {
        return Err(Error::InvalidParam(
            "n_samples must be at least 2 for a standard error".into(),
        ));
    }
    if mc.stratify_eta == 0 {
        return Err(Error::InvalidParam(
            "stratify_eta must be at least 1".into(),
        ));
    }

    let strata = mc.stratify_eta;
    let beta = gas.beta();
    let sigma = 1.0 / (2.0 * beta).sqrt();
    let fr = frame_vectors(cfg);
    let length = cfg.length();
    let width = length / strata as f64;

    let per = mc.n_samples / strata;
    let extra = mc.n_samples % strata;
    for stratum in 0..strata {
        if per + usize::from(stratum < extra) == 0 {
            return Err(Error::EmptyStratum {
                stratum,
                total: strata,
            });
        }
    }

    let shards: Vec<ShardStats> = (0..strata)
        .into_par_iter()
        .map(|stratum| {
            let mut rng = shard_rng(mc.seed, stratum);
            let n = per + usize::from(stratum < extra);
            let lo = stratum as f64 * width;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..n {
                let eta = lo + width * rng.random::<f64>();
                let z1: f64 = rng.sample(StandardNormal);
                let z2: f64 = rng.sample(StandardNormal);
                let v = Vec2::new(sigma * z1, sigma * z2);
                let s = (v - Vec2::new(v_body, 0.0)).dot(fr.n_hat);
                let phi = if s < 0.0 {
                    let trace = backward_trace(cfg, eta, v, v_body, t)?;
                    s * s * (beta * (v.norm_sq() - trace.v0.norm_sq())).exp()
                } else {
                    -s * s
                };
                sum += phi;
                sum_sq += phi * phi;
            }
            Ok(ShardStats { sum, sum_sq, n })
        })
        .collect::<Result<_>>()?;

    // Stratified mean with equal-width strata: weights 1/strata each; the
    // reduction order is fixed by the shard index.
    let w = 1.0 / strata as f64;
    let means: Vec<f64> = shards.iter().map(|s| w * s.sum / s.n as f64).collect();
    let variances: Vec<f64> = shards
        .iter()
        .map(|s| {
            let n = s.n as f64;
            let var = (s.sum_sq - s.sum * s.sum / n) / (n - 1.0).max(1.0);
            w * w * var.max(0.0) / n
        })
        .collect();

    let prefactor = 4.0 * gas.rho() * length * cfg.theta().sin();
    Ok(McEstimate {
        mean: prefactor * pairwise_sum(&means),
        std_error: prefactor * pairwise_sum(&variances).sqrt(),
        n_effective: mc.n_samples,
    })
}

/// Outcome of the region/trace equivalence audit.
#[derive(Debug, Clone, Copy)]
pub struct AuditReport {
    /// Samples compared (outside the boundary band).
    pub compared: usize,
    /// Samples skipped because some region inequality was within `epsilon`.
    pub skipped_boundary: usize,
    /// Samples where the analytic region and the trace disagreed.
    pub disagreements: usize,
    /// `disagreements / compared`; the contract is that this is zero.
    pub disagreement_ratio: f64,
}

/// Width of the boundary band excluded from the audit: inequality values
/// closer than this to zero are floating-point ambiguous and measure-zero.
pub const AUDIT_BOUNDARY_EPS: f64 = 1e-9;

/// Compare [`in_recollision_region`] against [`backward_trace`] on
/// `n_samples` random `(eta, v, V, t)` tuples with `V` uniform on
/// `[0, v_body_max]` and `t` log-uniform on `[t_max/1000, t_max]`.
///
/// Both answers are computed for every sample; samples within
/// [`AUDIT_BOUNDARY_EPS`] of any region inequality are excluded. Any surviving
/// disagreement is a bug in one of the two characterizations, not a tolerance
/// question.
pub fn region_agreement_audit(
    cfg: &WedgeConfig,
    v_body_max: f64,
    t_max: f64,
    n_samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    if !v_body_max.is_finite() || v_body_max < 0.0 {
        return Err(Error::InvalidParam(format!(
            "audit velocity bound must be >= 0, got {v_body_max}"
        )));
    }
    if t_max <= 0.0 || !t_max.is_finite() {
        return Err(Error::InvalidParam(format!(
            "audit time bound must be positive, got {t_max}"
        )));
    }
    let fr = frame_vectors(cfg);
    let length = cfg.length();
    let sin2t = (2.0 * cfg.theta()).sin();
    // Broad proposal so both sides of every boundary are exercised.
    let spread = 1.0f64.max(v_body_max);

    let mut rng = shard_rng(seed, 0);
    let mut compared = 0usize;
    let mut skipped = 0usize;
    let mut disagreements = 0usize;

    for _ in 0..n_samples {
        // (0, L] so the vertex itself (a measure-zero slice where the
        // inequalities are vacuous) is never sampled.
        let eta = (1.0 - rng.random::<f64>()) * length;
        let v_body = v_body_max * rng.random::<f64>();
        let t = t_max * 1e-3f64.powf(rng.random::<f64>());
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let v = Vec2::new(spread * z1, spread * z2);
        let v_rel = v - Vec2::new(v_body, 0.0);

        let c_normal = v_rel.dot(fr.n_hat);
        let c_chord = v_rel.dot(psi_hat(cfg, eta)?);
        let c_travel = v_rel.dot(fr.p_hat) - eta * sin2t / t;
        if c_normal.abs() < AUDIT_BOUNDARY_EPS
            || c_chord.abs() < AUDIT_BOUNDARY_EPS
            || c_travel.abs() < AUDIT_BOUNDARY_EPS
        {
            skipped += 1;
            continue;
        }

        let analytic = in_recollision_region(cfg, eta, t, v, v_body);
        let traced = if c_normal < 0.0 {
            backward_trace(cfg, eta, v, v_body, t)?.recollided
        } else {
            // Outgoing impacts have no backward history on the body.
            false
        };
        compared += 1;
        if analytic != traced {
            disagreements += 1;
        }
    }

    Ok(AuditReport {
        compared,
        skipped_boundary: skipped,
        disagreements,
        disagreement_ratio: if compared == 0 {
            0.0
        } else {
            disagreements as f64 / compared as f64
        },
    })
}
