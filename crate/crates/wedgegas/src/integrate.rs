//! Globally adaptive 1D quadrature on the 15-point Gauss-Kronrod rule, plus a
//! fixed-order pairwise summation used wherever partial results are reduced.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Abscissae of the 15-point Kronrod rule on [-1, 1]; odd indices are the
// embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// The Kronrod-vs-Gauss error estimate cannot certify much below
/// `50 * eps * integral(|f|)`; relative tolerances are floored here so a
/// request below the certifiable floor cannot spin the refinement loop.
pub const REL_TOL_FLOOR: f64 = 5e-14;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Integral of |f| over the panel, for the roundoff floor.
    mag: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; ties broken by the left endpoint so heap order
        // is fully deterministic.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// QUADPACK-style error rescaling from the raw Kronrod/Gauss difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_kronrod = f_center * WGK[7];
    let mut res_gauss = f_center * WG[3];
    let mut res_abs = res_kronrod.abs();
    let mut values = [0.0f64; 15];
    values[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        values[j] = f1;
        values[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }

    let err = ((res_kronrod - res_gauss) * half).abs();
    Panel {
        a,
        b,
        value: res_kronrod * half,
        error: rescale_error(err, res_abs * half.abs(), res_asc * half.abs()),
        mag: res_abs * half.abs(),
    }
}

/// Sum a slice with fixed-order pairwise recursion; the reduction order is a
/// pure function of the slice order, independent of any threading.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Requested accuracy for [`integrate`]: converged when the total error
/// estimate drops below `max(abs_tol, rel_tol * |result|)`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    /// Tolerance for one nesting level further in: a decade tighter (down to
    /// the certifiable floor), so inner evaluation noise stays below the
    /// outer error estimate.
    pub fn inner(self) -> Self {
        Self {
            rel: (self.rel / 10.0).max(REL_TOL_FLOOR),
            abs: self.abs / 10.0,
        }
    }

    #[inline]
    fn met(&self, value: f64, error: f64, mag: f64) -> bool {
        // The third term accepts roundoff-limited convergence: when the
        // integral cancels (value << integral of |f|), no amount of
        // refinement certifies errors below the f64 noise of the mass scale.
        error <= self.abs.max(self.rel * value.abs()).max(1e-13 * mag)
    }
}

const MAX_PANELS: usize = 1024;

/// Adaptive integral of `f` over `[a, b]`, with optional interior
/// `breakpoints` at which the interval is pre-split (kinks of the integrand).
///
/// Returns an error carrying the best estimate and residual if the tolerance
/// is not reached within the panel budget. The refinement loop tracks running
/// totals; the returned value is a fixed-order pairwise sum over panels in
/// left-to-right order.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<f64> {
    if a >= b {
        return Ok(0.0);
    }
    let tol = Tolerance {
        rel: tol.rel.max(REL_TOL_FLOOR),
        abs: tol.abs,
    };

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut value_sum = 0.0;
    let mut err_sum = 0.0;
    let mut mag_sum = 0.0;
    let push =
        |heap: &mut BinaryHeap<Panel>, p: Panel, vs: &mut f64, es: &mut f64, ms: &mut f64| {
            *vs += p.value;
            *es += p.error;
            *ms += p.mag;
            heap.push(p);
        };

    {
        let mut edges: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
        edges.push(a);
        for &x in breakpoints {
            if x > a && x < b {
                edges.push(x);
            }
        }
        edges.push(b);
        edges.sort_by(f64::total_cmp);
        edges.dedup();
        for pair in edges.windows(2) {
            let p = gk15(&mut f, pair[0], pair[1]);
            push(&mut heap, p, &mut value_sum, &mut err_sum, &mut mag_sum);
        }
    }

    while !tol.met(value_sum, err_sum.max(0.0), mag_sum) {
        if heap.len() >= MAX_PANELS {
            return Err(Error::QuadratureNonConvergence {
                estimate: value_sum,
                residual: err_sum,
            });
        }
        let worst = heap.pop().expect("heap is nonempty");
        value_sum -= worst.value;
        err_sum -= worst.error;
        mag_sum -= worst.mag;
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; keep its estimate.
            push(&mut heap, worst, &mut value_sum, &mut err_sum, &mut mag_sum);
            break;
        }
        let left = gk15(&mut f, worst.a, mid);
        let right = gk15(&mut f, mid, worst.b);
        push(&mut heap, left, &mut value_sum, &mut err_sum, &mut mag_sum);
        push(&mut heap, right, &mut value_sum, &mut err_sum, &mut mag_sum);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    Ok(pairwise_sum(&values))
}
