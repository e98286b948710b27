//! Acceptance suite: every release-gate property of the friction computation,
//! one test per criterion, each printing a PASS/FAIL line with its numbers.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::Instant;

use wedgegas::{
    delta_g_direct, estimate_friction_mc, fit_decay_exponent, friction_f0, friction_g,
    friction_g_inf, region_agreement_audit, solve_limiting_velocity, stationarity_obstruction_scan,
    GasState, McSpec, QuadratureSpec, WedgeConfig,
};

const PI_4: f64 = std::f64::consts::FRAC_PI_4;
const PI_3: f64 = std::f64::consts::FRAC_PI_3;

fn gas() -> GasState {
    GasState::new(1.0, 1.0).unwrap()
}

fn wedge(theta: f64) -> WedgeConfig {
    WedgeConfig::new(theta, 1.0).unwrap()
}

fn report(criterion: usize, name: &str, pass: bool, detail: &str) -> bool {
    println!(
        "[acceptance] criterion {criterion} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

/// Independent closed-form oracle for F0, from the 1D marginal reduction of
/// the half-space integrals along the arm normal:
/// `F0 = 4 rho L sin(theta) / (beta sqrt(pi)) *
///      (mu e^{-mu^2} + sqrt(pi)/2 (1 + 2 mu^2) erf(mu))`,
/// `mu = sqrt(beta) V sin(theta)`.
fn f0_closed_form(v_body: f64, cfg: &WedgeConfig, gas: &GasState) -> f64 {
    let mu = gas.beta().sqrt() * v_body * cfg.theta().sin();
    let pi_sqrt = std::f64::consts::PI.sqrt();
    4.0 * gas.rho() * cfg.length() * cfg.theta().sin() / (gas.beta() * pi_sqrt)
        * (mu * (-mu * mu).exp()
            + pi_sqrt / 2.0 * (1.0 + 2.0 * mu * mu) * statrs::function::erf::erf(mu))
}

#[test]
fn criterion_1_equilibrium_null_force() {
    let start = Instant::now();
    let (cfg, gas, spec) = (wedge(PI_3), gas(), QuadratureSpec::default());
    let mut worst: f64 = 0.0;
    for &t in &[0.0, 1.0, 10.0, 100.0] {
        let f = friction_f0(0.0, &cfg, &gas, &spec).unwrap()
            + friction_g(0.0, t, &cfg, &gas, &spec).unwrap();
        worst = worst.max(f.abs());
    }
    let pass = worst <= 1e-10;
    let detail = format!(
        "max |F^0(t)| = {worst:.2e} (tolerance 1e-10), {:.2}s",
        start.elapsed().as_secs_f64()
    );
    assert!(report(1, "equilibrium null force", pass, &detail));
}

#[test]
fn criterion_2_sandwich_and_decay_exponent() {
    let start = Instant::now();
    let (gas, spec) = (gas(), QuadratureSpec::default());
    let mut pass = true;
    let mut details = Vec::new();
    for &theta in &[PI_4, PI_3, 1.45] {
        let cfg = wedge(theta);
        for &v_body in &[0.25, 0.5, 1.0] {
            // Sandwich band over t in [1, 100].
            let band = fit_decay_exponent(v_body, &cfg, &gas, 1.0, 100.0, 13, &spec).unwrap();
            let ratio = band.c_upper / band.c_lower;
            // Exponent over t in [2, 50].
            let fit = fit_decay_exponent(v_body, &cfg, &gas, 2.0, 50.0, 16, &spec).unwrap();
            let ok = band.c_lower > 0.0 && ratio < 1e3 && (-5.3..=-4.7).contains(&fit.exponent);
            pass &= ok;
            details.push(format!(
                "theta={theta:.3} V={v_body}: exp={:.3} band=[{:.3e},{:.3e}] ratio={ratio:.1}",
                fit.exponent, band.c_lower, band.c_upper
            ));
        }
    }
    let detail = format!(
        "{} | {:.1}s",
        details.join("; "),
        start.elapsed().as_secs_f64()
    );
    assert!(report(
        2,
        "sandwich estimate and t^-5 exponent",
        pass,
        &detail
    ));
}

#[test]
fn criterion_3_monte_carlo_oracle_agreement() {
    let start = Instant::now();
    let (cfg, gas, spec) = (wedge(PI_4), gas(), QuadratureSpec::default());
    let mc = McSpec {
        n_samples: 1_000_000,
        seed: 20_260_809,
        stratify_eta: 32,
    };
    let f0 = friction_f0(0.5, &cfg, &gas, &spec).unwrap();
    let mut pass = true;
    let mut details = Vec::new();
    for &v_body in &[0.25, 0.5, 1.0] {
        let f0 = if v_body == 0.5 {
            f0
        } else {
            friction_f0(v_body, &cfg, &gas, &spec).unwrap()
        };
        for &t in &[1.0, 5.0, 20.0] {
            let quad = f0 + friction_g(v_body, t, &cfg, &gas, &spec).unwrap();
            let est = estimate_friction_mc(v_body, t, &cfg, &gas, &mc).unwrap();
            let z = (est.mean - quad) / est.std_error;
            let rel_se = est.std_error / est.mean.abs();
            let ok = z.abs() <= 3.0 && rel_se <= 0.01;
            pass &= ok;
            details.push(format!("V={v_body} t={t}: z={z:+.2} se/|m|={:.2e}", rel_se));
        }
    }
    let detail = format!(
        "{} | {:.1}s",
        details.join("; "),
        start.elapsed().as_secs_f64()
    );
    assert!(report(3, "Monte Carlo vs quadrature", pass, &detail));
}

#[test]
fn criterion_4_region_trace_equivalence() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for (i, &theta) in [PI_4, PI_3, 1.45].iter().enumerate() {
        let cfg = wedge(theta);
        let report = region_agreement_audit(&cfg, 2.0, 100.0, 100_000, 9000 + i as u64).unwrap();
        pass &= report.disagreements == 0;
        details.push(format!(
            "theta={theta:.3}: {} compared, {} disagreements",
            report.compared, report.disagreements
        ));
    }
    let detail = format!(
        "{} | {:.1}s",
        details.join("; "),
        start.elapsed().as_secs_f64()
    );
    assert!(report(
        4,
        "analytic region vs backward trace",
        pass,
        &detail
    ));
}

#[test]
fn criterion_5_two_formulation_consistency() {
    let start = Instant::now();
    let cfg = wedge(PI_3);
    let gas = gas();
    let spec = QuadratureSpec::default().tightened(1e-12, 1e-16);
    let mut pass = true;
    let mut compared = 0;
    let mut worst: f64 = 0.0;
    for &v_body in &[0.1, 0.25, 0.5, 1.0, 2.0] {
        for &t in &[0.5, 1.0, 2.0, 3.0, 5.0] {
            let direct = delta_g_direct(v_body, t, &cfg, &gas, &spec).unwrap();
            let diff = friction_g_inf(v_body, &cfg, &gas, &spec).unwrap()
                - friction_g(v_body, t, &cfg, &gas, &spec).unwrap();
            if direct.abs() > 1e-10 && diff.abs() > 1e-10 {
                compared += 1;
                let rel = ((direct - diff) / direct).abs();
                worst = worst.max(rel);
                pass &= rel <= 1e-6;
            }
        }
    }
    pass &= compared >= 20;
    let detail = format!(
        "{compared}/25 points above 1e-10; worst relative gap = {worst:.2e} (tolerance 1e-6) | {:.1}s",
        start.elapsed().as_secs_f64()
    );
    assert!(report(5, "delta_g direct vs g_inf - g", pass, &detail));
}

#[test]
fn criterion_6_stationarity_obstruction() {
    let start = Instant::now();
    let cfg = wedge(PI_3);
    let gas = gas();
    let spec = QuadratureSpec::default().tightened(1e-12, 1e-16);
    let v_grid = [0.1, 0.5, 1.0, 2.0];
    let t_grid = [0.05, 0.1, 0.5, 1.0];
    let scan = stationarity_obstruction_scan(&cfg, &gas, &v_grid, &t_grid, &spec).unwrap();
    let mut pass = scan.all_strictly_positive;

    // Centered finite differences of the deficit in the decay parameter.
    let mut worst: f64 = 0.0;
    for entry in &scan.entries {
        let h = 4e-3 * entry.t_param;
        let t_hi = cfg.time_from_decay_parameter(entry.t_param + h);
        let t_lo = cfg.time_from_decay_parameter(entry.t_param - h);
        let fd = (delta_g_direct(entry.v_body, t_hi, &cfg, &gas, &spec).unwrap()
            - delta_g_direct(entry.v_body, t_lo, &cfg, &gas, &spec).unwrap())
            / (2.0 * h);
        let rel = ((entry.d_delta_g - fd) / entry.d_delta_g).abs();
        worst = worst.max(rel);
        pass &= rel <= 1e-4;
    }
    let detail = format!(
        "all 16 d(delta_g)/dT > 0; worst FD gap = {worst:.2e} (tolerance 1e-4) | {:.1}s",
        start.elapsed().as_secs_f64()
    );
    assert!(report(6, "no stationary velocity", pass, &detail));
}

#[test]
fn criterion_7_convex_limit_recovery() {
    let start = Instant::now();
    let gas = gas();
    let spec = QuadratureSpec::default();
    let reference = friction_g_inf(0.5, &wedge(PI_4), &gas, &spec).unwrap();
    let mut values = Vec::new();
    let mut pass = true;
    let mut prev = f64::INFINITY;
    for &theta in &[1.2, 1.35, 1.5, 1.55] {
        let v = friction_g_inf(0.5, &wedge(theta), &gas, &spec).unwrap();
        pass &= v < prev && v > 0.0;
        prev = v;
        values.push(format!("g_inf({theta}) = {v:.3e}"));
    }
    pass &= prev < 0.01 * reference;
    let detail = format!(
        "{}; final/reference = {:.2e} (< 1e-2) | {:.1}s",
        values.join(", "),
        prev / reference,
        start.elapsed().as_secs_f64()
    );
    assert!(report(
        7,
        "flat-body limit kills the correction",
        pass,
        &detail
    ));
}

#[test]
fn criterion_8_limiting_velocity_solver() {
    let start = Instant::now();
    let cfg = wedge(PI_3);
    let gas = gas();
    let spec = QuadratureSpec::default();
    let mut pass = true;
    let mut prev = 0.0;
    let mut details = Vec::new();
    for &e_drive in &[0.05, 0.1, 0.2] {
        let sol = solve_limiting_velocity(e_drive, &cfg, &gas, 64.0, &spec).unwrap();
        let ok = sol.v_bar_inf > prev && sol.residual.abs() <= 1e-10 * e_drive;
        pass &= ok;
        prev = sol.v_bar_inf;
        details.push(format!(
            "E={e_drive}: V={:.8} residual={:.1e}",
            sol.v_bar_inf, sol.residual
        ));
    }
    let detail = format!(
        "{} | {:.1}s",
        details.join("; "),
        start.elapsed().as_secs_f64()
    );
    assert!(report(8, "limiting velocity root", pass, &detail));
}

#[test]
fn criterion_9_f0_closed_form_cross_check() {
    let start = Instant::now();
    let gas = gas();
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for &theta in &[PI_4, PI_3] {
        let cfg = wedge(theta);
        for &v_body in &[0.25, 0.5, 1.0] {
            let got = friction_f0(v_body, &cfg, &gas, &spec).unwrap();
            let want = f0_closed_form(v_body, &cfg, &gas);
            worst = worst.max(((got - want) / want).abs());
        }
    }
    let pass = worst <= 1e-8;
    let detail = format!(
        "worst relative gap over 6 points = {worst:.2e} (tolerance 1e-8) | {:.1}s",
        start.elapsed().as_secs_f64()
    );
    assert!(report(
        9,
        "F0 2D quadrature vs 1D closed form",
        pass,
        &detail
    ));
}
