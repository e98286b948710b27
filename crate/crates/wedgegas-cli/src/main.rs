//! Command-line studies of the friction a free gas exerts on a wedge held at
//! constant velocity.
//!
//! Exit codes: 0 success (all assertions pass), 2 configuration error,
//! 3 numerical failure, 4 assertion failure.

mod config;
mod report;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::{Format, Settings};
use report::{csv_table, emit, json_document};
use wedgegas::{
    delta_g_direct, estimate_friction_mc, fit_decay_profile, friction_breakdown, friction_f0,
    friction_g, log_spaced_grid, solve_limiting_velocity, stationarity_obstruction_scan, Error,
    GasState, McSpec, QuadratureSpec, WedgeConfig,
};

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration (exit 2).
    Config(String),
    /// Quadrature, tracing or estimation failure (exit 3).
    Numerical(String),
    /// A physical assertion did not hold (exit 4).
    Assertion(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Assertion(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Assertion(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParam(_) => CliError::Config(e.to_string()),
            Error::ObstructionViolation { .. }
            | Error::UnboundedVelocity { .. }
            | Error::NonMonotoneBalance { .. } => CliError::Assertion(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

/// Friction of a free gas on a wedge held at constant velocity.
///
/// All angles are radians. Flags override config-file keys; config-file keys
/// override built-in defaults.
#[derive(Parser, Debug)]
#[command(name = "wedgegas", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file of flat `key = value` lines (e.g. `wedge.theta = 1.0472`).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<std::path::PathBuf>,

    /// Wedge half-angle in radians, in [pi/4, pi/2).
    #[arg(long, global = true)]
    theta: Option<f64>,

    /// Arm length.
    #[arg(long, global = true)]
    length: Option<f64>,

    /// Gas inverse temperature.
    #[arg(long, global = true)]
    beta: Option<f64>,

    /// Gas mass density.
    #[arg(long, global = true)]
    rho: Option<f64>,

    /// Body velocity; also collapses the curve/oracle velocity grids to this
    /// single value.
    #[arg(long, global = true)]
    velocity: Option<f64>,

    /// Decay-study window start.
    #[arg(long, global = true)]
    t_min: Option<f64>,

    /// Decay-study window end.
    #[arg(long, global = true)]
    t_max: Option<f64>,

    /// Decay-study grid size.
    #[arg(long, global = true)]
    t_points: Option<usize>,

    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Monte Carlo seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<std::path::PathBuf>,

    /// Output format: csv or json (default: csv for friction-curve, json
    /// otherwise).
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate F0, g, g_inf, delta_g and the total friction on a (V, t) grid.
    FrictionCurve,
    /// Fit the decay exponent of delta_g(V, t) and report sandwich constants.
    DecayStudy,
    /// Compare quadrature friction against the Monte Carlo trace estimator.
    OracleCompare,
    /// Verify d(delta_g)/dT > 0 on a (V, T) grid (no stationary velocity).
    StationaryCheck,
    /// Solve E = F0(V) + g_inf(V) for the limiting velocity.
    LimitingVelocity,
}

fn resolve_settings(cli: &Cli) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config '{}': {e}", path.display()))
        })?;
        s.apply_file(&text, path)?;
    }
    if let Some(theta) = cli.theta {
        s.theta = theta;
    }
    if let Some(length) = cli.length {
        s.length = length;
    }
    if let Some(beta) = cli.beta {
        s.beta = beta;
    }
    if let Some(rho) = cli.rho {
        s.rho = rho;
    }
    if let Some(v) = cli.velocity {
        s.decay_velocity = v;
        s.curve_v_grid = vec![v];
        s.oracle_v_grid = vec![v];
    }
    if let Some(t_min) = cli.t_min {
        s.decay_t_min = t_min;
    }
    if let Some(t_max) = cli.t_max {
        s.decay_t_max = t_max;
    }
    if let Some(n) = cli.t_points {
        s.decay_t_points = n;
    }
    if let Some(n) = cli.samples {
        s.mc_samples = n;
    }
    if let Some(seed) = cli.seed {
        s.mc_seed = seed;
    }
    if let Some(path) = &cli.output {
        s.output_path = Some(path.clone());
    }
    if let Some(f) = &cli.format {
        s.output_format =
            Some(Format::parse(f).map_err(|e| CliError::Config(format!("invalid --format: {e}")))?);
    }
    Ok(s)
}

struct Study {
    settings: Settings,
    cfg: WedgeConfig,
    gas: GasState,
    spec: QuadratureSpec,
    mc: McSpec,
}

impl Study {
    fn new(settings: Settings) -> Result<Self, CliError> {
        let cfg = WedgeConfig::new(settings.theta, settings.length)?;
        let gas = GasState::new(settings.rho, settings.beta)?;
        let spec = QuadratureSpec {
            rel_tol: settings.rel_tol,
            abs_tol: settings.abs_tol,
            velocity_cutoff_sigmas: settings.cutoff_sigmas,
            eta_panels: settings.eta_panels,
        };
        let mc = McSpec {
            n_samples: settings.mc_samples,
            seed: settings.mc_seed,
            stratify_eta: settings.mc_strata,
        };
        Ok(Self {
            settings,
            cfg,
            gas,
            spec,
            mc,
        })
    }

    fn format_or(&self, default: Format) -> Format {
        self.settings.output_format.unwrap_or(default)
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        emit(self.settings.output_path.as_deref(), text)
    }
}

fn run_friction_curve(study: &Study) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &v_body in &study.settings.curve_v_grid {
        for &t in &study.settings.curve_t_grid {
            let b = friction_breakdown(v_body, t, &study.cfg, &study.gas, &study.spec)?;
            rows.push(vec![v_body, t, b.f0, b.g, b.g_inf, b.delta_g, b.fv_total]);
        }
    }
    let text = match study.format_or(Format::Csv) {
        Format::Csv => csv_table("V,t,F0,g,g_inf,delta_g,F_total", &rows),
        Format::Json => {
            let data: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "V": r[0], "t": r[1], "F0": r[2], "g": r[3],
                        "g_inf": r[4], "delta_g": r[5], "F_total": r[6],
                    })
                })
                .collect();
            json_document("friction-curve", &study.settings, json!(data))
        }
    };
    study.emit(&text)
}

fn run_decay_study(study: &Study) -> Result<(), CliError> {
    let s = &study.settings;
    if s.decay_velocity <= 0.0 || s.decay_velocity.is_nan() {
        return Err(CliError::Config(format!(
            "decay.velocity must be > 0, got {}",
            s.decay_velocity
        )));
    }
    if s.decay_t_points < 8 {
        return Err(CliError::Config(format!(
            "decay.t_points must be at least 8, got {}",
            s.decay_t_points
        )));
    }
    if s.decay_t_min <= 0.0
        || s.decay_t_max <= s.decay_t_min
        || s.decay_t_min.is_nan()
        || s.decay_t_max.is_nan()
    {
        return Err(CliError::Config(format!(
            "decay window must satisfy 0 < t_min < t_max, got [{}, {}]",
            s.decay_t_min, s.decay_t_max
        )));
    }
    let grid = log_spaced_grid(s.decay_t_min, s.decay_t_max, s.decay_t_points);
    let mut samples: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    let fit = fit_decay_profile(
        |t| {
            let dg = delta_g_direct(s.decay_velocity, t, &study.cfg, &study.gas, &study.spec)?;
            samples.push((t, dg));
            Ok(dg)
        },
        &grid,
        100.0 * study.spec.abs_tol,
    )?;
    let within_band = (s.decay_band_lo..=s.decay_band_hi).contains(&fit.exponent);

    let text = match study.format_or(Format::Json) {
        Format::Json => json_document(
            "decay-study",
            s,
            json!({
                "velocity": s.decay_velocity,
                "exponent": fit.exponent,
                "log_intercept": fit.log_intercept,
                "r_squared": fit.r_squared,
                "c_lower": fit.c_lower,
                "c_upper": fit.c_upper,
                "window": { "t_min": s.decay_t_min, "t_max": s.decay_t_max,
                             "points_requested": s.decay_t_points,
                             "t_grid_used": fit.t_grid },
                "band": [s.decay_band_lo, s.decay_band_hi],
                "within_band": within_band,
                "samples": samples.iter()
                    .map(|&(t, dg)| json!({"t": t, "delta_g": dg}))
                    .collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<f64>> = samples
                .iter()
                .map(|&(t, dg)| vec![t, dg, dg * (1.0 + t).powi(5)])
                .collect();
            csv_table("t,delta_g,delta_g_scaled", &rows)
        }
    };
    study.emit(&text)?;
    if within_band {
        Ok(())
    } else {
        Err(CliError::Assertion(format!(
            "fitted exponent {} outside acceptance band [{}, {}]",
            fit.exponent, s.decay_band_lo, s.decay_band_hi
        )))
    }
}

fn run_oracle_compare(study: &Study) -> Result<(), CliError> {
    let s = &study.settings;
    let mut rows = Vec::new();
    let mut worst_z: f64 = 0.0;
    for &v_body in &s.oracle_v_grid {
        let f0 = friction_f0(v_body, &study.cfg, &study.gas, &study.spec)?;
        for &t in &s.oracle_t_grid {
            let quad = f0 + friction_g(v_body, t, &study.cfg, &study.gas, &study.spec)?;
            let est = estimate_friction_mc(v_body, t, &study.cfg, &study.gas, &study.mc)?;
            let z = (est.mean - quad) / est.std_error;
            worst_z = worst_z.max(z.abs());
            rows.push(vec![v_body, t, quad, est.mean, est.std_error, z]);
        }
    }
    let all_within = worst_z <= 3.0;
    let text = match study.format_or(Format::Json) {
        Format::Csv => csv_table("V,t,quadrature,mc_mean,mc_stderr,z", &rows),
        Format::Json => {
            let data: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "V": r[0], "t": r[1], "quadrature": r[2],
                        "mc_mean": r[3], "mc_stderr": r[4], "z": r[5],
                    })
                })
                .collect();
            json_document(
                "oracle-compare",
                s,
                json!({ "points": data, "worst_abs_z": worst_z, "all_within_3_sigma": all_within }),
            )
        }
    };
    study.emit(&text)?;
    if all_within {
        Ok(())
    } else {
        Err(CliError::Assertion(format!(
            "Monte Carlo and quadrature disagree: worst |z| = {worst_z:.2} > 3"
        )))
    }
}

fn run_stationary_check(study: &Study) -> Result<(), CliError> {
    let s = &study.settings;
    let scan = stationarity_obstruction_scan(
        &study.cfg,
        &study.gas,
        &s.scan_v_grid,
        &s.scan_t_param_grid,
        &study.spec,
    )?;
    let verdict = "no stationary velocity: PASS";
    let text = match study.format_or(Format::Json) {
        Format::Csv => {
            let rows: Vec<Vec<f64>> = scan
                .entries
                .iter()
                .map(|e| vec![e.v_body, e.t_param, e.d_delta_g])
                .collect();
            csv_table("V,T,d_delta_g_dT", &rows)
        }
        Format::Json => {
            let entries: Vec<_> = scan
                .entries
                .iter()
                .map(|e| json!({"V": e.v_body, "T": e.t_param, "d_delta_g_dT": e.d_delta_g}))
                .collect();
            json_document(
                "stationary-check",
                s,
                json!({
                    "verdict": verdict,
                    "entries": entries,
                    "zero_velocity_rows_excluded": scan.zero_velocity_rows,
                }),
            )
        }
    };
    study.emit(&text)?;
    if study.settings.output_path.is_some() {
        println!("{verdict}");
    }
    Ok(())
}

fn run_limiting_velocity(study: &Study) -> Result<(), CliError> {
    let s = &study.settings;
    let mut rows = Vec::new();
    for &e_drive in &s.limit_e_grid {
        let sol =
            solve_limiting_velocity(e_drive, &study.cfg, &study.gas, s.limit_v_cap, &study.spec)?;
        rows.push(vec![
            e_drive,
            sol.v_bar_inf,
            sol.residual,
            sol.bracket.0,
            sol.bracket.1,
        ]);
    }
    let text = match study.format_or(Format::Json) {
        Format::Csv => csv_table("E,v_bar_inf,residual,bracket_lo,bracket_hi", &rows),
        Format::Json => {
            let data: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "E": r[0], "v_bar_inf": r[1], "residual": r[2],
                        "bracket": [r[3], r[4]],
                    })
                })
                .collect();
            json_document("limiting-velocity", s, json!(data))
        }
    };
    study.emit(&text)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let study = Study::new(resolve_settings(cli)?)?;
    match cli.command {
        Command::FrictionCurve => run_friction_curve(&study),
        Command::DecayStudy => run_decay_study(&study),
        Command::OracleCompare => run_oracle_compare(&study),
        Command::StationaryCheck => run_stationary_check(&study),
        Command::LimitingVelocity => run_limiting_velocity(&study),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
