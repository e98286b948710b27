//! Study configuration: defaults, the flat dotted-key config file, and CLI
//! flag overrides (flags win over the file, the file wins over defaults).
//!
//! The file format is one `key = value` pair per line, `#` comments, blank
//! lines ignored. Keys are flat and dotted (`wedge.theta`, `gas.beta`, ...);
//! unknown keys are rejected by name. Angles are radians; there is no degree
//! input.

use std::path::PathBuf;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("expected 'csv' or 'json', got '{other}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub theta: f64,
    pub length: f64,
    pub rho: f64,
    pub beta: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub cutoff_sigmas: f64,
    pub eta_panels: usize,
    pub mc_samples: usize,
    pub mc_seed: u64,
    pub mc_strata: usize,
    pub curve_v_grid: Vec<f64>,
    pub curve_t_grid: Vec<f64>,
    pub decay_velocity: f64,
    pub decay_t_min: f64,
    pub decay_t_max: f64,
    pub decay_t_points: usize,
    pub decay_band_lo: f64,
    pub decay_band_hi: f64,
    pub oracle_v_grid: Vec<f64>,
    pub oracle_t_grid: Vec<f64>,
    pub scan_v_grid: Vec<f64>,
    pub scan_t_param_grid: Vec<f64>,
    pub limit_e_grid: Vec<f64>,
    pub limit_v_cap: f64,
    pub output_path: Option<PathBuf>,
    pub output_format: Option<Format>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_3,
            length: 1.0,
            rho: 1.0,
            beta: 1.0,
            rel_tol: 1e-10,
            abs_tol: 1e-15,
            cutoff_sigmas: 6.0,
            eta_panels: 12,
            mc_samples: 100_000,
            mc_seed: 1,
            mc_strata: 16,
            curve_v_grid: vec![0.0, 0.25, 0.5, 1.0],
            curve_t_grid: vec![0.0, 1.0, 10.0, 100.0],
            decay_velocity: 0.5,
            decay_t_min: 2.0,
            decay_t_max: 50.0,
            decay_t_points: 16,
            decay_band_lo: -5.3,
            decay_band_hi: -4.7,
            oracle_v_grid: vec![0.25, 0.5, 1.0],
            oracle_t_grid: vec![1.0, 5.0, 20.0],
            scan_v_grid: vec![0.1, 0.5, 1.0, 2.0],
            scan_t_param_grid: vec![0.05, 0.1, 0.5, 1.0],
            limit_e_grid: vec![0.05, 0.1, 0.2],
            limit_v_cap: 64.0,
            output_path: None,
            output_format: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| CliError::Config(format!("invalid value for config key '{key}': {e}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    let items: Result<Vec<f64>, _> = value.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match items {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => Err(CliError::Config(format!(
            "config key '{key}' needs at least one value"
        ))),
        Err(e) => Err(CliError::Config(format!(
            "invalid value for config key '{key}': {e}"
        ))),
    }
}

impl Settings {
    pub fn apply_file(&mut self, text: &str, path: &std::path::Path) -> Result<(), CliError> {
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{}:{}: expected 'key = value', got '{line}'",
                    path.display(),
                    line_no + 1
                )));
            };
            self.apply_key(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_key(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "wedge.theta" => self.theta = parse_num(key, value)?,
            "wedge.length" => self.length = parse_num(key, value)?,
            "gas.rho" => self.rho = parse_num(key, value)?,
            "gas.beta" => self.beta = parse_num(key, value)?,
            "quadrature.rel_tol" => self.rel_tol = parse_num(key, value)?,
            "quadrature.abs_tol" => self.abs_tol = parse_num(key, value)?,
            "quadrature.cutoff_sigmas" => self.cutoff_sigmas = parse_num(key, value)?,
            "quadrature.eta_panels" => self.eta_panels = parse_num(key, value)?,
            "mc.samples" => self.mc_samples = parse_num(key, value)?,
            "mc.seed" => self.mc_seed = parse_num(key, value)?,
            "mc.strata" => self.mc_strata = parse_num(key, value)?,
            "curve.v_grid" => self.curve_v_grid = parse_list(key, value)?,
            "curve.t_grid" => self.curve_t_grid = parse_list(key, value)?,
            "decay.velocity" => self.decay_velocity = parse_num(key, value)?,
            "decay.t_min" => self.decay_t_min = parse_num(key, value)?,
            "decay.t_max" => self.decay_t_max = parse_num(key, value)?,
            "decay.t_points" => self.decay_t_points = parse_num(key, value)?,
            "decay.band_lo" => self.decay_band_lo = parse_num(key, value)?,
            "decay.band_hi" => self.decay_band_hi = parse_num(key, value)?,
            "oracle.v_grid" => self.oracle_v_grid = parse_list(key, value)?,
            "oracle.t_grid" => self.oracle_t_grid = parse_list(key, value)?,
            "scan.v_grid" => self.scan_v_grid = parse_list(key, value)?,
            "scan.t_param_grid" => self.scan_t_param_grid = parse_list(key, value)?,
            "limit.e_grid" => self.limit_e_grid = parse_list(key, value)?,
            "limit.v_cap" => self.limit_v_cap = parse_num(key, value)?,
            "output.path" => self.output_path = Some(PathBuf::from(value)),
            "output.format" => {
                self.output_format = Some(Format::parse(value).map_err(|e| {
                    CliError::Config(format!("invalid value for config key '{key}': {e}"))
                })?)
            }
            other => {
                return Err(CliError::Config(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }

    /// Config echo for report metadata, keyed exactly like the config file.
    pub fn echo(&self) -> serde_json::Value {
        fn grid(v: &[f64]) -> serde_json::Value {
            serde_json::Value::Array(v.iter().map(|&x| serde_json::json!(x)).collect())
        }
        serde_json::json!({
            "wedge.theta": self.theta,
            "wedge.length": self.length,
            "gas.rho": self.rho,
            "gas.beta": self.beta,
            "quadrature.rel_tol": self.rel_tol,
            "quadrature.abs_tol": self.abs_tol,
            "quadrature.cutoff_sigmas": self.cutoff_sigmas,
            "quadrature.eta_panels": self.eta_panels,
            "mc.samples": self.mc_samples,
            "mc.seed": self.mc_seed,
            "mc.strata": self.mc_strata,
            "curve.v_grid": grid(&self.curve_v_grid),
            "curve.t_grid": grid(&self.curve_t_grid),
            "decay.velocity": self.decay_velocity,
            "decay.t_min": self.decay_t_min,
            "decay.t_max": self.decay_t_max,
            "decay.t_points": self.decay_t_points,
            "decay.band_lo": self.decay_band_lo,
            "decay.band_hi": self.decay_band_hi,
            "oracle.v_grid": grid(&self.oracle_v_grid),
            "oracle.t_grid": grid(&self.oracle_t_grid),
            "scan.v_grid": grid(&self.scan_v_grid),
            "scan.t_param_grid": grid(&self.scan_t_param_grid),
            "limit.e_grid": grid(&self.limit_e_grid),
            "limit.v_cap": self.limit_v_cap,
        })
    }
}
