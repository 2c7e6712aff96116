//! Subcommand implementations: each consumes a [`Config`], runs the owning
//! solver, and returns rendered tables plus the resolved parameter map for
//! the manifest.

use std::collections::BTreeMap;
use std::fmt;

use matstate_core::catalog::{CatalogError, DissipationLaw, NonlinearityLaw};
use matstate_core::creep::{CreepError, CreepFailure, CreepModel};
use matstate_core::oscillator::{OscillatorError, SweepParams};
use matstate_core::relaxation::{RelaxError, SpringModel};

use crate::config::{Config, ConfigError};
use crate::output::CsvTable;

/// Failure kinds with their process exit codes: configuration errors exit 2,
/// physically infeasible inputs exit 3, numerical failures exit 4.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Infeasible(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Config(_) => "config",
            CliError::Infeasible(_) => "infeasible",
            CliError::Numerical(_) => "numerical",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Infeasible(m) | CliError::Numerical(m)
            | CliError::Io(m) => m,
        }
    }

    /// One-line machine-readable error record.
    pub fn record(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.message() }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        CliError::Config(err.0)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(err: CatalogError) -> Self {
        match err {
            CatalogError::Divergent { .. } => CliError::Numerical(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<RelaxError> for CliError {
    fn from(err: RelaxError) -> Self {
        match err {
            RelaxError::Infeasible { .. } => CliError::Infeasible(err.to_string()),
            RelaxError::Law(CatalogError::Divergent { .. }) => {
                CliError::Numerical(err.to_string())
            }
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<OscillatorError> for CliError {
    fn from(err: OscillatorError) -> Self {
        match err {
            OscillatorError::InvalidParameter { .. } => CliError::Config(err.to_string()),
            _ => CliError::Numerical(err.to_string()),
        }
    }
}

impl From<CreepFailure> for CliError {
    fn from(failure: CreepFailure) -> Self {
        let message = failure.to_string();
        match failure.error {
            CreepError::NoEquilibrium { .. } | CreepError::NegativeRate { .. } => {
                CliError::Infeasible(message)
            }
            CreepError::InvalidParameter { .. } => CliError::Config(message),
            CreepError::Law(CatalogError::Divergent { .. }) => CliError::Numerical(message),
            CreepError::Law(_) => CliError::Config(message),
        }
    }
}

/// Tables plus the resolved parameters that produced them.
pub struct RunOutput {
    pub tables: Vec<CsvTable>,
    pub parameters: BTreeMap<String, String>,
}

fn uniform_grid(points: usize, upper: f64) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Config(format!("grid needs at least 2 points, got {points}")));
    }
    Ok((0..points)
        .map(|i| upper * i as f64 / (points - 1) as f64)
        .collect())
}

/// `catalog`: dump one law family (value and driving force, normalized by
/// the family scale) over a uniform damage grid. Divergent endpoints become
/// empty cells.
pub fn run_catalog(mut cfg: Config, grid: Option<usize>) -> Result<RunOutput, CliError> {
    let kind = cfg.take_string("catalog.kind", "nonlinearity");
    let points = match grid {
        Some(n) => n,
        None => cfg.take_usize("catalog.grid", 101)?,
    };

    enum Law {
        Nonlinearity(NonlinearityLaw),
        Dissipation(DissipationLaw),
    }

    let law = match kind.as_str() {
        "nonlinearity" => {
            let family = cfg.take_string("catalog.family", "arc_tanh");
            let a0 = cfg.take_f64("catalog.a0", 1.0)?;
            let law = match family.as_str() {
                "arc_tanh" => NonlinearityLaw::arc_tanh(a0)?,
                "tanh_asymptotic" => {
                    let m = cfg.take_f64("catalog.m", 2.0)?;
                    let n = cfg.take_f64("catalog.n", 2.0)?;
                    NonlinearityLaw::tanh_asymptotic(a0, m, n)?
                }
                "poly_bump" => {
                    let n = cfg.take_f64("catalog.n", 2.0)?;
                    NonlinearityLaw::poly_bump(a0, n)?
                }
                "exp_bump" => {
                    let n = cfg.take_f64("catalog.n", 2.0)?;
                    NonlinearityLaw::exp_bump(a0, n)?
                }
                "constant" => NonlinearityLaw::constant(a0)?,
                other => {
                    return Err(CliError::Config(format!(
                        "catalog.family: unknown nonlinearity family `{other}`"
                    )))
                }
            };
            if law.scale() == 0.0 {
                return Err(CliError::Config("catalog.a0: must be nonzero".into()));
            }
            Law::Nonlinearity(law)
        }
        "dissipation" => {
            let family = cfg.take_string("catalog.family", "power");
            let law = match family.as_str() {
                "power" => DissipationLaw::power(
                    cfg.take_f64("catalog.w0", 1.0)?,
                    cfg.take_f64("catalog.n", 2.0)?,
                )?,
                "one_minus_power" => DissipationLaw::one_minus_power(
                    cfg.take_f64("catalog.w0", 1.0)?,
                    cfg.take_f64("catalog.n", 0.5)?,
                )?,
                "arc_tanh_log" => DissipationLaw::arc_tanh_log(cfg.take_f64("catalog.w0", 1.0)?)?,
                "relax_polyline" => DissipationLaw::relax_polyline(
                    cfg.take_f64("catalog.w0", 1.0)?,
                    cfg.take_f64("catalog.n", 0.5)?,
                )?,
                "relax_exp" => DissipationLaw::relax_exp(
                    cfg.take_f64("catalog.w0", 1.0)?,
                    cfg.take_f64("catalog.n", 2.0)?,
                )?,
                "creep_affine_power" => DissipationLaw::creep_affine_power(
                    cfg.take_f64("catalog.k", 1.0)?,
                    cfg.take_f64("catalog.w0", 1.0)?,
                    cfg.take_f64("catalog.m", 16.0)?,
                )?,
                other => {
                    return Err(CliError::Config(format!(
                        "catalog.family: unknown dissipation family `{other}`"
                    )))
                }
            };
            if law.scale() == 0.0 {
                return Err(CliError::Config("catalog.w0: scale must be nonzero".into()));
            }
            Law::Dissipation(law)
        }
        other => {
            return Err(CliError::Config(format!(
                "catalog.kind: `{other}` (expected nonlinearity or dissipation)"
            )))
        }
    };

    let mut table = CsvTable::new(
        "catalog.csv",
        vec!["gamma", "value_over_scale", "derivative_over_scale"],
    );
    for gamma in uniform_grid(points, 1.0)? {
        let (value, derivative, scale) = match &law {
            Law::Nonlinearity(law) => (law.value(gamma), law.derivative(gamma), law.scale()),
            Law::Dissipation(law) => (law.value(gamma), law.derivative(gamma), law.scale()),
        };
        let cell = |res: Result<f64, CatalogError>| match res {
            Ok(v) => Ok(Some(v / scale)),
            Err(CatalogError::Divergent { .. }) => Ok(None),
            Err(err) => Err(CliError::from(err)),
        };
        table.push(vec![Some(gamma), cell(value)?, cell(derivative)?]);
    }
    Ok(RunOutput { tables: vec![table], parameters: cfg.finish()? })
}

/// `relax`: sweep the degrading spring over a damage grid, emitting the
/// normalized unstretched length and holding force plus the two energy
/// terms.
pub fn run_relax(mut cfg: Config, grid: Option<usize>) -> Result<RunOutput, CliError> {
    let case = cfg.take_usize("relax.case", 1)?;
    let n = cfg.take_f64("relax.n", if case == 1 { 0.5 } else { 2.0 })?;
    let k0 = cfg.take_f64("relax.k0", 1.0)?;
    let x0 = cfg.take_f64("relax.x0", 1.0)?;
    let xm = cfg.take_f64("relax.xm", 2.0)?;
    let mass = cfg.take_f64("relax.mass", 1.0)?;
    let points = match grid {
        Some(p) => p,
        None => cfg.take_usize("relax.grid", 101)?,
    };

    let model = match case {
        1 => SpringModel::case1(k0, x0, xm, mass, n)?,
        2 => SpringModel::case2(k0, x0, xm, mass, n)?,
        other => return Err(CliError::Config(format!("relax.case: `{other}` (expected 1 or 2)"))),
    };

    let trace = model.sweep(&uniform_grid(points, 1.0)?)?;
    let force_scale = model.k0() * (model.held_position() - model.x0_initial());
    let mut table = CsvTable::new(
        "relax.csv",
        vec!["gamma", "x0_norm", "force_norm", "w_el", "w_nel"],
    );
    for sample in &trace.samples {
        table.push(vec![
            Some(sample.gamma),
            Some(sample.x0 / model.x0_initial()),
            Some(sample.force / force_scale),
            Some(sample.w_el),
            Some(sample.w_nel),
        ]);
    }
    Ok(RunOutput { tables: vec![table], parameters: cfg.finish()? })
}

/// `oscillate`: one free-vibration run per damage level plus the
/// second-harmonic sweep table. Time traces (strided) and amplitude spectra
/// are optional per-level outputs.
pub fn run_oscillate(mut cfg: Config, grid: Option<usize>) -> Result<RunOutput, CliError> {
    let params = SweepParams {
        mass: cfg.take_f64("oscillate.mass", 1.0)?,
        k0: cfg.take_f64("oscillate.k0", 4.0 * std::f64::consts::PI * std::f64::consts::PI)?,
        x0: cfg.take_f64("oscillate.x0", 1.0)?,
        displacement_factor: cfg.take_f64("oscillate.factor", 0.99)?,
        periods: cfg.take_usize("oscillate.periods", 64)? as u32,
        steps_per_period: cfg.take_usize("oscillate.steps_per_period", 8192)? as u32,
    };
    let gammas = match grid {
        Some(points) => uniform_grid(points, 0.9)?,
        None => cfg.take_f64_list("oscillate.gammas", &[0.0, 0.2, 0.6, 0.8])?,
    };
    let emit_traces = cfg.take_bool("oscillate.traces", true)?;
    let emit_spectra = cfg.take_bool("oscillate.spectra", false)?;
    let trace_stride = cfg.take_usize("oscillate.trace_stride", 16)?.max(1);
    let spectrum_harmonics = cfg.take_usize("oscillate.spectrum_harmonics", 16)?;

    let mut tables = Vec::new();
    let mut sweep = CsvTable::new("sweep.csv", vec!["gamma", "f1", "a1", "a2", "ratio"]);
    for &gamma in &gammas {
        if !(0.0..=0.9).contains(&gamma) {
            return Err(CliError::Config(format!(
                "oscillate.gammas: {gamma} outside the sweep range [0, 0.9]"
            )));
        }
        let (trace, spectrum) = params.run(gamma)?;
        sweep.push(vec![
            Some(gamma),
            Some(spectrum.f1),
            Some(spectrum.a1),
            Some(spectrum.a2),
            Some(spectrum.ratio),
        ]);
        if emit_traces {
            let mut table =
                CsvTable::new(format!("trace_gamma_{gamma}.csv"), vec!["t", "x", "v"]);
            let mut i = 0;
            while i < trace.len() {
                table.push(vec![Some(trace.time(i)), Some(trace.x[i]), Some(trace.v[i])]);
                i += trace_stride;
            }
            tables.push(table);
        }
        if emit_spectra {
            let bins = spectrum
                .frequencies
                .len()
                .min(spectrum_harmonics * params.periods as usize + 1);
            let mut table = CsvTable::new(
                format!("spectrum_gamma_{gamma}.csv"),
                vec!["frequency", "amplitude"],
            );
            for k in 0..bins {
                table.push(vec![Some(spectrum.frequencies[k]), Some(spectrum.amplitudes[k])]);
            }
            tables.push(table);
        }
    }
    tables.push(sweep);
    Ok(RunOutput { tables, parameters: cfg.finish()? })
}

/// `creep`: integrate the plastic-strain balance over damage and emit the
/// per-node state; optionally also the nonlinearity-vs-strain pairs.
pub fn run_creep(mut cfg: Config, grid: Option<usize>) -> Result<RunOutput, CliError> {
    let e0 = cfg.take_f64("creep.e0", 70e9)?;
    let decay = cfg.take_f64("creep.a", 0.5)?;
    let sigma = cfg.take_f64("creep.sigma", 140e6)?;
    let a0 = cfg.take_f64("creep.a0", -3.5e11)?;
    let n = cfg.take_f64("creep.n", 2.0)?;
    let k = cfg.take_f64("creep.k", 2e6)?;
    let w0 = cfg.take_f64("creep.w0", 2e6)?;
    let m = cfg.take_f64("creep.m", 16.0)?;
    let gamma_max = cfg.take_f64("creep.gamma_max", 0.999)?;
    let steps = match grid {
        Some(s) => s,
        None => cfg.take_usize("creep.steps", 2000)?,
    };
    let emit_pairs = cfg.take_bool("creep.nonlinearity_vs_strain", false)?;

    let law = NonlinearityLaw::exp_bump(a0, n)?;
    let model = CreepModel::new(
        e0,
        decay,
        sigma,
        law,
        DissipationLaw::creep_affine_power(k, w0, m)?,
    )
    .map_err(|err| CliError::Config(err.to_string()))?;
    let trace = model.integrate(gamma_max, steps)?;

    let mut table = CsvTable::new(
        "creep.csv",
        vec!["gamma", "eps_p", "eps_elastic", "a_over_a0", "rate", "residual"],
    );
    for sample in &trace.samples {
        table.push(vec![
            Some(sample.gamma),
            Some(sample.eps_p),
            Some(sample.eps_elastic),
            Some(law.shape(sample.gamma).map_err(CliError::from)?),
            Some(sample.rate),
            Some(sample.residual),
        ]);
    }
    let mut tables = vec![table];
    if emit_pairs {
        let mut pairs = CsvTable::new(
            "nonlinearity_vs_strain.csv",
            vec!["eps_p", "a_over_a0"],
        );
        for (eps_p, shape) in matstate_core::creep::nonlinearity_vs_creep(&trace, &law) {
            pairs.push(vec![Some(eps_p), Some(shape)]);
        }
        tables.push(pairs);
    }
    Ok(RunOutput { tables, parameters: cfg.finish()? })
}
