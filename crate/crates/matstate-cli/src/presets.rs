//! Named scenario presets. Each preset is a fixed, closed parameter set —
//! no config overrides — so its outputs are reproducible by name alone.
//!
//! `fig2`–`fig8` dump the law-catalog curves; `fig11`–`fig14` the two
//! relaxation cases; `fig15`–`fig17` the bilinear-oscillator traces, spectra,
//! and harmonic sweep; `fig18`–`fig21` the two creep studies.

use std::collections::BTreeMap;

use crate::commands::{run_catalog, run_creep, run_oscillate, run_relax, CliError, RunOutput};
use crate::config::Config;
use crate::output::CsvTable;

pub const PRESETS: &[&str] = &[
    "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig11", "fig12", "fig13", "fig14",
    "fig15", "fig16", "fig17", "fig18", "fig19", "fig20", "fig21",
];

struct Collector {
    tables: Vec<CsvTable>,
    parameters: BTreeMap<String, String>,
}

impl Collector {
    fn new() -> Self {
        Collector { tables: Vec::new(), parameters: BTreeMap::new() }
    }

    /// Merges one sub-run, renaming its tables with `label` and prefixing
    /// its parameters so every variant stays visible in the manifest.
    fn add(&mut self, label: &str, output: RunOutput) {
        for mut table in output.tables {
            if label.is_empty() {
                self.tables.push(table);
                continue;
            }
            table.name = match table.name.rsplit_once('.') {
                Some((stem, ext)) => format!("{stem}_{label}.{ext}"),
                None => format!("{}_{label}", table.name),
            };
            self.tables.push(table);
        }
        for (key, value) in output.parameters {
            let name = if label.is_empty() { key } else { format!("{label}.{key}") };
            self.parameters.insert(name, value);
        }
    }

    fn finish(self) -> RunOutput {
        RunOutput { tables: self.tables, parameters: self.parameters }
    }
}

fn catalog(kind: &str, family: &str, extra: &[(&str, f64)]) -> Result<RunOutput, CliError> {
    let mut cfg = Config::new();
    cfg.insert("catalog.kind", kind.to_string());
    cfg.insert("catalog.family", family.to_string());
    for (key, value) in extra {
        cfg.insert(&format!("catalog.{key}"), value.to_string());
    }
    run_catalog(cfg, None)
}

fn relax(case: usize, n: f64) -> Result<RunOutput, CliError> {
    let mut cfg = Config::new();
    cfg.insert("relax.case", case.to_string());
    cfg.insert("relax.n", n.to_string());
    run_relax(cfg, None)
}

fn oscillate(gammas: &str, traces: bool, spectra: bool) -> Result<RunOutput, CliError> {
    let mut cfg = Config::new();
    cfg.insert("oscillate.gammas", gammas.to_string());
    cfg.insert("oscillate.traces", traces.to_string());
    cfg.insert("oscillate.spectra", spectra.to_string());
    run_oscillate(cfg, None)
}

fn creep(overrides: &[(&str, f64)], pairs: bool) -> Result<RunOutput, CliError> {
    let mut cfg = Config::new();
    for (key, value) in overrides {
        cfg.insert(&format!("creep.{key}"), value.to_string());
    }
    cfg.insert("creep.nonlinearity_vs_strain", pairs.to_string());
    run_creep(cfg, None)
}

pub fn run(name: &str) -> Result<RunOutput, CliError> {
    let mut out = Collector::new();
    out.parameters.insert("preset".to_string(), name.to_string());
    match name {
        // law-catalog curves
        "fig2" => out.add("", catalog("nonlinearity", "arc_tanh", &[])?),
        "fig3" => {
            for n in [1.0, 2.0, 5.0, 10.0] {
                out.add(
                    &format!("n{n}"),
                    catalog("nonlinearity", "tanh_asymptotic", &[("m", 2.0), ("n", n)])?,
                );
            }
        }
        "fig4" => {
            for n in [0.5, 2.0] {
                out.add(&format!("n{n}"), catalog("nonlinearity", "poly_bump", &[("n", n)])?);
            }
        }
        "fig5" => {
            for n in [0.5, 2.0] {
                out.add(&format!("n{n}"), catalog("nonlinearity", "exp_bump", &[("n", n)])?);
            }
        }
        "fig6" => {
            for n in [2.0, 4.0, 8.0] {
                out.add(&format!("n{n}"), catalog("dissipation", "power", &[("n", n)])?);
            }
        }
        "fig7" => {
            for n in [0.25, 0.5, 0.75] {
                out.add(
                    &format!("n{n}"),
                    catalog("dissipation", "one_minus_power", &[("n", n)])?,
                );
            }
        }
        "fig8" => out.add("", catalog("dissipation", "arc_tanh_log", &[])?),

        // relaxation: unstretched length (11/13) and force (12/14) come from
        // the same sweep tables
        "fig11" | "fig12" => {
            for n in [0.25, 0.5, 0.75] {
                out.add(&format!("case1_n{n}"), relax(1, n)?);
            }
        }
        "fig13" | "fig14" => {
            for n in [1.0, 2.0, 4.0] {
                out.add(&format!("case2_n{n}"), relax(2, n)?);
            }
        }

        // bilinear oscillator
        "fig15" => out.add("", oscillate("0,0.2,0.6,0.8", true, false)?),
        "fig16" => out.add("", oscillate("0,0.2,0.6,0.8", false, true)?),
        "fig17" => out.add(
            "",
            oscillate("0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", false, false)?,
        ),

        // creep studies
        "fig18" | "fig19" => {
            for m in [2.0, 4.0, 8.0, 16.0] {
                out.add(&format!("m{m}"), creep(&[("m", m)], name == "fig19")?);
            }
        }
        "fig20" | "fig21" => {
            for sigma in [100e6, 140e6, 180e6] {
                let k = sigma * sigma * 1e-10;
                out.add(
                    &format!("sigma{:.0}MPa", sigma / 1e6),
                    creep(
                        &[("sigma", sigma), ("k", k), ("w0", k)],
                        name == "fig21",
                    )?,
                );
            }
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}` (available: {})",
                PRESETS.join(", ")
            )))
        }
    }
    Ok(out.finish())
}
