//! `matstate` — damage-state simulation toolkit.
//!
//! Subcommands dump constitutive-law catalogs and run the three degradation
//! studies (stress relaxation, bilinear-oscillator harmonics, creep) to
//! deterministic CSV files with a manifest per run. `preset <name>` executes
//! a fixed named scenario.

mod commands;
mod config;
mod output;
mod presets;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliError, RunOutput};
use config::Config;

#[derive(Parser)]
#[command(
    name = "matstate",
    version,
    about = "Internal-variable damage simulations: law catalogs, relaxation, \
             bilinear-oscillator harmonics, and creep"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat `key = value` configuration file (dotted section names)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory (presets write into a subdirectory named after them)
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    out: PathBuf,

    /// Sweep resolution: grid points (catalog/relax), damage levels
    /// (oscillate), or integration steps (creep)
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,

    /// Override one config key (repeatable)
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Also write a plot-script stub referencing the emitted CSVs
    #[arg(long, global = true)]
    plot_stub: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a damage-law family (value and driving force) over a damage grid
    Catalog,
    /// Stress-relaxation sweep of the degrading spring
    Relax,
    /// Bilinear-oscillator free-vibration runs and the second-harmonic sweep
    Oscillate,
    /// Creep-like degradation sweep under constant stress
    Creep,
    /// Run a named fixed scenario (see `preset list`)
    Preset { name: String },
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::new(),
    };
    for assignment in &cli.overrides {
        cfg.set(assignment)?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, output): (String, RunOutput) = match &cli.command {
        Command::Catalog => ("catalog".into(), commands::run_catalog(seeded(cli)?, cli.grid)?),
        Command::Relax => ("relax".into(), commands::run_relax(seeded(cli)?, cli.grid)?),
        Command::Oscillate => {
            ("oscillate".into(), commands::run_oscillate(seeded(cli)?, cli.grid)?)
        }
        Command::Creep => ("creep".into(), commands::run_creep(seeded(cli)?, cli.grid)?),
        Command::Preset { name } => {
            if name == "list" {
                for preset in presets::PRESETS {
                    println!("{preset}");
                }
                return Ok(());
            }
            if cli.config.is_some() || !cli.overrides.is_empty() || cli.grid.is_some() {
                return Err(CliError::Config(
                    "presets are fixed scenarios; --config/--set/--grid do not apply".into(),
                ));
            }
            (format!("preset {name}"), presets::run(name)?)
        }
    };

    let dir = match &cli.command {
        Command::Preset { name } => cli.out.join(name),
        _ => cli.out.clone(),
    };
    output::emit_run(&dir, &name, output.parameters, &output.tables, cli.plot_stub)?;
    for table in &output.tables {
        println!("{}", dir.join(&table.name).display());
    }
    Ok(())
}

/// Loads the config and consumes the global `seed` key (recorded in the
/// manifest; the sweeps themselves are deterministic and do not use it).
fn seeded(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = load_config(cli)?;
    cfg.take_usize("seed", 0)?;
    Ok(cfg)
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(&cli) {
        eprintln!("{}", error.record());
        std::process::exit(error.exit_code());
    }
}
