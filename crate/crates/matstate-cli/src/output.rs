//! Deterministic CSV emission and the per-run manifest.
//!
//! Numbers are serialized with 17 significant digits so every `f64`
//! round-trips exactly; line endings are LF; cells that would be non-finite
//! (divergent endpoint evaluations) are emitted empty, never as `inf`/`NaN`
//! tokens. Files are written atomically (temp then rename) and a
//! `manifest.json` records the tool version, every resolved parameter, a
//! digest of the resolved configuration, and a SHA-256 checksum per output.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// 17 significant digits: lossless for IEEE 754 binary64.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn format_cell(cell: Option<f64>) -> String {
    match cell {
        Some(v) => format_float(v),
        None => String::new(),
    }
}

/// One CSV table ready to be rendered.
pub struct CsvTable {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn new(name: impl Into<String>, header: Vec<&'static str>) -> Self {
        CsvTable { name: name.into(), header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::with_capacity(32 * self.rows.len());
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&c| format_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    /// SHA-256 over the canonical `key = value` listing of the resolved
    /// parameters, so two runs with the same effective configuration carry
    /// the same digest regardless of how the values were supplied.
    pub config_digest: String,
    pub outputs: BTreeMap<String, String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

fn config_digest(parameters: &BTreeMap<String, String>) -> String {
    let mut canonical = String::new();
    for (key, value) in parameters {
        canonical.push_str(key);
        canonical.push_str(" = ");
        canonical.push_str(value);
        canonical.push('\n');
    }
    sha256_hex(canonical.as_bytes())
}

pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{name}.tmp"));
    let target = dir.join(name);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, &target)?;
    Ok(())
}

/// Writes every table plus `manifest.json` (and optionally a plot-script
/// stub referencing the CSVs) into `dir`.
pub fn emit_run(
    dir: &Path,
    command: &str,
    parameters: BTreeMap<String, String>,
    tables: &[CsvTable],
    plot_stub: bool,
) -> io::Result<()> {
    let mut outputs = BTreeMap::new();
    for table in tables {
        let body = table.render();
        write_atomic(dir, &table.name, &body)?;
        outputs.insert(table.name.clone(), sha256_hex(body.as_bytes()));
    }
    if plot_stub {
        let stub = plot_script(tables);
        write_atomic(dir, "plot.py", &stub)?;
    }
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config_digest: config_digest(&parameters),
        parameters,
        outputs,
    };
    let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serialization");
    body.push('\n');
    write_atomic(dir, "manifest.json", &body)
}

/// A generic stub that loads each CSV and plots column 2 against column 1;
/// rendering is deliberately left to the user's environment.
fn plot_script(tables: &[CsvTable]) -> String {
    let mut script = String::from(
        "#!/usr/bin/env python3\n\
         # Plot stub: loads the run's CSV files; adapt styling as needed.\n\
         import csv\n\
         import matplotlib.pyplot as plt\n\n",
    );
    for table in tables {
        script.push_str(&format!(
            "with open({name:?}) as handle:\n\
             \trows = [r for r in csv.DictReader(handle)]\n\
             \tcols = rows[0].keys() if rows else []\n\
             \txs = [float(r[list(cols)[0]]) for r in rows if r[list(cols)[1]]]\n\
             \tys = [float(r[list(cols)[1]]) for r in rows if r[list(cols)[1]]]\n\
             \tplt.plot(xs, ys, label={name:?})\n",
            name = table.name
        ));
    }
    script.push_str("plt.legend()\nplt.show()\n");
    script
}
