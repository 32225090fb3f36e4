//! Manifest and report writers.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use hamcycle_qaoa::{Distribution, OptimizerConfig, SolveOptions};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{InputRecord, Normalization};
use crate::Axis;

/// Everything needed to rerun a command; embedded in every JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: InputRecord,
    pub normalization: Normalization,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonRecord>,
}

impl RunManifest {
    pub fn new(command: &'static str, input: InputRecord, normalization: Normalization) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            normalization,
            solver: None,
            comparison: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolverRecord {
    pub layers: usize,
    pub mixer: String,
    pub noise: Option<String>,
    pub shots: usize,
    pub sampled_objective: bool,
    pub optimizer: OptimizerConfig,
}

impl From<&SolveOptions> for SolverRecord {
    fn from(o: &SolveOptions) -> Self {
        SolverRecord {
            layers: o.layers,
            mixer: o.mixer.to_string(),
            noise: o.noise.map(|n| n.to_string()),
            shots: o.shots,
            sampled_objective: o.sampled_objective,
            optimizer: o.optimizer.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRecord {
    pub axis: Axis,
    pub labels: [String; 2],
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reoptimize: Option<bool>,
}

/// Pretty JSON to `path`, or standard output.
pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<File>, CliError> {
    csv::Writer::from_path(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn write_distribution_csv(dist: &Distribution, path: &Path) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["bitstring", "count", "probability"])?;
    for (s, c, p) in dist.rows() {
        w.serialize((s, c, p))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace_csv(trace: &[(usize, f64)], path: &Path) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["eval", "value"])?;
    for row in trace {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
