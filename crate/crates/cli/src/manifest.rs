use std::path::{Path, PathBuf};

use hyperrank::hypercore::PreprocessReport;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input::InputSpec;
use crate::output::write_file;

/// Every parameter a centrality run depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub input: InputSpec,
    pub method: String,
    pub order: Option<usize>,
    pub p: Option<usize>,
    pub norm: String,
    pub multiplicities: Vec<u32>,
    pub lcc: bool,
    pub tol: f64,
    pub max_iter: usize,
    pub shift: f64,
    pub seed: Option<u64>,
    pub root: String,
    pub out: PathBuf,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunSummary {
    pub method: String,
    pub eigenvalue: f64,
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub nodes: usize,
    pub aux_scores: Vec<(String, f64)>,
    pub omega: Option<u64>,
    pub graph_eigenvalue: Option<f64>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    spec: &'a RunSpec,
    result: &'a RunSummary,
    preprocessing: &'a PreprocessReport,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn write_manifest(spec: &RunSpec, result: &RunSummary, report: &PreprocessReport) -> Result<PathBuf, CliError> {
    let m = Manifest {
        tool: "hyperrank",
        version: env!("CARGO_PKG_VERSION"),
        command: "centrality",
        spec,
        result,
        preprocessing: report,
    };
    let path = manifest_path(&spec.out);
    let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
    write_file(&path, &(text + "\n"))?;
    Ok(path)
}

pub fn read_spec(path: &Path) -> Result<RunSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{} is not valid JSON: {e}", path.display())))?;
    let spec = value
        .get("spec")
        .ok_or_else(|| CliError::Data(format!("{} has no \"spec\" section", path.display())))?;
    serde_json::from_value(spec.clone())
        .map_err(|e| CliError::Data(format!("{}: bad run spec: {e}", path.display())))
}
