use std::path::PathBuf;

use hyperrank::dataset::{locate, read_simplicial, Dataset, Weighting};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::{InputArgs, WeightingArg};

/// Resolved input files, recorded in manifests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    pub nverts: PathBuf,
    pub simplices: PathBuf,
    pub labels: Option<PathBuf>,
    pub weighting: String,
}

impl InputSpec {
    pub fn resolve(args: &InputArgs) -> Result<Self, CliError> {
        let weighting = match args.weighting {
            WeightingArg::Count => "count",
            WeightingArg::Unit => "unit",
        }
        .to_string();
        if let Some(dir) = &args.input {
            let (nverts, simplices, found) = locate(dir).ok_or_else(|| {
                CliError::Data(format!(
                    "{} does not contain <name>-nverts.txt and <name>-simplices.txt",
                    dir.display()
                ))
            })?;
            return Ok(InputSpec {
                nverts,
                simplices,
                labels: args.labels.clone().or(found),
                weighting,
            });
        }
        match (&args.nverts, &args.simplices) {
            (Some(n), Some(s)) => Ok(InputSpec {
                nverts: n.clone(),
                simplices: s.clone(),
                labels: args.labels.clone(),
                weighting,
            }),
            _ => Err(CliError::Usage(
                "give --input DIR or both --nverts and --simplices".into(),
            )),
        }
    }

    pub fn load(&self) -> Result<Dataset, CliError> {
        let weighting = match self.weighting.as_str() {
            "unit" => Weighting::Unit,
            "count" => Weighting::Count,
            other => return Err(CliError::Usage(format!("unknown weighting {other:?}"))),
        };
        let ds = read_simplicial(&self.nverts, &self.simplices, self.labels.as_deref(), weighting)?;
        let r = &ds.report;
        eprintln!(
            "ingested {} simplices: {} singletons dropped, {} with repeated nodes, {} duplicates merged, {} isolated nodes dropped; {} nodes, {} edges",
            r.raw_simplices,
            r.singletons_dropped,
            r.simplices_with_repeated_nodes,
            r.duplicate_edges_merged,
            r.isolated_nodes_dropped,
            r.nodes,
            r.edges
        );
        Ok(ds)
    }
}
