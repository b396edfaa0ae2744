use std::path::PathBuf;

use hyperrank::dataset::DatasetError;
use hyperrank::rankcmp::RankError;
use hyperrank::spectral::SpectralError;
use hyperrank::uniformize::UniformizeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Convergence(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Write { .. } => 2,
            CliError::Convergence(_) => 3,
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        let msg = e.to_string();
        match e {
            SpectralError::InvalidOptions(_) => CliError::Usage(msg),
            SpectralError::NotConverged(_) | SpectralError::CentralityNotConverged(_) => {
                CliError::Convergence(msg)
            }
            SpectralError::Disconnected { .. } => {
                CliError::Data(format!("{msg} (rerun with --lcc)"))
            }
            SpectralError::Uniformize(u) => u.into(),
            _ => CliError::Data(msg),
        }
    }
}

impl From<UniformizeError> for CliError {
    fn from(e: UniformizeError) -> Self {
        match e {
            UniformizeError::NotUniform | UniformizeError::NotSimple(_) => CliError::Data(e.to_string()),
            _ => CliError::Usage(format!("invalid order: {e}")),
        }
    }
}
