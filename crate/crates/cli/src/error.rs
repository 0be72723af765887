use serde_json::{json, Value};

use crate::SCHEMA_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] helmholtz3d::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        use helmholtz3d::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Output(_) => "output",
            CliError::Core(e) => match e {
                E::Domain(_) => "domain",
                E::Unsupported(_) => "unsupported",
                E::InvalidShape(_) => "invalid_shape",
                E::GridTooCoarse { .. } => "grid_too_coarse",
                E::AccidentalDegeneracy { .. } => "accidental_degeneracy",
                E::Conditioning(_) => "conditioning",
                E::NotFound { .. } => "not_found",
                E::Tabulated(_) => "tabulated",
                E::Io(_) => "io",
                E::Csv(_) => "csv",
            },
        }
    }

    /// 2 for bad input, 1 for failures of the computation itself.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "accidental_degeneracy" | "conditioning" | "not_found" | "output" => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "kind": self.kind(), "message": self.to_string() },
        })
    }
}
