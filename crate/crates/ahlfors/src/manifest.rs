use serde::{Deserialize, Serialize};

/// Resolved configuration of one run. Two runs with equal manifests write
/// identical bytes, so the manifest holds no clock or host data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Every argument after defaults are applied, global flags included.
    pub config: serde_json::Value,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            outputs: Vec::new(),
        }
    }
}
