//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

/// JSON report written by `--report`. Schema version 1.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub input_edges: usize,
    pub output_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Present when sigma is null and a sampled estimate was used instead.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_norm: Option<f64>,
    pub epsilon: f64,
    pub fail_prob: f64,
    pub seed: u64,
    pub mode: String,
    pub scale_factor: f64,
    pub runtime_ms: u64,
    pub counters: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            schema: 1,
            command: command.to_string(),
            input_edges: 0,
            output_edges: 0,
            sigma: None,
            rel_norm: None,
            epsilon: 0.0,
            fail_prob: 0.0,
            seed: 0,
            mode: String::new(),
            scale_factor: 1.0,
            runtime_ms: 0,
            counters: BTreeMap::new(),
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut body = serde_json::to_string_pretty(self).expect("report serializes");
        body.push('\n');
        sparsifier_core::io::atomic_write(path, body.as_bytes())
            .map_err(|e| std::io::Error::other(e.to_string()))
    }
}
