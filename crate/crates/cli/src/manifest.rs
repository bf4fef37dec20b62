use std::path::Path;
use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Reproducibility record attached to every machine-readable output.
pub struct Manifest {
    subcommand: String,
    options: Map<String, Value>,
    input_digests: Map<String, Value>,
    start: Instant,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        Manifest {
            subcommand: subcommand.to_string(),
            options: Map::new(),
            input_digests: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn option(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.options.insert(key.to_string(), value.into());
        self
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) -> &mut Self {
        let digest = Sha256::digest(bytes);
        self.input_digests.insert(
            path.display().to_string(),
            Value::String(format!("sha256:{digest:x}")),
        );
        self
    }

    pub fn finish(&self) -> Value {
        json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "subcommand": self.subcommand,
            "options": self.options,
            "input_digests": self.input_digests,
            "elapsed_ms": self.start.elapsed().as_secs_f64() * 1e3,
        })
    }
}
