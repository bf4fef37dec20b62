use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::errors::AppError;

/// JSON report with the manifest embedded; to `out` or standard output.
pub fn emit_json(
    mut body: Map<String, Value>,
    manifest: Value,
    out: Option<&Path>,
) -> Result<(), AppError> {
    body.insert("manifest".to_string(), manifest);
    let text = serde_json::to_string_pretty(&Value::Object(body))
        .map_err(|e| AppError::failure(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            // A closed pipe downstream is not our failure.
            if let Err(e) = writeln!(stdout, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

/// CSV table to `out`, with the manifest in a sibling `<out>.manifest.json`.
pub fn emit_csv(content: &[u8], manifest: Value, out: &Path) -> Result<(), AppError> {
    fs::write(out, content)?;
    let mut sidecar = PathBuf::from(out);
    sidecar.set_file_name(format!(
        "{}.manifest.json",
        out.file_name().and_then(|s| s.to_str()).unwrap_or("output")
    ));
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| AppError::failure(e.to_string()))?;
    fs::write(sidecar, text + "\n")?;
    Ok(())
}

/// 17-significant-digit decimal rendering; round-trips any double.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}
