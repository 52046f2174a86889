//! Output plumbing: provenance headers, FNV config hashing, and sink
//! selection between stdout and files.

use std::io::Write;
use std::path::Path;

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// FNV-1a 64-bit hash of the canonical config string.
pub fn config_hash(canonical: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in canonical.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Text provenance header placed at the top of every text output.
pub fn text_header(canonical: &str) -> String {
    format!(
        "# photonq v{VERSION} | config-hash: {:016x}\n# config: {canonical}\n",
        config_hash(canonical)
    )
}

/// Provenance object embedded in JSON outputs.
pub fn json_provenance(canonical: &str) -> serde_json::Value {
    serde_json::json!({
        "version": VERSION,
        "config_hash": format!("{:016x}", config_hash(canonical)),
        "config": canonical,
    })
}

/// Write `content` to the given path, or to stdout when no path is set.
pub fn emit(out: Option<&Path>, content: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(|e| {
                        CliError::Validation(format!("cannot create {parent:?}: {e}"))
                    })?;
                }
            }
            std::fs::write(path, content)
                .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))
        }
        None => {
            std::io::stdout()
                .write_all(content)
                .map_err(|e| CliError::Validation(format!("stdout: {e}")))
        }
    }
}

/// Derive a sibling path with a suffix inserted before the extension.
pub fn suffixed(path: &Path, suffix: &str) -> std::path::PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str());
    let name = match ext {
        Some(e) => format!("{stem}{suffix}.{e}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}
