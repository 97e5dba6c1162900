use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::args::{Common, Format};
use crate::Failure;

#[derive(Debug, Serialize)]
struct GeometryRecord {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    geometry: GeometryRecord,
    parameters: &'a BTreeMap<String, Value>,
    files: &'a [String],
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects the artifacts of one run and writes them with a manifest.
pub struct Artifacts {
    dir: PathBuf,
    formats: Vec<Format>,
    files: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
}

fn default_dir(command: &str) -> PathBuf {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Path::new("out").join(format!("{command}-{secs}"))
}

impl Artifacts {
    pub fn new(command: &str, common: &Common) -> Self {
        Self {
            dir: common.out.clone().unwrap_or_else(|| default_dir(command)),
            formats: common.format.clone(),
            files: Vec::new(),
            parameters: BTreeMap::new(),
        }
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    pub fn param(&mut self, key: &str, v: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), Failure> {
        fs::create_dir_all(&self.dir).map_err(|e| Failure::io(format!("{}: {e}", self.dir.display())))?;
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        self.files.push(name.to_string());
        Ok(())
    }

    /// Writes `manifest.json` next to the artifacts.
    pub fn finish(mut self, command: &str, geom_path: &Path, geom_bytes: &[u8]) -> Result<(), Failure> {
        self.files.sort();
        let manifest = Manifest {
            tool: "rpr",
            version: env!("CARGO_PKG_VERSION"),
            command,
            geometry: GeometryRecord { path: geom_path.display().to_string(), sha256: sha256_hex(geom_bytes) },
            parameters: &self.parameters,
            files: &self.files,
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        let files = std::mem::take(&mut self.files);
        self.write("manifest.json", &text)?;
        self.files = files;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
