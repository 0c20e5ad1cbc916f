//! Mutant manifest: the enumerated mutants of one run, written by `mutate`
//! and read back by `run`.

use std::collections::HashSet;
use std::path::Path;

use geomutate_core::engine::Mutant;
use geomutate_core::interception::OperationDescriptor;
use geomutate_core::value::ArgKind;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifestEntry {
    pub id: String,
    pub operator_id: String,
    pub target_operation: String,
    pub arg_kinds: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub run: String,
    pub sut: String,
    pub mutants: Vec<ManifestEntry>,
}

impl Manifest {
    /// The run id is derived from the content, so identical inputs always
    /// produce an identical manifest.
    pub fn from_mutants(sut: &str, mutants: &[Mutant]) -> Self {
        let entries: Vec<ManifestEntry> = mutants
            .iter()
            .map(|m| ManifestEntry {
                id: m.id.clone(),
                operator_id: m.operator_id.clone(),
                target_operation: m.target_operation.name.clone(),
                arg_kinds: m.target_operation.arg_kinds.iter().map(|k| k.name().to_string()).collect(),
            })
            .collect();
        Manifest { run: run_id(sut, &entries), sut: sut.into(), mutants: entries }
    }

    /// Rebuilds the mutants, checking each entry against the operator
    /// catalog and the SUT's registered operations.
    pub fn to_mutants(&self) -> Result<Vec<Mutant>> {
        let mut seen = HashSet::new();
        self.mutants
            .iter()
            .map(|e| {
                if !seen.insert(e.id.as_str()) {
                    return Err(Error::MalformedManifest(format!("duplicate mutant id {}", e.id)));
                }
                let kinds = e
                    .arg_kinds
                    .iter()
                    .map(|k| {
                        ArgKind::from_name(k)
                            .ok_or_else(|| Error::MalformedManifest(format!("unknown argument kind {k}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let target = OperationDescriptor::new(&self.sut, &e.target_operation, &kinds);
                Mutant::new(&e.id, &e.operator_id, target)
                    .map_err(|err| Error::MalformedManifest(format!("{}: {err}", e.id)))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedManifest(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }
}

fn run_id(sut: &str, entries: &[ManifestEntry]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(sut.as_bytes());
    for e in entries {
        hasher.update([0]);
        hasher.update(e.id.as_bytes());
        hasher.update([0]);
        hasher.update(e.operator_id.as_bytes());
        hasher.update([0]);
        hasher.update(e.target_operation.as_bytes());
    }
    let digest = hasher.finalize();
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("{sut}-{hex}")
}
