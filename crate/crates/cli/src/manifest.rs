//! Run manifest: a small JSON record of what a command read, what it wrote,
//! and under which options, so a run can be reproduced or audited later.
//! Deliberately free of timestamps; identical runs write identical manifests.

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

pub const FILE_NAME: &str = "run_manifest.json";

/// Input files a corpus directory may contain, in either serialization.
const CORPUS_BASES: [&str; 5] = [
    "publications",
    "roster",
    "salary",
    "sectors",
    "reconciliation",
];

pub fn digest_file(path: &Path) -> Result<String> {
    let mut file =
        File::open(path).with_context(|| format!("cannot open {} for hashing", path.display()))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file
            .read(&mut buf)
            .with_context(|| format!("cannot read {}", path.display()))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

/// Digests of every recognized input file present in a corpus directory,
/// keyed by bare file name.
pub fn digest_corpus_dir(dir: &Path) -> Result<BTreeMap<String, String>> {
    let mut digests = BTreeMap::new();
    for base in CORPUS_BASES {
        for ext in ["csv", "jsonl"] {
            let path = dir.join(format!("{base}.{ext}"));
            if path.is_file() {
                digests.insert(format!("{base}.{ext}"), digest_file(&path)?);
            }
        }
    }
    let meta = dir.join("meta.json");
    if meta.is_file() {
        digests.insert("meta.json".to_string(), digest_file(&meta)?);
    }
    Ok(digests)
}

/// Writes `run_manifest.json` into `out_dir`. `outputs` lists file names
/// emitted by the command, excluding the manifest itself.
pub fn write(
    out_dir: &Path,
    command: &str,
    options: Value,
    inputs: BTreeMap<String, String>,
    mut outputs: Vec<String>,
) -> Result<()> {
    outputs.sort();
    let doc = json!({
        "tool": "rankshift",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "options": options,
        "inputs": inputs,
        "outputs": outputs,
    });
    let path = out_dir.join(FILE_NAME);
    let mut file = File::create(&path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    let text = serde_json::to_string_pretty(&doc).expect("manifest serializes");
    file.write_all(text.as_bytes())
        .and_then(|()| file.write_all(b"\n"))
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
