//! Resumable sweeps: a cursor file plus a spool of finished records.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use forcing_core::report::verify_graphs;
use forcing_core::verifier::{VerdictRecord, VerifyOptions};
use forcing_core::{Graph, Limits};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct State {
    config: serde_json::Value,
    cursor: usize,
    total: usize,
}

fn spool_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".records.jsonl");
    PathBuf::from(p)
}

fn save(path: &Path, state: &State) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec(state)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_spool(path: &Path) -> Result<Vec<VerdictRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if !line.is_empty() {
            out.push(serde_json::from_str(&line).context("corrupt record spool")?);
        }
    }
    Ok(out)
}

/// Verifies `graphs[cursor..]` in chunks of `every`, saving progress after each
/// chunk, and returns the records of the whole universe.
pub fn run(
    path: &Path,
    config: &serde_json::Value,
    graphs: &[Graph],
    every: usize,
    limits: &Limits,
    options: VerifyOptions,
) -> Result<Vec<forcing_core::verifier::VerdictRecord>> {
    let spool = spool_path(path);
    let mut records = Vec::new();
    let mut cursor = 0;
    if path.exists() {
        let state: State = serde_json::from_slice(&fs::read(path)?).context("corrupt checkpoint")?;
        if state.config != *config || state.total != graphs.len() {
            bail!("checkpoint {} belongs to a different sweep", path.display());
        }
        cursor = state.cursor;
        records = load_spool(&spool)?;
        eprintln!("resuming at graph {cursor} of {}", graphs.len());
    } else if spool.exists() {
        fs::remove_file(&spool)?;
    }
    let mut out = OpenOptions::new().create(true).append(true).open(&spool)?;
    for chunk_start in (cursor..graphs.len()).step_by(every.max(1)) {
        let end = (chunk_start + every.max(1)).min(graphs.len());
        let chunk = verify_graphs(&graphs[chunk_start..end], limits, options);
        for r in &chunk {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        out.sync_data()?;
        records.extend(chunk);
        save(
            path,
            &State {
                config: config.clone(),
                cursor: end,
                total: graphs.len(),
            },
        )?;
    }
    Ok(records)
}
