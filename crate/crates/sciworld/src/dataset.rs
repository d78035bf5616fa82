//! Writing training-example files and their manifest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sciworld_core::export::{records, Format, Transcript};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpisodeEntry {
    pub task: String,
    pub variation: usize,
    pub seed: u64,
    pub records: usize,
    pub final_score: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub engine_version: String,
    pub format: String,
    pub transcripts: usize,
    pub records: usize,
    pub episodes: Vec<EpisodeEntry>,
}

/// The record file contents (one JSON object per line) and its manifest.
pub fn export(ts: &[Transcript], format: Format) -> (String, Manifest) {
    let mut body = String::new();
    let mut episodes = Vec::with_capacity(ts.len());
    for t in ts {
        let rs = records(t, format);
        for r in &rs {
            body.push_str(&serde_json::to_string(r).expect("records serialize"));
            body.push('\n');
        }
        episodes.push(EpisodeEntry {
            task: t.task.clone(),
            variation: t.variation,
            seed: t.seed,
            records: rs.len(),
            final_score: t.final_score,
        });
    }
    let manifest = Manifest {
        engine_version: ENGINE_VERSION.to_string(),
        format: format.name().to_string(),
        transcripts: ts.len(),
        records: episodes.iter().map(|e| e.records).sum(),
        episodes,
    };
    (body, manifest)
}

pub fn manifest_text(m: &Manifest) -> String {
    let mut s = serde_json::to_string_pretty(m).expect("manifest serializes");
    s.push('\n');
    s
}

/// Writes `<format>.jsonl` and `<format>.manifest.json` into `dir`.
pub fn write_export(ts: &[Transcript], format: Format, dir: &Path) -> io::Result<(PathBuf, Manifest)> {
    fs::create_dir_all(dir)?;
    let (body, manifest) = export(ts, format);
    let data = dir.join(format!("{}.jsonl", format.name()));
    fs::write(&data, body)?;
    fs::write(
        dir.join(format!("{}.manifest.json", format.name())),
        manifest_text(&manifest),
    )?;
    Ok((data, manifest))
}
