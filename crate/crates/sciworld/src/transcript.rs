//! Line-delimited JSON transcript files: one episode per line.
//!
//! The record layout is described by `docs/transcript.schema.json`.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sciworld_core::catalog::Catalog;
use sciworld_core::env::{EnvError, Environment};
use sciworld_core::export::Transcript;
use sciworld_core::task::simplify::UnknownFlag;
use sciworld_core::task::Simplifications;

#[derive(Debug, thiserror::Error)]
pub enum TranscriptError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        source: serde_json::Error,
    },
    #[error("no transcript files (*.jsonl) in {0}")]
    MissingInput(PathBuf),
    #[error(transparent)]
    Flags(#[from] UnknownFlag),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("replay diverged at step {step} of {task} variation {variation}")]
    Diverged {
        task: String,
        variation: usize,
        step: usize,
    },
}

pub fn to_line(t: &Transcript) -> String {
    serde_json::to_string(t).expect("transcripts always serialize")
}

pub fn write<W: Write>(mut out: W, ts: &[Transcript]) -> io::Result<()> {
    for t in ts {
        writeln!(out, "{}", to_line(t))?;
    }
    Ok(())
}

pub fn write_file(path: &Path, ts: &[Transcript]) -> Result<(), TranscriptError> {
    let io = |source| TranscriptError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = io::BufWriter::new(fs::File::create(path).map_err(io)?);
    write(&mut f, ts).map_err(io)?;
    f.flush().map_err(io)
}

pub fn read_file(path: &Path) -> Result<Vec<Transcript>, TranscriptError> {
    let io = |source| TranscriptError::Io {
        path: path.to_path_buf(),
        source,
    };
    let f = fs::File::open(path).map_err(io)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(io)?;
        if line.trim().is_empty() {
            continue;
        }
        let t = serde_json::from_str(&line).map_err(|source| TranscriptError::Json {
            path: path.to_path_buf(),
            line: i + 1,
            source,
        })?;
        out.push(t);
    }
    Ok(out)
}

/// Every transcript under `dir` (or in the file `dir`), files in name order.
pub fn read_corpus(dir: &Path) -> Result<Vec<Transcript>, TranscriptError> {
    if dir.is_file() {
        return read_file(dir);
    }
    let entries = fs::read_dir(dir).map_err(|source| TranscriptError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    if files.is_empty() {
        return Err(TranscriptError::MissingInput(dir.to_path_buf()));
    }
    files.sort();
    let mut out = Vec::new();
    for f in files {
        out.extend(read_file(&f)?);
    }
    Ok(out)
}

/// Replays the recorded inputs and checks every observation matches.
pub fn replay(catalog: Arc<Catalog>, t: &Transcript) -> Result<(), TranscriptError> {
    let flags = Simplifications::parse(&t.simplifications.join(","))?;
    let mut env = Environment::new(catalog);
    let diverged = |step| TranscriptError::Diverged {
        task: t.task.clone(),
        variation: t.variation,
        step,
    };
    if env.reset(&t.task, t.variation, t.seed, flags)? != t.initial {
        return Err(diverged(0));
    }
    for (i, s) in t.steps.iter().enumerate() {
        if env.step(&s.input)? != s.observation {
            return Err(diverged(i + 1));
        }
    }
    Ok(())
}
