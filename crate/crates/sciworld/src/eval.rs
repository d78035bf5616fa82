//! Batch runs of the baseline agents and gold-corpus generation.

use std::io;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use sciworld_core::catalog::{Catalog, TaskDef};
use sciworld_core::env::{EnvError, Environment};
use sciworld_core::export::Transcript;
use sciworld_core::oracle::{self, OracleError};
use sciworld_core::rng;
use sciworld_core::task::{split, Outcome, Simplifications, Split};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Agent {
    /// Uniform choice among the valid actions.
    RandomValid,
    /// The scripted reference solver.
    Oracle,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("{task} variation {variation} seed {seed}: {source}")]
    Oracle {
        task: String,
        variation: usize,
        seed: u64,
        source: OracleError,
    },
    #[error("{task} variation {variation} seed {seed}: oracle scored {score}")]
    NotSolved {
        task: String,
        variation: usize,
        seed: u64,
        score: f64,
    },
    #[error("task {0} has no variations in the {1} split")]
    EmptySplit(String, &'static str),
}

/// Runs one episode to completion and returns its transcript.
pub fn run_episode(
    catalog: &Arc<Catalog>,
    agent: Agent,
    task: &str,
    variation: usize,
    seed: u64,
    flags: Simplifications,
) -> Result<Transcript, EvalError> {
    let mut env = Environment::new(catalog.clone());
    let start = env.reset(task, variation, seed, flags)?;
    let wrap = |source| EvalError::Oracle {
        task: task.to_string(),
        variation,
        seed,
        source,
    };
    match agent {
        Agent::RandomValid => {
            let mut r = rng::stream(seed, &format!("random-valid {task} {variation}"));
            oracle::random_episode(&mut env, &mut r).map_err(wrap)?;
        }
        Agent::Oracle => oracle::solve(&mut env, start.clone()).map_err(wrap)?,
    }
    Ok(Transcript::from_env(&env, start).expect("episode was reset"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskRow {
    pub task: String,
    pub topic: String,
    pub name: String,
    pub episodes: usize,
    pub mean_score: f64,
}

/// Episode `i` of a task uses the split's variations round-robin with seed
/// `seed + i`.
pub fn episode_keys(task: &TaskDef, which: Split, episodes: usize, seed: u64) -> Vec<(usize, u64)> {
    let vars = split::indices(task, which);
    (0..episodes)
        .map(|i| (vars[i % vars.len()], seed.wrapping_add(i as u64)))
        .collect()
}

pub fn evaluate(
    catalog: &Arc<Catalog>,
    agent: Agent,
    tasks: &[&TaskDef],
    which: Split,
    episodes: usize,
    seed: u64,
    flags: Simplifications,
) -> Result<Vec<TaskRow>, EvalError> {
    let mut rows = Vec::new();
    for t in tasks {
        if split::indices(t, which).is_empty() {
            return Err(EvalError::EmptySplit(t.id.clone(), which.name()));
        }
        let mut total = 0.0;
        let keys = episode_keys(t, which, episodes, seed);
        for &(v, s) in &keys {
            total += run_episode(catalog, agent, &t.id, v, s, flags)?.final_score;
        }
        rows.push(TaskRow {
            task: t.id.clone(),
            topic: t.topic.clone(),
            name: t.name.clone(),
            episodes: keys.len(),
            mean_score: if keys.is_empty() { 0.0 } else { total / keys.len() as f64 },
        });
    }
    Ok(rows)
}

pub fn overall(rows: &[TaskRow]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().map(|r| r.mean_score).sum::<f64>() / rows.len() as f64
}

/// Tab-separated results: task id, topic, task name, episodes, mean score.
pub fn write_results(path: &Path, rows: &[TaskRow]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_path(path)?;
    w.write_record(["task", "topic", "name", "episodes", "mean_score"])?;
    for r in rows {
        w.write_record([
            r.task.as_str(),
            r.topic.as_str(),
            r.name.as_str(),
            &r.episodes.to_string(),
            &format!("{:.3}", r.mean_score),
        ])?;
    }
    w.write_record(["all", "", "Average", &rows.iter().map(|r| r.episodes).sum::<usize>().to_string(), &format!("{:.3}", overall(rows))])?;
    w.flush()
}

/// Oracle transcripts for every variation of `task` in `which`, failing on
/// the first episode that does not reach a perfect score.
pub fn gold_corpus(
    catalog: &Arc<Catalog>,
    task: &TaskDef,
    which: Split,
    seed: u64,
    flags: Simplifications,
) -> Result<Vec<Transcript>, EvalError> {
    let mut out = Vec::new();
    for v in split::indices(task, which) {
        let t = run_episode(catalog, Agent::Oracle, &task.id, v, seed, flags)?;
        if t.final_score != 1.0 || t.outcome != Outcome::Success {
            return Err(EvalError::NotSolved {
                task: task.id.clone(),
                variation: v,
                seed,
                score: t.final_score,
            });
        }
        out.push(t);
    }
    Ok(out)
}
