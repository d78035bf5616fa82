//! Transcripts and the training-example layouts derived from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::env::{Environment, Observation};
use crate::task::goal::Outcome;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptStep {
    /// What the agent typed.
    pub input: String,
    pub observation: Observation,
}

/// One recorded episode. Replaying `input`s from a reset with the same key
/// reproduces every observation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub task: String,
    pub variation: usize,
    pub seed: u64,
    pub simplifications: Vec<String>,
    pub initial: Observation,
    pub steps: Vec<TranscriptStep>,
    pub final_score: f64,
    pub outcome: Outcome,
}

impl Transcript {
    /// Snapshot of the environment's current episode.
    pub fn from_env(env: &Environment, initial: Observation) -> Option<Transcript> {
        let (task, variation, seed, flags) = env.episode_key()?;
        let steps: Vec<TranscriptStep> = env
            .history()
            .iter()
            .map(|r| TranscriptStep {
                input: r.input.clone(),
                observation: r.observation.clone(),
            })
            .collect();
        let last = steps.last().map_or(&initial, |s| &s.observation);
        Some(Transcript {
            task: task.to_string(),
            variation,
            seed,
            simplifications: flags.names().into_iter().map(String::from).collect(),
            final_score: last.score,
            outcome: last.outcome,
            initial,
            steps,
        })
    }

    pub fn rewards(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.observation.reward).collect()
    }

    /// Observation before step `t`: o_0 is the reset observation.
    fn obs(&self, t: usize) -> &Observation {
        if t == 0 {
            &self.initial
        } else {
            &self.steps[t - 1].observation
        }
    }
}

/// Suffix sums of `rewards`.
pub fn returns_to_go(rewards: &[f64]) -> Vec<f64> {
    let mut out = alloc::vec![0.0; rewards.len()];
    let mut acc = 0.0;
    for (i, r) in rewards.iter().enumerate().rev() {
        acc += r;
        out[i] = acc;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Bc,
    Tdt,
    LmPrompt,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown export format {0} (expected bc, tdt or lm-prompt)")]
pub struct UnknownFormat(pub String);

impl Format {
    pub fn parse(s: &str) -> Result<Format, UnknownFormat> {
        match s {
            "bc" => Ok(Format::Bc),
            "tdt" => Ok(Format::Tdt),
            "lm-prompt" => Ok(Format::LmPrompt),
            other => Err(UnknownFormat(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Bc => "bc",
            Format::Tdt => "tdt",
            Format::LmPrompt => "lm-prompt",
        }
    }
}

/// One training example; the target is always the next action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Bc {
        task: String,
        variation: usize,
        step: usize,
        description: String,
        prev_obs: String,
        prev_action: String,
        obs: String,
        target: String,
    },
    Tdt {
        task: String,
        variation: usize,
        step: usize,
        description: String,
        prev_obs: String,
        prev_rtg: f64,
        prev_action: String,
        obs: String,
        rtg: f64,
        target: String,
    },
    Lm {
        task: String,
        variation: usize,
        step: usize,
        prompt: String,
        target: String,
    },
}

/// The left-to-right prompt layout with `[CLS]`/`[SEP]` separators.
pub fn lm_prompt(description: &str, obs: &Observation, prev_obs: &str, prev_action: &str) -> String {
    format!(
        "[CLS] {description} [SEP] {} [SEP] {} [SEP] {} [SEP] {prev_obs} [SEP] {prev_action} [SEP]",
        obs.obs_text, obs.look_text, obs.inventory_text
    )
}

/// One record per step, in episode order. Before the first step the previous
/// observation and action are empty and the previous return equals the first.
pub fn records(t: &Transcript, format: Format) -> Vec<Record> {
    let rtg = returns_to_go(&t.rewards());
    let d = &t.initial.task_description;
    (0..t.steps.len())
        .map(|i| {
            let obs = t.obs(i);
            let (prev_obs, prev_action) = if i == 0 {
                (String::new(), String::new())
            } else {
                (t.obs(i - 1).obs_text.clone(), t.steps[i - 1].input.clone())
            };
            let target = t.steps[i].input.clone();
            match format {
                Format::Bc => Record::Bc {
                    task: t.task.clone(),
                    variation: t.variation,
                    step: i,
                    description: d.clone(),
                    prev_obs,
                    prev_action,
                    obs: obs.obs_text.clone(),
                    target,
                },
                Format::Tdt => Record::Tdt {
                    task: t.task.clone(),
                    variation: t.variation,
                    step: i,
                    description: d.clone(),
                    prev_obs,
                    prev_rtg: if i == 0 { rtg[0] } else { rtg[i - 1] },
                    prev_action,
                    obs: obs.obs_text.clone(),
                    rtg: rtg[i],
                    target,
                },
                Format::LmPrompt => Record::Lm {
                    task: t.task.clone(),
                    variation: t.variation,
                    step: i,
                    prompt: lm_prompt(d, obs, &prev_obs, &prev_action),
                    target,
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_sums() {
        assert_eq!(returns_to_go(&[0.0, 0.1, 0.2, 0.7]).iter().map(|x| (x * 10.0).round() / 10.0).collect::<Vec<_>>(), [1.0, 1.0, 0.9, 0.7]);
        assert_eq!(returns_to_go(&[0.0, 0.0]), [0.0, 0.0]);
        assert!(returns_to_go(&[]).is_empty());
    }

    #[test]
    fn formats_round_trip_names() {
        for f in [Format::Bc, Format::Tdt, Format::LmPrompt] {
            assert_eq!(Format::parse(f.name()), Ok(f));
        }
        assert!(Format::parse("csv").is_err());
    }
}
