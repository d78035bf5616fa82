//! The agent-facing reset/step interface.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::describe;
use crate::engine;
use crate::exec::{self, Event};
use crate::object::ObjId;
use crate::parser::{self, ambiguity_prompt, ParseOutcome, ParsedAction, Parser};
use crate::referent::ViewIndex;
use crate::task::goal::{EvalCtx, Outcome, Scorer};
use crate::task::{generate, Simplifications, TaskError};
use crate::world::World;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnvError {
    #[error(transparent)]
    Task(#[from] TaskError),
    #[error("no episode is running; call reset first")]
    NotStarted,
    #[error("the episode is over")]
    EpisodeOver,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub obs_text: String,
    pub look_text: String,
    pub inventory_text: String,
    pub task_description: String,
    pub score: f64,
    pub reward: f64,
    pub done: bool,
    pub outcome: Outcome,
    /// Agent steps taken so far; invalid inputs do not count.
    pub steps: u32,
}

/// What happened on one `step` call.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub input: String,
    /// Canonical text of the executed action, if the input parsed.
    pub action: Option<String>,
    pub observation: Observation,
}

struct Episode {
    task: String,
    variation: usize,
    seed: u64,
    flags: Simplifications,
    world: World,
    parser: Parser,
    scorer: Scorer,
    description: String,
    steps: u32,
    invalid_streak: u32,
    pending: Option<Vec<ParsedAction>>,
    done: bool,
    last_score: f64,
    history: Vec<StepRecord>,
}

/// One environment instance; `reset` starts a fresh episode.
pub struct Environment {
    catalog: Arc<Catalog>,
    ep: Option<Episode>,
}

impl Environment {
    pub fn new(catalog: Arc<Catalog>) -> Self {
        Environment { catalog, ep: None }
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn reset(
        &mut self,
        task: &str,
        variation: usize,
        seed: u64,
        flags: Simplifications,
    ) -> Result<Observation, EnvError> {
        let g = generate(self.catalog.clone(), task, variation, seed, flags)?;
        let initial: BTreeMap<ObjId, _> = g
            .world
            .ids()
            .map(|i| (i, (g.world.obj(i).temperature, g.world.obj(i).phase)))
            .collect();
        let ctx = EvalCtx {
            bindings: g.bindings,
            initial,
            ..EvalCtx::default()
        };
        let scorer = Scorer::new(&g.required, &g.optional, &g.failure, ctx);
        let parser = Parser::new(&self.catalog, flags.teleport);
        self.ep = Some(Episode {
            task: task.to_string(),
            variation,
            seed,
            flags,
            world: g.world,
            parser,
            scorer,
            description: g.description,
            steps: 0,
            invalid_streak: 0,
            pending: None,
            done: false,
            last_score: 0.0,
            history: Vec::new(),
        });
        let ep = self.ep.as_ref().expect("just set");
        let look = describe::describe_room(&ep.world);
        Ok(ep.observe(look, 0.0))
    }

    pub fn step(&mut self, input: &str) -> Result<Observation, EnvError> {
        let ep = self.ep.as_mut().ok_or(EnvError::NotStarted)?;
        if ep.done {
            return Err(EnvError::EpisodeOver);
        }
        let (text, action) = ep.advance(input);
        let score = ep.score();
        let reward = score - ep.last_score;
        ep.last_score = score;
        let obs = ep.observe(text, reward);
        ep.history.push(StepRecord {
            input: input.to_string(),
            action,
            observation: obs.clone(),
        });
        Ok(obs)
    }

    fn episode(&self) -> Result<&Episode, EnvError> {
        self.ep.as_ref().ok_or(EnvError::NotStarted)
    }

    pub fn world(&self) -> Option<&World> {
        self.ep.as_ref().map(|e| &e.world)
    }

    /// Mutable access to the running world for tooling that probes the engine.
    /// Edits are picked up by the scorer on the next step.
    pub fn world_mut(&mut self) -> Option<&mut World> {
        self.ep.as_mut().map(|e| &mut e.world)
    }

    pub fn bindings(&self) -> Option<&BTreeMap<String, Vec<ObjId>>> {
        self.ep.as_ref().map(|e| &e.scorer.ctx.bindings)
    }

    pub fn scorer(&self) -> Option<&Scorer> {
        self.ep.as_ref().map(|e| &e.scorer)
    }

    /// (task, variation, seed, flags) of the current episode.
    pub fn episode_key(&self) -> Option<(&str, usize, u64, Simplifications)> {
        self.ep
            .as_ref()
            .map(|e| (e.task.as_str(), e.variation, e.seed, e.flags))
    }

    pub fn history(&self) -> &[StepRecord] {
        self.ep.as_ref().map_or(&[], |e| &e.history)
    }

    pub fn is_done(&self) -> bool {
        self.ep.as_ref().is_some_and(|e| e.done)
    }

    /// Valid actions in the current state, canonical text order.
    pub fn valid_actions(&self) -> Result<Vec<ParsedAction>, EnvError> {
        let ep = self.episode()?;
        let idx = ViewIndex::new(&ep.world);
        Ok(parser::valid_actions(&ep.world, &idx))
    }

    /// Canonical text of every visible object, as the parser accepts it.
    pub fn object_names(&self) -> Result<BTreeMap<ObjId, String>, EnvError> {
        let ep = self.episode()?;
        let idx = ViewIndex::new(&ep.world);
        Ok(idx
            .objects
            .iter()
            .filter_map(|&o| idx.name(o).map(|n| (o, n.to_string())))
            .collect())
    }
}

impl Episode {
    fn score(&self) -> f64 {
        self.scorer.score()
    }

    fn observe(&self, obs_text: String, reward: f64) -> Observation {
        Observation {
            obs_text,
            look_text: describe::describe_room(&self.world),
            inventory_text: describe::describe_inventory(&self.world),
            task_description: self.description.clone(),
            score: self.score(),
            reward,
            done: self.done,
            outcome: self.scorer.outcome,
            steps: self.steps,
        }
    }

    fn invalid(&mut self, text: String) -> (String, Option<String>) {
        self.invalid_streak += 1;
        if self.invalid_streak >= self.world.catalog.physics.max_invalid_streak {
            self.finish_failure("Too many invalid inputs.");
        }
        (text, None)
    }

    fn finish_failure(&mut self, why: &str) {
        if self.scorer.outcome == Outcome::Running {
            self.scorer.outcome = Outcome::Failure;
            self.scorer.reason = Some(why.to_string());
        }
        self.done = true;
    }

    fn advance(&mut self, input: &str) -> (String, Option<String>) {
        let chosen = match self.pending.take() {
            Some(opts) => {
                let t = input.trim();
                if t.is_empty() {
                    return (String::from("Cancelled."), None);
                }
                match t.parse::<usize>() {
                    Ok(n) if (1..=opts.len()).contains(&n) => Some(opts[n - 1].clone()),
                    _ => None,
                }
            }
            None => None,
        };
        let pa = match chosen {
            Some(pa) => pa,
            None => {
                let idx = ViewIndex::new(&self.world);
                match self.parser.parse(&self.world, &idx, input) {
                    ParseOutcome::Parsed(pa) => pa,
                    ParseOutcome::Ambiguous(opts) => {
                        let text = ambiguity_prompt(&opts);
                        self.pending = Some(opts);
                        return self.invalid(text);
                    }
                    ParseOutcome::Unknown => {
                        return self.invalid(String::from("No known action matches that input."));
                    }
                }
            }
        };
        self.invalid_streak = 0;
        let r = exec::execute(&mut self.world, &pa.action, &self.description);
        for e in &r.events {
            match *e {
                Event::Focus(id) => self.scorer.on_focus(&self.world, id),
                Event::Did(a, id) => self.scorer.on_did(a, id),
            }
        }
        self.scorer.update(&self.world);
        for _ in 0..r.ticks {
            if self.scorer.outcome != Outcome::Running {
                break;
            }
            engine::tick(&mut self.world);
            self.scorer.update(&self.world);
        }
        self.steps += 1;
        if self.scorer.outcome != Outcome::Running {
            self.done = true;
        } else if self.steps >= self.world.catalog.physics.max_steps {
            self.finish_failure("Out of steps.");
        }
        (r.text, Some(pa.text))
    }
}
