//! Goal predicates and the scorer that latches them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::object::{ObjId, Phase};
use crate::world::World;

/// Which objects a predicate talks about. Predicates hold when any selected
/// object satisfies them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    /// Objects bound by the task generator under this name.
    Slot(String),
    /// Objects the agent has focused on so far.
    Focused,
    Any,
    /// A catalog category, or one of the dynamic ones: living, nonliving,
    /// plant, animal.
    Category(String),
    Kind(String),
    /// Substances of this material.
    Material(String),
    Room(String),
    /// Second-generation living things (grown from fruit seeds).
    Offspring,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// Latched by the focus action itself, never by world state.
    Focus(Selector),
    /// Some `obj` is somewhere inside some `container`.
    Inside { obj: Selector, container: Selector },
    InInventory(Selector),
    AgentIn(Selector),
    StateIs { obj: Selector, phase: Phase },
    StateChanged(Selector),
    /// Temperature moved by at least `delta` (signed) from its start.
    TempChange { obj: Selector, delta: f64 },
    DeviceActive(Selector),
    Powered {
        obj: Selector,
        #[serde(default)]
        renewable: bool,
    },
    Connected(Selector),
    StageAtLeast { obj: Selector, stage: usize },
    Exists(Selector),
    /// The agent performed `action` on a selected object.
    Did { action: String, obj: Selector },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoalDef {
    pub when: Predicate,
    pub points: Option<f64>,
}

impl Selector {
    fn slot(&self) -> Option<&str> {
        match self {
            Selector::Slot(s) => Some(s),
            _ => None,
        }
    }
}

impl Predicate {
    /// Slot names this predicate refers to.
    pub fn slots(&self) -> Vec<&str> {
        let sels: Vec<&Selector> = match self {
            Predicate::Focus(s)
            | Predicate::InInventory(s)
            | Predicate::AgentIn(s)
            | Predicate::StateChanged(s)
            | Predicate::DeviceActive(s)
            | Predicate::Connected(s)
            | Predicate::Exists(s) => alloc::vec![s],
            Predicate::Inside { obj, container } => alloc::vec![obj, container],
            Predicate::StateIs { obj, .. }
            | Predicate::TempChange { obj, .. }
            | Predicate::Powered { obj, .. }
            | Predicate::StageAtLeast { obj, .. }
            | Predicate::Did { obj, .. } => alloc::vec![obj],
        };
        sels.into_iter().filter_map(Selector::slot).collect()
    }
}

fn is_living(w: &World, id: ObjId) -> bool {
    w.obj(id).life.as_ref().is_some_and(|l| {
        let s = &w.species[l.species];
        l.stage < s.dead_stage()
    })
}

/// Everything a predicate may consult besides the world.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalCtx {
    pub bindings: BTreeMap<String, Vec<ObjId>>,
    /// Start temperature and phase of every object present at reset.
    pub initial: BTreeMap<ObjId, (f64, Option<Phase>)>,
    pub focused: Vec<ObjId>,
    pub did: Vec<(String, ObjId)>,
}

impl EvalCtx {
    pub fn select(&self, w: &World, s: &Selector) -> Vec<ObjId> {
        let all = || w.ids().filter(|&i| i != w.agent && i != w.inventory);
        let v: Vec<ObjId> = match s {
            Selector::Slot(n) => self.bindings.get(n).cloned().unwrap_or_default(),
            Selector::Focused => self.focused.clone(),
            Selector::Any => all().collect(),
            Selector::Category(c) => match c.as_str() {
                "living" => all().filter(|&i| is_living(w, i)).collect(),
                "nonliving" => all()
                    .filter(|&i| {
                        let o = w.obj(i);
                        !is_living(w, i) && !o.is_room()
                    })
                    .collect(),
                "plant" | "animal" => all()
                    .filter(|&i| is_living(w, i) && w.obj(i).has_category(c))
                    .collect(),
                _ => all().filter(|&i| w.obj(i).has_category(c)).collect(),
            },
            Selector::Kind(k) => all().filter(|&i| &w.obj(i).kind == k).collect(),
            Selector::Material(m) => all()
                .filter(|&i| w.obj(i).is_substance() && w.material_of(i).is_some_and(|x| &x.name == m))
                .collect(),
            Selector::Room(r) => w
                .catalog
                .room_index(r)
                .map(|i| alloc::vec![w.rooms[i]])
                .unwrap_or_default(),
            Selector::Offspring => all()
                .filter(|&i| w.obj(i).life.as_ref().is_some_and(|l| l.generation >= 1))
                .collect(),
        };
        v.into_iter().filter(|&i| w.exists(i)).collect()
    }

    pub fn matches(&self, w: &World, s: &Selector, id: ObjId) -> bool {
        self.select(w, s).contains(&id)
    }

    /// State predicates; `Focus` is never true here.
    pub fn holds(&self, w: &World, p: &Predicate) -> bool {
        let any = |s: &Selector, f: &dyn Fn(ObjId) -> bool| self.select(w, s).into_iter().any(f);
        match p {
            Predicate::Focus(_) => false,
            Predicate::Inside { obj, container } => {
                let cs = self.select(w, container);
                any(obj, &|o| cs.iter().any(|&c| w.is_descendant(o, c)))
            }
            Predicate::InInventory(s) => any(s, &|o| w.is_descendant(o, w.inventory)),
            Predicate::AgentIn(s) => {
                let room = w.rooms[w.agent_room()];
                self.select(w, s).contains(&room)
            }
            Predicate::StateIs { obj, phase } => any(obj, &|o| w.obj(o).phase == Some(*phase)),
            Predicate::StateChanged(s) => any(s, &|o| {
                let now = w.obj(o).phase;
                now.is_some() && self.initial.get(&o).is_some_and(|&(_, p)| p != now)
            }),
            Predicate::TempChange { obj, delta } => any(obj, &|o| {
                self.initial.get(&o).is_some_and(|&(t0, _)| {
                    let d = w.obj(o).temperature - t0;
                    if *delta >= 0.0 {
                        d >= *delta
                    } else {
                        d <= *delta
                    }
                })
            }),
            Predicate::DeviceActive(s) => any(s, &|o| {
                w.obj(o).device.as_ref().is_some_and(|d| d.active && !d.broken)
            }),
            Predicate::Powered { obj, renewable } => any(obj, &|o| {
                w.powered.get(&o).is_some_and(|&r| r || !*renewable)
            }),
            Predicate::Connected(s) => any(s, &|o| !w.links_of(o).is_empty()),
            Predicate::StageAtLeast { obj, stage } => any(obj, &|o| {
                w.obj(o).life.as_ref().is_some_and(|l| {
                    let dead = w.species[l.species].dead_stage();
                    l.stage >= *stage && l.stage < dead
                })
            }),
            Predicate::Exists(s) => !self.select(w, s).is_empty(),
            Predicate::Did { action, obj } => {
                let sel = self.select(w, obj);
                self.did.iter().any(|(a, o)| a == action && sel.contains(o))
            }
        }
    }
}

/// Episode outcome as seen by the scorer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Running,
    Success,
    Failure,
}

/// Latches required goals in order and optional goals independently.
#[derive(Clone, Debug, PartialEq)]
pub struct Scorer {
    pub required: Vec<(Predicate, f64)>,
    pub optional: Vec<(Predicate, f64)>,
    pub failure: Vec<Predicate>,
    pub req_done: Vec<bool>,
    pub opt_done: Vec<bool>,
    pub outcome: Outcome,
    pub reason: Option<String>,
    pub ctx: EvalCtx,
}

impl Scorer {
    /// Drops goals that mention unbound slots and resolves default weights:
    /// optional goals are worth one point, each required goal as much as all
    /// optional goals together.
    pub fn new(
        required: &[GoalDef],
        optional: &[GoalDef],
        failure: &[Predicate],
        ctx: EvalCtx,
    ) -> Scorer {
        let bound = |p: &Predicate| p.slots().iter().all(|s| ctx.bindings.contains_key(*s));
        let opt: Vec<(Predicate, f64)> = optional
            .iter()
            .filter(|g| bound(&g.when))
            .map(|g| (g.when.clone(), g.points.unwrap_or(1.0)))
            .collect();
        let opt_total: f64 = opt.iter().map(|g| g.1).sum::<f64>().max(1.0);
        let req: Vec<(Predicate, f64)> = required
            .iter()
            .filter(|g| bound(&g.when))
            .map(|g| (g.when.clone(), g.points.unwrap_or(opt_total)))
            .collect();
        let fail: Vec<Predicate> = failure.iter().filter(|p| bound(p)).cloned().collect();
        Scorer {
            req_done: alloc::vec![false; req.len()],
            opt_done: alloc::vec![false; opt.len()],
            required: req,
            optional: opt,
            failure: fail,
            outcome: Outcome::Running,
            reason: None,
            ctx,
        }
    }

    pub fn total(&self) -> f64 {
        self.required.iter().chain(&self.optional).map(|g| g.1).sum()
    }

    pub fn score(&self) -> f64 {
        if self.outcome == Outcome::Success {
            return 1.0;
        }
        let got: f64 = self
            .required
            .iter()
            .zip(&self.req_done)
            .chain(self.optional.iter().zip(&self.opt_done))
            .filter(|(_, d)| **d)
            .fold(0.0, |acc, (g, _)| acc + g.1);
        let t = self.total();
        if t <= 0.0 {
            0.0
        } else {
            (got / t).clamp(0.0, 1.0)
        }
    }

    fn fail(&mut self, why: &str) {
        if self.outcome == Outcome::Running {
            self.outcome = Outcome::Failure;
            self.reason = Some(String::from(why));
        }
    }

    /// Handles a focus action on `id`.
    pub fn on_focus(&mut self, w: &World, id: ObjId) {
        if self.outcome != Outcome::Running || self.ctx.focused.contains(&id) {
            return;
        }
        let next = self.req_done.iter().position(|d| !d);
        if let Some(i) = next {
            if let Predicate::Focus(sel) = &self.required[i].0 {
                if self.ctx.matches(w, sel, id) {
                    self.req_done[i] = true;
                    self.ctx.focused.push(id);
                    return;
                }
            }
        }
        self.fail("You focused on the wrong object.");
    }

    pub fn on_did(&mut self, action: &str, id: ObjId) {
        self.ctx.did.push((String::from(action), id));
    }

    /// Re-evaluates state goals after the world has changed.
    pub fn update(&mut self, w: &World) {
        if self.outcome != Outcome::Running {
            return;
        }
        if self.ctx.focused.iter().any(|&f| !w.exists(f)) {
            self.fail("The object you focused on no longer exists.");
            return;
        }
        for i in 0..self.optional.len() {
            if !self.opt_done[i] && self.ctx.holds(w, &self.optional[i].0) {
                self.opt_done[i] = true;
            }
        }
        while let Some(i) = self.req_done.iter().position(|d| !d) {
            let p = &self.required[i].0;
            if matches!(p, Predicate::Focus(_)) || !self.ctx.holds(w, p) {
                break;
            }
            self.req_done[i] = true;
        }
        if self.failure.iter().any(|p| self.ctx.holds(w, p)) {
            self.fail("That was the wrong answer.");
            return;
        }
        if self.req_done.iter().all(|d| *d) {
            self.outcome = Outcome::Success;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    #[test]
    fn goals_latch_in_order_and_score() {
        let c = Catalog::builtin();
        let mut w = World::new(c, 1, 0, Simplifications::none());
        let r = w.rooms[0];
        let apple = w.spawn("apple", r).unwrap();
        let mut ctx = EvalCtx::default();
        ctx.bindings.insert("target".into(), alloc::vec![apple]);
        let req = [
            GoalDef { when: Predicate::Focus(Selector::Slot("target".into())), points: None },
            GoalDef { when: Predicate::InInventory(Selector::Slot("target".into())), points: None },
        ];
        let opt = [
            GoalDef { when: Predicate::InInventory(Selector::Kind("apple".into())), points: None },
            GoalDef { when: Predicate::Exists(Selector::Slot("missing".into())), points: None },
            GoalDef { when: Predicate::AgentIn(Selector::Room("bathroom".into())), points: None },
        ];
        let mut s = Scorer::new(&req, &opt, &[], ctx);
        assert_eq!(s.optional.len(), 2, "unbound goal dropped");
        assert_eq!(s.total(), 2.0 + 2.0 + 2.0);
        w.relocate(apple, w.inventory);
        s.update(&w);
        assert!(!s.req_done[1], "required goals wait for the focus");
        assert!((s.score() - 1.0 / 6.0).abs() < 1e-12);
        s.on_focus(&w, apple);
        s.update(&w);
        assert_eq!(s.outcome, Outcome::Success);
        assert_eq!(s.score(), 1.0);
    }

    #[test]
    fn wrong_focus_fails_but_keeps_score() {
        let c = Catalog::builtin();
        let mut w = World::new(c, 1, 0, Simplifications::none());
        let r = w.rooms[0];
        let apple = w.spawn("apple", r).unwrap();
        let bread = w.spawn("bread", r).unwrap();
        let mut ctx = EvalCtx::default();
        ctx.bindings.insert("target".into(), alloc::vec![apple]);
        let req = [GoalDef { when: Predicate::Focus(Selector::Slot("target".into())), points: None }];
        let opt = [
            GoalDef { when: Predicate::InInventory(Selector::Any), points: None },
            GoalDef { when: Predicate::Connected(Selector::Any), points: None },
        ];
        let mut s = Scorer::new(&req, &opt, &[], ctx);
        w.relocate(bread, w.inventory);
        s.update(&w);
        s.on_focus(&w, bread);
        assert_eq!(s.outcome, Outcome::Failure);
        assert!((s.score() - 0.25).abs() < 1e-12);
    }
}
