//! Scripted reference agents.
//!
//! Oracles navigate with privileged knowledge of where things are, but every
//! decision a task asks the agent to *measure* (a temperature, a melting point,
//! whether a bulb lights, how far a block slid, which trait an offspring shows)
//! is read from observation text. They are written for easy mode.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::catalog::plant_stage;
use crate::env::{EnvError, Environment, Observation};
use crate::object::{ObjId, Phase};
use crate::world::World;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("oracle command {command:?} was not understood: {response}")]
    Rejected { command: String, response: String },
    #[error("oracle lost track of the task: {0}")]
    Stuck(String),
}

type R<T> = Result<T, OracleError>;

struct Ctl<'a> {
    env: &'a mut Environment,
    last: Observation,
}

impl Ctl<'_> {
    fn w(&self) -> &World {
        self.env.world().expect("running episode")
    }

    fn done(&self) -> bool {
        self.env.is_done()
    }

    fn slot(&self, name: &str) -> R<Vec<ObjId>> {
        self.env
            .bindings()
            .and_then(|b| b.get(name).cloned())
            .ok_or_else(|| OracleError::Stuck(format!("no binding {name}")))
    }

    fn one(&self, name: &str) -> R<ObjId> {
        self.slot(name)?
            .first()
            .copied()
            .ok_or_else(|| OracleError::Stuck(format!("empty binding {name}")))
    }

    fn param(&self, key: &str) -> Option<String> {
        let (task, var, _, _) = self.env.episode_key()?;
        let cat = self.env.catalog();
        cat.task(task)?.variations.get(var)?.text(key).map(String::from)
    }

    fn name(&self, id: ObjId) -> R<String> {
        self.env
            .object_names()?
            .remove(&id)
            .ok_or_else(|| OracleError::Stuck(format!("object {} not in view", id.0)))
    }

    /// Sends one command; a command that does not parse is an oracle bug.
    fn send(&mut self, cmd: &str) -> R<()> {
        if self.done() {
            return Ok(());
        }
        let obs = self.env.step(cmd)?;
        let parsed = self.env.history().last().is_some_and(|h| h.action.is_some());
        if !parsed {
            return Err(OracleError::Rejected {
                command: cmd.to_string(),
                response: obs.obs_text,
            });
        }
        self.last = obs;
        Ok(())
    }

    fn goto_room(&mut self, room: usize) -> R<()> {
        if self.w().agent_room() != room {
            let name = self.w().room_name(room).to_string();
            self.send(&format!("teleport to {name}"))?;
        }
        Ok(())
    }

    fn goto(&mut self, id: ObjId) -> R<()> {
        if self.w().is_descendant(id, self.w().inventory) {
            return Ok(());
        }
        let room = self
            .w()
            .room_of(id)
            .ok_or_else(|| OracleError::Stuck(format!("object {} has no room", id.0)))?;
        self.goto_room(room)
    }

    fn act(&mut self, verb: &str, id: ObjId) -> R<()> {
        let n = self.name(id)?;
        self.send(&format!("{verb} {n}"))
    }

    fn act2(&mut self, verb: &str, a: ObjId, prep: &str, b: ObjId) -> R<()> {
        let (x, y) = (self.name(a)?, self.name(b)?);
        self.send(&format!("{verb} {x} {prep} {y}"))
    }

    fn focus(&mut self, id: ObjId) -> R<()> {
        self.goto(id)?;
        self.act("focus on", id)
    }

    fn pick_up(&mut self, id: ObjId) -> R<()> {
        if self.w().parent(id) == Some(self.w().inventory) {
            return Ok(());
        }
        self.goto(id)?;
        self.act("pick up", id)
    }

    fn ensure_active(&mut self, id: ObjId) -> R<()> {
        let active = self.w().obj(id).device.as_ref().is_none_or(|d| d.active);
        if !active {
            self.act("activate", id)?;
        }
        Ok(())
    }

    fn open_if_closed(&mut self, id: ObjId) -> R<()> {
        let o = self.w().obj(id);
        if o.container == crate::object::ContainerKind::Closeable && !o.open {
            self.act("open", id)?;
        }
        Ok(())
    }

    /// Waits in chunks of ten until `cond` holds or the episode ends.
    fn wait_until(&mut self, what: &str, cond: impl Fn(&World) -> bool) -> R<()> {
        for _ in 0..20 {
            if self.done() || cond(self.w()) {
                return Ok(());
            }
            self.send("wait 10")?;
        }
        if self.done() || cond(self.w()) {
            Ok(())
        } else {
            Err(OracleError::Stuck(format!("waited too long for {what}")))
        }
    }

    fn finish(&mut self) -> R<()> {
        self.wait_until("the task to complete", |_| false).or_else(|e| {
            if self.done() {
                Ok(())
            } else {
                Err(e)
            }
        })
    }

    /// Connects `a` to `b`, naming terminals where given.
    fn connect(
        &mut self,
        a: ObjId,
        ta: Option<crate::object::Terminal>,
        b: ObjId,
        tb: Option<crate::object::Terminal>,
    ) -> R<()> {
        let term = |n: String, t: Option<crate::object::Terminal>| match t {
            Some(t) => format!("{n} {}", t.name()),
            None => n,
        };
        let x = term(self.name(a)?, ta);
        let y = term(self.name(b)?, tb);
        self.send(&format!("connect {x} to {y}"))
    }

    /// Builds source → wire → load → (extra) → wire → source.
    fn series_loop(&mut self, source: ObjId, wires: &[ObjId], parts: &[ObjId]) -> R<()> {
        use crate::object::Terminal::{Anode, Cathode};
        if wires.len() < 2 {
            return Err(OracleError::Stuck("need two wires".into()));
        }
        let polar = |w: &World, id: ObjId| w.obj(id).electrical.is_some_and(|e| e.polarized);
        self.connect(source, Some(Anode), wires[0], None)?;
        let mut prev = wires[0];
        for &p in parts {
            let pol = polar(self.w(), p);
            self.connect(prev, None, p, pol.then_some(Cathode))?;
            prev = p;
            let _ = pol;
        }
        // leave each part through its other terminal
        let last = *parts.last().expect("at least one part");
        let pol = polar(self.w(), last);
        self.connect(last, pol.then_some(Anode), wires[1], None)?;
        self.connect(wires[1], None, source, Some(Cathode))?;
        Ok(())
    }
}

fn number_after(text: &str, marker: &str) -> Option<f64> {
    let i = text.find(marker)? + marker.len();
    let rest = &text[i..];
    let end = rest
        .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '.'))
        .unwrap_or(rest.len());
    rest[..end].parse().ok()
}

fn reading(text: &str) -> Option<f64> {
    number_after(text, "measures a temperature of ")
}

/// Solves the current episode. The environment must have just been reset.
pub fn solve(env: &mut Environment, start: Observation) -> R<()> {
    let family = {
        let (task, _, _, _) = env.episode_key().ok_or(EnvError::NotStarted)?;
        env.catalog()
            .task(task)
            .map(|t| t.family.clone())
            .ok_or_else(|| OracleError::Stuck("unknown task".into()))?
    };
    let mut c = Ctl { env, last: start };
    match family.as_str() {
        "change_of_state" => change_of_state(&mut c),
        "thermometer" => thermometer(&mut c),
        "melting_point" => melting_point(&mut c),
        "circuit" => circuit(&mut c),
        "renewable" => renewable(&mut c),
        "conductivity" => conductivity(&mut c),
        "classify" => classify(&mut c),
        "grow_plant" => grow_plant(&mut c),
        "grow_fruit" => grow_fruit(&mut c),
        "chemistry" => chemistry(&mut c),
        "paint" => paint(&mut c),
        "lifespan" => lifespan(&mut c),
        "life_stages" => life_stages(&mut c),
        "planes" => planes(&mut c),
        "genetics" => genetics(&mut c),
        other => Err(OracleError::Stuck(format!("no oracle for {other}"))),
    }
}

fn change_of_state(c: &mut Ctl<'_>) -> R<()> {
    let (s, pot, heater) = (c.one("target")?, c.one("container")?, c.one("heater")?);
    c.focus(s)?;
    c.pick_up(pot)?;
    c.goto(heater)?;
    c.open_if_closed(heater)?;
    c.act2("move", pot, "to", heater)?;
    c.ensure_active(heater)?;
    c.finish()
}

fn thermometer(c: &mut Ctl<'_>) -> R<()> {
    let (th, t) = (c.one("thermometer")?, c.one("target")?);
    c.pick_up(th)?;
    c.act("focus on", th)?;
    c.focus(t)?;
    c.act2("use", th, "on", t)?;
    let r = reading(&c.last.obs_text).ok_or_else(|| OracleError::Stuck(c.last.obs_text.clone()))?;
    let thr: f64 = c
        .param("threshold")
        .and_then(|s| s.parse().ok())
        .or_else(|| number_after(&c.last.task_description, "above "))
        .ok_or_else(|| OracleError::Stuck("no threshold".into()))?;
    let boxes = answer_boxes(c)?;
    let dest = if r > thr { boxes.0 } else { boxes.1 };
    c.act2("move", t, "to", dest)?;
    c.finish()
}

/// (first, second) answer boxes, in the order the description names them.
fn answer_boxes(c: &Ctl<'_>) -> R<(ObjId, ObjId)> {
    let (a, b) = (c.one("answer")?, c.one("wrong")?);
    let first = c
        .w()
        .obj(a)
        .name
        .clone()
        .ok_or_else(|| OracleError::Stuck("unnamed box".into()))?;
    let desc = &c.last.task_description;
    let (pa, pb) = (desc.find(&first), c.w().obj(b).name.as_ref().and_then(|n| desc.find(n.as_str())));
    match (pa, pb) {
        (Some(x), Some(y)) if x < y => Ok((a, b)),
        (Some(_), Some(_)) => Ok((b, a)),
        _ => Err(OracleError::Stuck("boxes not named in the task".into())),
    }
}

fn melting_point(c: &mut Ctl<'_>) -> R<()> {
    let (th, s, pot, heater) = (
        c.one("thermometer")?,
        c.one("target")?,
        c.one("container")?,
        c.one("heater")?,
    );
    c.pick_up(th)?;
    c.act("focus on", th)?;
    c.focus(s)?;
    c.pick_up(pot)?;
    c.goto(heater)?;
    c.open_if_closed(heater)?;
    c.act2("move", pot, "to", heater)?;
    let thr = number_after(&c.last.task_description, "is above ")
        .ok_or_else(|| OracleError::Stuck("no threshold".into()))?;
    // bracket the melting point between the last solid and first liquid reading
    let solid = c.w().obj(s).phase;
    let (mut below, mut above) = (None, None);
    for k in 0..80 {
        if k == 1 {
            c.ensure_active(heater)?;
        }
        let before = c.w().obj(s).phase;
        c.act2("use", th, "on", s)?;
        let r = reading(&c.last.obs_text);
        if before == solid {
            below = r;
        } else {
            above = r;
            break;
        }
    }
    let r = match (below, above) {
        (Some(x), Some(y)) => (x + y) / 2.0,
        _ => return Err(OracleError::Stuck("never saw it melt".into())),
    };
    let boxes = answer_boxes(c)?;
    let dest = if r > thr { boxes.0 } else { boxes.1 };
    c.focus(dest)?;
    c.finish()
}

fn circuit(c: &mut Ctl<'_>) -> R<()> {
    let (t, src, wires) = (c.one("target")?, c.one("source")?, c.slot("wires")?);
    c.focus(t)?;
    c.series_loop(src, &wires, &[t])?;
    c.finish()
}

fn renewable(c: &mut Ctl<'_>) -> R<()> {
    let (t, src, wires) = (c.one("target")?, c.one("source")?, c.slot("wires")?);
    c.focus(t)?;
    c.pick_up(t)?;
    for &w in &wires[..2] {
        c.pick_up(w)?;
    }
    c.goto(src)?;
    c.ensure_active(src)?;
    c.series_loop(src, &wires, &[t])?;
    c.finish()
}

fn conductivity(c: &mut Ctl<'_>) -> R<()> {
    let (t, src, bulb, wires) = (
        c.one("target")?,
        c.one("source")?,
        c.one("bulb")?,
        c.slot("wires")?,
    );
    c.focus(t)?;
    c.pick_up(t)?;
    c.goto(src)?;
    c.series_loop(src, &wires, &[bulb, t])?;
    c.act("look at", bulb)?;
    let lit = c
        .last
        .obs_text
        .lines()
        .next()
        .is_some_and(|l| l.contains("(on"));
    let boxes = answer_boxes(c)?;
    let dest = if lit { boxes.0 } else { boxes.1 };
    c.act2("move", t, "to", dest)?;
    c.finish()
}

fn classify(c: &mut Ctl<'_>) -> R<()> {
    let (task, _, _, _) = c.env.episode_key().ok_or(EnvError::NotStarted)?;
    let cat_pred = c
        .env
        .catalog()
        .task(task)
        .and_then(|t| t.required.first().cloned())
        .ok_or_else(|| OracleError::Stuck("no goals".into()))?;
    let which = match cat_pred.when {
        crate::task::Predicate::Focus(crate::task::Selector::Category(k)) => k,
        _ => return Err(OracleError::Stuck("unexpected goal shape".into())),
    };
    let target = match which.as_str() {
        "living" | "plant" => c.one("plants")?,
        "animal" => c.one("animals")?,
        _ => {
            // a loose portable thing lying on some room floor
            let w = c.w();
            let bx = c.one("box")?;
            w.ids()
                .find(|&i| {
                    let o = w.obj(i);
                    o.portable
                        && i != bx
                        && !o.is_substance()
                        && o.life.is_none()
                        && w.parent(i).is_some_and(|p| w.rooms.contains(&p))
                        && w.children(i).is_empty()
                })
                .map_or_else(|| c.one("box"), Ok)?
        }
    };
    let bx = c.one("box")?;
    if target == bx {
        return Err(OracleError::Stuck("only the box is portable".into()));
    }
    c.focus(target)?;
    c.pick_up(target)?;
    c.goto(bx)?;
    c.act2("move", target, "to", bx)?;
    c.finish()
}

fn has_soil(w: &World, pot: ObjId) -> bool {
    w.children(pot)
        .iter()
        .any(|&x| w.material_of(x).is_some_and(|m| m.name == "soil") && w.obj(x).is_substance())
}

fn grow_plant(c: &mut Ctl<'_>) -> R<()> {
    let (seed, pots) = (c.one("seed")?, c.slot("pots")?);
    let pot = pots[0];
    c.focus(seed)?;
    if !has_soil(c.w(), pot) {
        let gh = c.w().room_of(pot).expect("pot in a room");
        let loose = {
            let w = c.w();
            w.children(w.rooms[gh])
                .iter()
                .copied()
                .find(|&x| w.obj(x).is_substance() && w.material_of(x).is_some_and(|m| m.name == "soil"))
        };
        let soil = match loose {
            Some(s) => s,
            None => {
                let shovel = c
                    .w()
                    .ids()
                    .find(|&i| c.w().obj(i).kind == "shovel")
                    .ok_or_else(|| OracleError::Stuck("no shovel".into()))?;
                c.pick_up(shovel)?;
                let ground = c
                    .w()
                    .ids()
                    .find(|&i| c.w().obj(i).kind == "ground")
                    .ok_or_else(|| OracleError::Stuck("no ground".into()))?;
                c.goto(ground)?;
                c.act2("use", shovel, "on", ground)?;
                let w = c.w();
                w.children(w.inventory)
                    .iter()
                    .copied()
                    .find(|&x| w.obj(x).is_substance())
                    .ok_or_else(|| OracleError::Stuck("digging gave no soil".into()))?
            }
        };
        c.goto_room(gh)?;
        c.act2("move", soil, "to", pot)?;
    }
    c.goto(pot)?;
    c.act2("move", seed, "to", pot)?;
    c.finish()
}

fn fruits(w: &World) -> Vec<ObjId> {
    w.ids().filter(|&i| w.obj(i).kind == "fruit").collect()
}

fn plant_and_pollinate(c: &mut Ctl<'_>, seeds: &[ObjId], pots: &[ObjId]) -> R<()> {
    c.goto(pots[0])?;
    for (&s, &p) in seeds.iter().zip(pots) {
        c.act2("move", s, "to", p)?;
    }
    let hive = c.w().ids().find(|&i| c.w().obj(i).kind == "bee hive");
    if let Some(h) = hive {
        c.open_if_closed(h)?;
    }
    c.wait_until("fruit", |w| !fruits(w).is_empty())
}

fn grow_fruit(c: &mut Ctl<'_>) -> R<()> {
    let (seeds, pots) = (c.slot("seeds")?, c.slot("pots")?);
    plant_and_pollinate(c, &seeds, &pots)?;
    if c.done() {
        return Ok(());
    }
    let f = fruits(c.w())[0];
    c.focus(f)?;
    c.finish()
}

fn substances_of(w: &World, name: &str) -> Vec<ObjId> {
    w.ids()
        .filter(|&i| w.obj(i).is_substance() && w.material_of(i).is_some_and(|m| m.name == name))
        .collect()
}

/// Brings `x` into the container holding `into`, pouring liquids.
fn combine(c: &mut Ctl<'_>, x: ObjId, vessel: ObjId) -> R<()> {
    if c.w().obj(x).phase == Some(Phase::Solid) {
        c.act2("move", x, "to", vessel)
    } else {
        c.act2("pour", x, "into", vessel)
    }
}

fn chemistry(c: &mut Ctl<'_>) -> R<()> {
    let (subs, recipe) = (c.slot("ingredients")?, c.one("recipe")?);
    let output = c.param("output").ok_or_else(|| OracleError::Stuck("no output".into()))?;
    c.goto(recipe)?;
    c.act("read", recipe)?;
    let base = subs
        .iter()
        .copied()
        .find(|&s| c.w().obj(s).phase == Some(Phase::Liquid))
        .unwrap_or(subs[0]);
    let vessel = c.w().parent(base).expect("substance in a container");
    for &s in &subs {
        if s != base {
            combine(c, s, vessel)?;
        }
    }
    c.act("mix", vessel)?;
    let out = substances_of(c.w(), &output)
        .first()
        .copied()
        .ok_or_else(|| OracleError::Stuck(format!("mixing gave no {output}")))?;
    c.act("focus on", out)?;
    c.finish()
}

fn recipe_for(w: &World, output: &str) -> R<Vec<String>> {
    w.catalog
        .recipes
        .iter()
        .find(|r| r.output == output)
        .map(|r| r.inputs.clone())
        .ok_or_else(|| OracleError::Stuck(format!("no recipe for {output}")))
}

/// Makes `output` from the paints on the table, returning the new substance.
fn make_paint(c: &mut Ctl<'_>, output: &str, used: &mut Vec<ObjId>) -> R<ObjId> {
    let inputs = recipe_for(c.w(), output)?;
    // intermediates first, so they cannot consume a primary we need later
    let mut parts = Vec::new();
    for name in &inputs {
        if substances_of(c.w(), name).iter().all(|s| used.contains(s)) {
            parts.push(make_paint(c, name, used)?);
        }
    }
    for name in &inputs {
        if parts.iter().any(|&p| c.w().material_of(p).is_some_and(|m| &m.name == name)) {
            continue;
        }
        let p = substances_of(c.w(), name)
            .into_iter()
            .find(|s| !used.contains(s) && !parts.contains(s))
            .ok_or_else(|| OracleError::Stuck(format!("no {name} left")))?;
        parts.push(p);
    }
    let vessel = c.w().parent(parts[0]).expect("paint in a cup");
    for &p in &parts[1..] {
        c.act2("pour", p, "into", vessel)?;
    }
    c.act("mix", vessel)?;
    let made = substances_of(c.w(), output)
        .into_iter()
        .find(|s| !used.contains(s))
        .ok_or_else(|| OracleError::Stuck(format!("mixing gave no {output}")))?;
    used.extend(parts);
    Ok(made)
}

fn paint(c: &mut Ctl<'_>) -> R<()> {
    let cups = c.slot("cups")?;
    let target = c.param("target").ok_or_else(|| OracleError::Stuck("no target".into()))?;
    c.goto(cups[0])?;
    let made = make_paint(c, &target, &mut Vec::new())?;
    c.act("focus on", made)?;
    c.finish()
}

fn lifespan(c: &mut Ctl<'_>) -> R<()> {
    let animals = c.slot("animals")?;
    let life = |w: &World, i: ObjId| w.species_of(i).map_or(0.0, |s| s.lifespan);
    let mut sorted = animals.clone();
    sorted.sort_by(|&a, &b| life(c.w(), a).total_cmp(&life(c.w(), b)));
    let (task, _, _, _) = c.env.episode_key().ok_or(EnvError::NotStarted)?;
    let order: Vec<ObjId> = match task {
        "7-1" => alloc::vec![sorted[sorted.len() - 1]],
        "7-2" => alloc::vec![sorted[0]],
        _ => alloc::vec![sorted[sorted.len() - 1], sorted[0]],
    };
    for a in order {
        c.focus(a)?;
    }
    c.finish()
}

fn life_stages(c: &mut Ctl<'_>) -> R<()> {
    let mut stages = c.slot("stages")?;
    let stage = |w: &World, i: ObjId| w.obj(i).life.as_ref().map_or(0, |l| l.stage);
    stages.sort_by_key(|&i| stage(c.w(), i));
    for s in stages {
        c.focus(s)?;
    }
    c.finish()
}

fn planes(c: &mut Ctl<'_>) -> R<()> {
    let (planes, block) = (c.slot("planes")?, c.one("block")?);
    let ask = c.param("ask").ok_or_else(|| OracleError::Stuck("no question".into()))?;
    let mut pct = Vec::new();
    c.goto(block)?;
    for &p in &planes {
        c.act2("move", block, "to", p)?;
        c.act("look at", p)?;
        let v = number_after(&c.last.obs_text, "is ")
            .filter(|_| c.last.obs_text.contains("% of the way down"))
            .ok_or_else(|| OracleError::Stuck(c.last.obs_text.clone()))?;
        pct.push(v);
    }
    let faster = if pct[0] > pct[1] { planes[0] } else { planes[1] };
    let slower = if faster == planes[0] { planes[1] } else { planes[0] };
    let want_fast = matches!(ask.as_str(), "steepest" | "least");
    c.act("focus on", if want_fast { faster } else { slower })?;
    c.finish()
}

fn genetics(c: &mut Ctl<'_>) -> R<()> {
    let (parents, pots) = (c.slot("parents")?, c.slot("pots")?);
    let trait_name = c.param("trait").ok_or_else(|| OracleError::Stuck("no trait".into()))?;
    let value = c.param("value").ok_or_else(|| OracleError::Stuck("no value".into()))?;
    plant_and_pollinate(c, &parents, &pots)?;
    let seed = {
        let w = c.w();
        fruits(w)
            .into_iter()
            .flat_map(|f| w.children(f).to_vec())
            .find(|&s| w.obj(s).life.is_some())
            .ok_or_else(|| OracleError::Stuck("fruit without seed".into()))?
    };
    c.act2("move", seed, "to", pots[2])?;
    c.wait_until("the offspring to grow", |w| {
        w.obj(seed).life.as_ref().is_some_and(|l| l.stage >= plant_stage::ADULT)
    })?;
    c.act("look at", seed)?;
    let marker = format!("{trait_name}: ");
    let line = c.last.obs_text.lines().next().unwrap_or_default().to_string();
    let shown = line
        .find(&marker)
        .map(|i| {
            let rest = &line[i + marker.len()..];
            rest[..rest.find([',', ')']).unwrap_or(rest.len())].to_string()
        })
        .ok_or_else(|| OracleError::Stuck(line.clone()))?;
    let boxes = answer_boxes(c)?;
    let dest = if shown == value { boxes.0 } else { boxes.1 };
    c.focus(dest)?;
    c.finish()
}

/// Uniformly random choice among the valid actions each step.
pub fn random_episode<G: Rng + ?Sized>(env: &mut Environment, rng: &mut G) -> R<()> {
    while !env.is_done() {
        let acts = env.valid_actions()?;
        let Some(a) = acts.choose(rng) else {
            return Err(OracleError::Stuck("no valid actions".into()));
        };
        let text = a.text.clone();
        env.step(&text)?;
    }
    Ok(())
}
