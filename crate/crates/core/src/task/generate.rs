//! Builds the starting world of one task variation.
//!
//! Every variation starts from the same furnished house; the task family then
//! adds its apparatus and binds the named slots its goals refer to. The seed
//! only varies distractor placement and the world's random stream.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Catalog, LifeKind, TaskDef, Variation};
use crate::task::goal::GoalDef;
use crate::engine::genetics::Genotype;
use crate::engine::plane;
use crate::material::Material;
use crate::object::{ObjId, PlaneState};
use crate::referent::display_name;
use crate::rng;
use crate::task::goal::{Predicate, Selector};
use crate::task::simplify::Simplifications;
use crate::world::World;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TaskError {
    #[error("unknown task {0}")]
    UnknownTask(String),
    #[error("task {task} has {count} variations, no variation {index}")]
    NoSuchVariation { task: String, index: usize, count: usize },
    #[error("task {task} variation {index}: {message}")]
    Invalid { task: String, index: usize, message: String },
}

/// A ready-to-play variation.
#[derive(Clone, Debug)]
pub struct Generated {
    pub world: World,
    pub bindings: BTreeMap<String, Vec<ObjId>>,
    pub description: String,
    /// Goals with `{name}` placeholders filled in.
    pub required: Vec<GoalDef>,
    pub optional: Vec<GoalDef>,
    pub failure: Vec<Predicate>,
}

/// Room the agent starts in; fixed per (task, variation).
pub fn start_room(catalog: &Catalog, task: &str, var: usize) -> usize {
    (rng::mix(rng::fnv1a(task.as_bytes()) ^ var as u64) % catalog.rooms.len() as u64) as usize
}

struct Builder<'a> {
    w: World,
    task: &'a TaskDef,
    v: &'a Variation,
    var: usize,
    rng: ChaCha8Rng,
    bind: BTreeMap<String, Vec<ObjId>>,
    fill: BTreeMap<String, String>,
}

type R<T> = Result<T, TaskError>;

impl Builder<'_> {
    fn err(&self, message: impl Into<String>) -> TaskError {
        TaskError::Invalid {
            task: self.task.id.clone(),
            index: self.var,
            message: message.into(),
        }
    }

    fn text(&self, key: &str) -> R<String> {
        self.v
            .text(key)
            .map(String::from)
            .ok_or_else(|| self.err(format!("missing text parameter {key}")))
    }

    fn num(&self, key: &str) -> R<f64> {
        self.v
            .number(key)
            .ok_or_else(|| self.err(format!("missing number parameter {key}")))
    }

    fn list(&self, key: &str) -> R<Vec<String>> {
        self.v
            .list(key)
            .map(<[String]>::to_vec)
            .ok_or_else(|| self.err(format!("missing list parameter {key}")))
    }

    fn room(&self, name: &str) -> R<ObjId> {
        self.w
            .catalog
            .room_index(name)
            .map(|i| self.w.rooms[i])
            .ok_or_else(|| self.err(format!("unknown room {name}")))
    }

    /// First object of `kind` inside `within`, by id.
    fn find_in(&self, within: ObjId, kind: &str) -> Option<ObjId> {
        self.w
            .descendants(within)
            .into_iter()
            .filter(|&i| self.w.obj(i).kind == kind)
            .min()
    }

    fn find_anywhere(&self, kind: &str) -> R<ObjId> {
        self.w
            .ids()
            .find(|&i| self.w.obj(i).kind == kind)
            .ok_or_else(|| self.err(format!("no {kind} in the house")))
    }

    fn spawn(&mut self, kind: &str, parent: ObjId) -> R<ObjId> {
        let r = self.w.spawn(kind, parent);
        r.map_err(|m| self.err(m))
    }

    fn spawn_named(&mut self, kind: &str, name: &str, parent: ObjId) -> R<ObjId> {
        let id = self.spawn(kind, parent)?;
        self.w.obj_mut(id).name = Some(name.to_string());
        Ok(id)
    }

    fn material(&self, name: &str) -> R<crate::material::MaterialId> {
        self.w
            .material_id(name)
            .ok_or_else(|| self.err(format!("unknown material {name}")))
    }

    fn species(&self, name: &str) -> R<usize> {
        self.w
            .species_index(name)
            .ok_or_else(|| self.err(format!("unknown species {name}")))
    }

    /// The spot named by params `room` and optional `inside`.
    fn spot(&mut self, room_key: &str, inside_key: &str) -> R<ObjId> {
        let room = self.room(&self.text(room_key)?)?;
        match self.v.text(inside_key) {
            Some(kind) => match self.find_in(room, kind) {
                Some(c) => Ok(c),
                None => self.spawn(kind, room),
            },
            None => Ok(room),
        }
    }

    /// A table or counter in `room` if there is one.
    fn surface(&self, room: ObjId) -> ObjId {
        self.find_in(room, "table")
            .or_else(|| self.find_in(room, "counter"))
            .unwrap_or(room)
    }

    fn set(&mut self, slot: &str, ids: Vec<ObjId>) {
        self.bind.insert(slot.to_string(), ids);
    }

    fn put(&mut self, key: &str, value: impl Into<String>) {
        self.fill.insert(key.to_string(), value.into());
    }

    /// Answer boxes named by the `boxes` list; binds `answer` and `wrong`.
    fn boxes(&mut self, parent: ObjId, first_correct: bool) -> R<(ObjId, ObjId)> {
        let names = self.list("boxes")?;
        if names.len() != 2 {
            return Err(self.err("boxes needs two names"));
        }
        let a = self.spawn_named("box", &names[0], parent)?;
        let b = self.spawn_named("box", &names[1], parent)?;
        self.put("box_a", names[0].clone());
        self.put("box_b", names[1].clone());
        let (yes, no) = if first_correct { (a, b) } else { (b, a) };
        self.set("answer", alloc::vec![yes]);
        self.set("wrong", alloc::vec![no]);
        Ok((a, b))
    }

    fn masked_label(&self) -> R<String> {
        self.text("label")
    }

    /// This variation's bit from a balanced assignment over the task.
    fn balanced_bit(&self) -> bool {
        rng::balanced_bits(&self.task.id, self.task.variations.len())[self.var]
    }

    fn break_devices(&mut self) -> R<()> {
        if let Some(kinds) = self.v.list("broken") {
            for k in kinds {
                let id = self.find_anywhere(k)?;
                if let Some(d) = self.w.obj_mut(id).device.as_mut() {
                    d.broken = true;
                    d.active = false;
                }
            }
        }
        Ok(())
    }
}

fn furnish(b: &mut Builder<'_>) -> R<()> {
    let cat = b.w.catalog.clone();
    for p in &cat.placements {
        if p.chance < 1.0 && b.rng.random::<f64>() >= p.chance {
            continue;
        }
        let room = b.room(&p.room)?;
        let parent = match &p.inside {
            Some(k) => b.find_in(room, k).unwrap_or(room),
            None => room,
        };
        b.spawn(&p.object, parent)?;
    }
    Ok(())
}

// --- families ------------------------------------------------------------------

fn change_of_state(b: &mut Builder<'_>) -> R<()> {
    b.break_devices()?;
    let spot = b.spot("room", "inside")?;
    let container = b.spawn(&b.text("container")?, spot)?;
    let m = b.material(&b.text("target")?)?;
    let s = b.w.spawn_substance(m, container, None);
    let heater = b.find_anywhere(&b.text("heater")?)?;
    b.set("target", alloc::vec![s]);
    b.set("container", alloc::vec![container]);
    b.set("heater", alloc::vec![heater]);
    let name = display_name(&b.w, s);
    b.put("target", name);
    Ok(())
}

fn thermometer(b: &mut Builder<'_>) -> R<()> {
    let spot = b.spot("room", "inside")?;
    let room = b.room(&b.text("room")?)?;
    let target = b.spawn(&b.text("target")?, spot)?;
    let surface = b.surface(room);
    let th = b.spawn("thermometer", surface)?;
    let t0 = b.w.obj(target).temperature;
    let amb = b.w.obj(room).temperature;
    let thr = b.num("threshold")?;
    if thr >= t0.min(amb) - 5.0 && thr <= t0.max(amb) + 5.0 {
        return Err(b.err(format!(
            "threshold {thr} is too close to the start temperature {t0} or ambient {amb}"
        )));
    }
    b.boxes(room, t0 > thr)?;
    b.set("thermometer", alloc::vec![th]);
    b.set("target", alloc::vec![target]);
    let name = display_name(&b.w, target);
    b.put("target", name);
    b.put("threshold", format!("{thr}"));
    Ok(())
}

fn melting_point(b: &mut Builder<'_>) -> R<()> {
    let (m, mp, thr) = if b.v.text("label").is_some() {
        let label = b.masked_label()?;
        let above = b.balanced_bit();
        let mut r = rng::stream(b.var as u64, &format!("{} masked", b.task.id));
        let mp = f64::from(r.random_range(40..=140_i32));
        let gap = f64::from(r.random_range(30..=50_i32));
        let thr = if above { mp - gap } else { mp + gap };
        let name = format!("unknown substance {label}");
        let mat = Material::new(&name, 0.4, Some(mp), Some(mp + 150.0), None, false, 0.5, None);
        (b.w.add_material(mat), mp, thr)
    } else {
        let m = b.material(&b.text("target")?)?;
        let mp = b
            .w
            .material(m)
            .melting_point
            .ok_or_else(|| b.err("target has no melting point"))?;
        let thr = b.num("threshold")?;
        if (mp - thr).abs() < 30.0 {
            return Err(b.err("threshold must be at least 30 degrees from the melting point"));
        }
        (m, mp, thr)
    };
    let spot = b.spot("room", "inside")?;
    let room = b.room(&b.text("room")?)?;
    let container = b.spawn(&b.text("container")?, spot)?;
    let s = b.w.spawn_substance(m, container, None);
    let surface = b.surface(room);
    let th = b.spawn("thermometer", surface)?;
    let heater = b.find_anywhere(&b.text("heater")?)?;
    let kitchen = b.room("kitchen")?;
    let box_room = b.w.room_of(heater).map(|r| b.w.rooms[r]).unwrap_or(kitchen);
    b.boxes(box_room, mp > thr)?;
    b.set("thermometer", alloc::vec![th]);
    b.set("target", alloc::vec![s]);
    b.set("container", alloc::vec![container]);
    b.set("heater", alloc::vec![heater]);
    let name = display_name(&b.w, s);
    b.put("target", name);
    b.put("threshold", format!("{thr}"));
    Ok(())
}

fn wires(b: &mut Builder<'_>, parent: ObjId) -> R<Vec<ObjId>> {
    let names = b.list("wires")?;
    names
        .iter()
        .map(|n| b.spawn_named("wire", n, parent))
        .collect()
}

fn circuit(b: &mut Builder<'_>) -> R<()> {
    let room = b.room(&b.text("room")?)?;
    let target = b.spawn(&b.text("target")?, room)?;
    let battery = b.spawn("battery", room)?;
    let ws = wires(b, room)?;
    if b.v.text("extra").is_some() {
        let extra = b.text("extra")?;
        b.spawn(&extra, room)?;
    }
    b.set("target", alloc::vec![target]);
    b.set("source", alloc::vec![battery]);
    b.set("wires", ws);
    let name = display_name(&b.w, target);
    b.put("target", name);
    Ok(())
}

fn renewable(b: &mut Builder<'_>) -> R<()> {
    let room = b.room(&b.text("room")?)?;
    let outside = b.room("outside")?;
    let target = b.spawn(&b.text("target")?, room)?;
    b.spawn("battery", room)?;
    let ws = wires(b, room)?;
    let source = b.spawn(&b.text("source")?, outside)?;
    b.spawn("gas generator", outside)?;
    b.set("target", alloc::vec![target]);
    b.set("source", alloc::vec![source]);
    b.set("wires", ws);
    let name = display_name(&b.w, target);
    b.put("target", name);
    Ok(())
}

fn conductivity(b: &mut Builder<'_>) -> R<()> {
    let spot = b.spot("room", "inside")?;
    let target = if b.v.text("label").is_some() {
        let label = b.masked_label()?;
        let conductive = b.balanced_bit();
        let name = format!("unknown substance {label}");
        let m = b
            .w
            .add_material(Material::new(&name, 0.3, None, None, None, conductive, 0.5, None));
        let t = b.spawn_named("block", &name, spot)?;
        b.w.obj_mut(t).material = Some(m);
        t
    } else {
        b.spawn(&b.text("target")?, spot)?
    };
    let conductive = b.w.material_of(target).is_some_and(|m| m.conductive);
    let ws = b.room("workshop")?;
    let battery = b.spawn("battery", ws)?;
    let bulb = b.spawn("light bulb", ws)?;
    let names = ["red wire", "blue wire", "black wire"];
    let mut wires = Vec::new();
    for n in names {
        wires.push(b.spawn_named("wire", n, ws)?);
    }
    b.boxes(ws, conductive)?;
    b.set("target", alloc::vec![target]);
    b.set("source", alloc::vec![battery]);
    b.set("bulb", alloc::vec![bulb]);
    b.set("wires", wires);
    let name = display_name(&b.w, target);
    b.put("target", name);
    Ok(())
}

/// Potted adult plants in the greenhouse and adult animals outside.
fn populate(b: &mut Builder<'_>) -> R<(Vec<ObjId>, Vec<ObjId>)> {
    let gh = b.room("greenhouse")?;
    let outside = b.room("outside")?;
    let soil = b.material("soil")?;
    let mut plants = Vec::new();
    for s in b.v.list("plants").map(<[String]>::to_vec).unwrap_or_default() {
        let sp = b.species(&s)?;
        let pot = b.spawn("flower pot", gh)?;
        b.w.spawn_substance(soil, pot, None);
        plants.push(b.w.spawn_living(sp, 2, pot));
    }
    let mut animals = Vec::new();
    for s in b.v.list("animals").map(<[String]>::to_vec).unwrap_or_default() {
        let sp = b.species(&s)?;
        let stage = b.w.species[sp].final_living_stage();
        animals.push(b.w.spawn_living(sp, stage, outside));
    }
    Ok((plants, animals))
}

fn classify(b: &mut Builder<'_>) -> R<()> {
    let (plants, animals) = populate(b)?;
    let room = b.room(&b.text("box_room")?)?;
    let name = b.text("box")?;
    let bx = b.spawn_named("box", &name, room)?;
    b.set("box", alloc::vec![bx]);
    b.set("plants", plants);
    b.set("animals", animals);
    Ok(())
}

fn seed_jar(b: &mut Builder<'_>, room: ObjId) -> R<ObjId> {
    let surface = b.surface(room);
    b.spawn("seed jar", surface)
}

fn grow_plant(b: &mut Builder<'_>) -> R<()> {
    let gh = b.room("greenhouse")?;
    let soil = b.material("soil")?;
    let sp = b.species(&b.text("species")?)?;
    let jar = seed_jar(b, gh)?;
    let mut seeds = alloc::vec![(sp, true)];
    for d in b.v.list("distractors").map(<[String]>::to_vec).unwrap_or_default() {
        seeds.push((b.species(&d)?, false));
    }
    seeds.shuffle(&mut b.rng);
    let mut target = None;
    for (s, is_target) in seeds {
        let id = b.w.spawn_living(s, 0, jar);
        if is_target {
            target = Some(id);
        }
    }
    let mut pots = Vec::new();
    let source = b.text("soil")?;
    for _ in 0..2 {
        let pot = b.spawn("flower pot", gh)?;
        if source == "pot" {
            b.w.spawn_substance(soil, pot, None);
        }
        pots.push(pot);
    }
    match source.as_str() {
        "pot" => {}
        "room" => {
            b.w.spawn_substance(soil, gh, None);
        }
        "shovel" => {
            let outside = b.room("outside")?;
            b.spawn("shovel", outside)?;
        }
        other => return Err(b.err(format!("unknown soil source {other}"))),
    }
    let seed = target.expect("target seed spawned");
    b.set("seed", alloc::vec![seed]);
    b.set("pots", pots);
    let name = b.w.species[sp].name.clone();
    b.put("species", name);
    let seed_name = display_name(&b.w, seed);
    b.put("seed", seed_name);
    Ok(())
}

fn bees(b: &mut Builder<'_>, room: ObjId) -> R<Vec<ObjId>> {
    let hive = b.spawn("bee hive", room)?;
    let bee = b.species("bee")?;
    let adult = b.w.species[bee].final_living_stage();
    Ok((0..2).map(|_| b.w.spawn_living(bee, adult, hive)).collect())
}

fn potted(b: &mut Builder<'_>, room: ObjId, n: usize) -> R<Vec<ObjId>> {
    let soil = b.material("soil")?;
    let mut pots = Vec::new();
    for _ in 0..n {
        let pot = b.spawn("flower pot", room)?;
        b.w.spawn_substance(soil, pot, None);
        pots.push(pot);
    }
    Ok(pots)
}

fn grow_fruit(b: &mut Builder<'_>) -> R<()> {
    let gh = b.room("greenhouse")?;
    let sp = b.species(&b.text("species")?)?;
    let jar = seed_jar(b, gh)?;
    let seeds: Vec<ObjId> = (0..3).map(|_| b.w.spawn_living(sp, 0, jar)).collect();
    let pots = potted(b, gh, 3)?;
    let bs = bees(b, gh)?;
    b.set("seeds", seeds);
    b.set("pots", pots);
    b.set("bees", bs);
    let fruit = b.w.species[sp]
        .fruit
        .clone()
        .ok_or_else(|| b.err("species bears no fruit"))?;
    b.put("fruit", fruit);
    let name = b.w.species[sp].name.clone();
    b.put("species", name);
    Ok(())
}

fn chemistry(b: &mut Builder<'_>) -> R<()> {
    let output = b.text("output")?;
    let recipe = b
        .w
        .catalog
        .recipes
        .iter()
        .find(|r| r.output == output)
        .cloned()
        .ok_or_else(|| b.err(format!("no recipe makes {output}")))?;
    let room = b.room(&b.text("room")?)?;
    let surface = b.surface(room);
    let mut subs = Vec::new();
    for input in &recipe.inputs {
        let m = b.material(input)?;
        let liquid = b.w.material(m).phase_at(b.w.obj(room).temperature).is_fluid();
        let c = b.spawn(if liquid { "glass cup" } else { "bowl" }, surface)?;
        subs.push(b.w.spawn_substance(m, c, None));
    }
    let note = b.spawn("recipe", surface)?;
    let text = match recipe.inputs.as_slice() {
        [a, c] => format!("To make {output}, mix {a} and {c}."),
        [init @ .., last] => format!("To make {output}, mix {} and {last}.", init.join(", ")),
        [] => format!("To make {output}, mix nothing."),
    };
    b.w.obj_mut(note).readable = Some(text);
    b.set("ingredients", subs);
    b.set("recipe", alloc::vec![note]);
    b.put("output", output);
    Ok(())
}

fn paint(b: &mut Builder<'_>) -> R<()> {
    let room = b.room(&b.text("room")?)?;
    let surface = b.surface(room);
    let mut cups = Vec::new();
    let mut paints = Vec::new();
    for p in b.list("paints")? {
        let m = b.material(&p)?;
        let cup = b.spawn("wood cup", surface)?;
        paints.push(b.w.spawn_substance(m, cup, None));
        cups.push(cup);
    }
    cups.push(b.spawn("wood cup", surface)?);
    let mut both = cups.clone();
    both.extend(&paints);
    b.set("cups", cups);
    b.set("paints", paints);
    b.set("paint_things", both);
    b.put("target", b.text("target")?);
    Ok(())
}

fn lifespan(b: &mut Builder<'_>) -> R<()> {
    let (_, animals) = populate(b)?;
    if animals.len() < 2 {
        return Err(b.err("need at least two animals"));
    }
    let life = |w: &World, id: ObjId| w.species_of(id).map_or(0.0, |s| s.lifespan);
    let mut sorted = animals.clone();
    sorted.sort_by(|&x, &y| life(&b.w, x).total_cmp(&life(&b.w, y)));
    let (short, long) = (sorted[0], sorted[sorted.len() - 1]);
    if life(&b.w, sorted[0]) == life(&b.w, sorted[1])
        || life(&b.w, long) == life(&b.w, sorted[sorted.len() - 2])
    {
        return Err(b.err("life spans must be distinct at the extremes"));
    }
    b.set("longest", alloc::vec![long]);
    b.set("shortest", alloc::vec![short]);
    b.set("animals", animals);
    Ok(())
}

fn life_stages(b: &mut Builder<'_>) -> R<()> {
    let room = b.room(&b.text("room")?)?;
    let sp = b.species(&b.text("species")?)?;
    let living = b.w.species[sp].dead_stage();
    let mut order: Vec<usize> = (0..living).collect();
    order.shuffle(&mut b.rng);
    let mut by_stage = alloc::vec![ObjId(0); living];
    for stage in order {
        let id = b.w.spawn_living(sp, stage, room);
        b.w.obj_mut(id).life.as_mut().expect("living").frozen = true;
        by_stage[stage] = id;
    }
    for (i, &id) in by_stage.iter().enumerate() {
        b.set(&format!("stage{}", i + 1), alloc::vec![id]);
    }
    b.set("stages", by_stage);
    let name = b.w.species[sp].name.clone();
    b.put("species", name);
    Ok(())
}

fn planes(b: &mut Builder<'_>) -> R<()> {
    let room = b.room(&b.text("room")?)?;
    let mode = b.text("mode")?;
    let speed = b.w.catalog.physics.plane_speed;
    let (angles, surfaces): ([f64; 2], [crate::material::MaterialId; 2]) = match mode.as_str() {
        "angle" => {
            let a = b.list("angles")?;
            let parse = |s: &str| s.parse::<f64>().map_err(|_| b.err("angles must be numbers"));
            let m = b.material(&b.text("surface")?)?;
            ([parse(&a[0])?, parse(&a[1])?], [m, m])
        }
        "friction" => {
            let s = b.list("surfaces")?;
            let angle = b.num("angle")?;
            ([angle, angle], [b.material(&s[0])?, b.material(&s[1])?])
        }
        "masked" => {
            let label = b.list("labels")?;
            let first_rougher = b.balanced_bit();
            let mut r = rng::stream(b.var as u64, &format!("{} masked", b.task.id));
            let lo = f64::from(r.random_range(5..=35_i32)) / 100.0;
            let hi = lo + f64::from(r.random_range(20..=45_i32)) / 100.0;
            let (f0, f1) = if first_rougher { (hi, lo) } else { (lo, hi) };
            let m0 = b.w.add_material(Material::new(
                &format!("unknown material {}", label[0]),
                0.3, None, None, None, false, f0, None,
            ));
            let m1 = b.w.add_material(Material::new(
                &format!("unknown material {}", label[1]),
                0.3, None, None, None, false, f1, None,
            ));
            let angle = b.num("angle")?;
            ([angle, angle], [m0, m1])
        }
        other => return Err(b.err(format!("unknown plane mode {other}"))),
    };
    let mut ids = Vec::new();
    let mut v = [0.0; 2];
    for (i, letter) in ["A", "B"].iter().enumerate() {
        let p = b.spawn_named("inclined plane", &format!("inclined plane {letter}"), room)?;
        b.w.obj_mut(p).plane = Some(PlaneState {
            angle: angles[i],
            surface: surfaces[i],
            position: 0.0,
            elapsed: 0,
        });
        v[i] = plane::speed(speed, angles[i], b.w.material(surfaces[i]).friction);
        ids.push(p);
    }
    if (v[0] - v[1]).abs() < 0.02 {
        return Err(b.err("planes must differ in speed by at least 2% per tick"));
    }
    let block = b.spawn("block", room)?;
    b.spawn("stopwatch", room)?;
    // "fast" asks for the faster plane (steeper, or less friction).
    let want_fast = b.text("answer")? == "fast";
    let pick = if (v[0] > v[1]) == want_fast { ids[0] } else { ids[1] };
    let other = if pick == ids[0] { ids[1] } else { ids[0] };
    b.set("answer", alloc::vec![pick]);
    b.set("wrong", alloc::vec![other]);
    b.set("planes", ids);
    b.set("block", alloc::vec![block]);
    Ok(())
}

fn genetics(b: &mut Builder<'_>) -> R<()> {
    let gh = b.room("greenhouse")?;
    let trait_name = b.text("trait")?;
    let base = b.species("pea plant")?;
    let sp = if b.v.text("label").is_some() {
        let label = b.masked_label()?;
        let mut s = b.w.species[base].clone();
        let name = format!("unknown plant {label}");
        s.stages = alloc::vec![
            format!("{name} seed"),
            format!("{name} seedling"),
            name.clone(),
            format!("flowering {name}"),
            format!("dead {name}"),
        ];
        s.fruit = Some(format!("{name} pod"));
        s.name = name;
        if b.balanced_bit() {
            for t in s.traits.iter_mut().filter(|t| t.name == trait_name) {
                core::mem::swap(&mut t.dominant, &mut t.recessive);
            }
        }
        b.w.species.push(s);
        b.w.species.len() - 1
    } else {
        base
    };
    let traits = b.w.species[sp].traits.clone();
    let t = traits
        .iter()
        .find(|t| t.name == trait_name)
        .ok_or_else(|| b.err(format!("unknown trait {trait_name}")))?
        .clone();
    let value = b.text("value")?;
    if value != t.dominant && value != t.recessive {
        return Err(b.err(format!("{value} is not a value of {trait_name}")));
    }
    let jar = seed_jar(b, gh)?;
    let mut parents = Vec::new();
    for recessive in [false, true] {
        let id = b.w.spawn_living(sp, 0, jar);
        let rec: Vec<&str> = if recessive { alloc::vec![trait_name.as_str()] } else { Vec::new() };
        b.w.obj_mut(id).genotype = Some(Genotype::homozygous(&traits, &rec));
        parents.push(id);
    }
    let pots = potted(b, gh, 3)?;
    bees(b, gh)?;
    b.boxes(gh, value == t.dominant)?;
    b.set("parents", parents);
    b.set("pots", pots);
    let name = b.w.species[sp].name.clone();
    b.put("species", name);
    b.put("value", value);
    Ok(())
}

// --- goal instantiation --------------------------------------------------------

fn fill_text(template: &str, fill: &BTreeMap<String, String>) -> String {
    let mut out = String::from(template);
    for (k, v) in fill {
        out = out.replace(&format!("{{{k}}}"), v);
    }
    out
}

fn fill_sel(s: &Selector, fill: &BTreeMap<String, String>) -> Selector {
    match s {
        Selector::Category(x) => Selector::Category(fill_text(x, fill)),
        Selector::Kind(x) => Selector::Kind(fill_text(x, fill)),
        Selector::Material(x) => Selector::Material(fill_text(x, fill)),
        Selector::Room(x) => Selector::Room(fill_text(x, fill)),
        other => other.clone(),
    }
}

fn fill_pred(p: &Predicate, f: &BTreeMap<String, String>) -> Predicate {
    use Predicate as P;
    match p {
        P::Focus(s) => P::Focus(fill_sel(s, f)),
        P::Inside { obj, container } => P::Inside {
            obj: fill_sel(obj, f),
            container: fill_sel(container, f),
        },
        P::InInventory(s) => P::InInventory(fill_sel(s, f)),
        P::AgentIn(s) => P::AgentIn(fill_sel(s, f)),
        P::StateIs { obj, phase } => P::StateIs {
            obj: fill_sel(obj, f),
            phase: *phase,
        },
        P::StateChanged(s) => P::StateChanged(fill_sel(s, f)),
        P::TempChange { obj, delta } => P::TempChange {
            obj: fill_sel(obj, f),
            delta: *delta,
        },
        P::DeviceActive(s) => P::DeviceActive(fill_sel(s, f)),
        P::Powered { obj, renewable } => P::Powered {
            obj: fill_sel(obj, f),
            renewable: *renewable,
        },
        P::Connected(s) => P::Connected(fill_sel(s, f)),
        P::StageAtLeast { obj, stage } => P::StageAtLeast {
            obj: fill_sel(obj, f),
            stage: *stage,
        },
        P::Exists(s) => P::Exists(fill_sel(s, f)),
        P::Did { action, obj } => P::Did {
            action: action.clone(),
            obj: fill_sel(obj, f),
        },
    }
}

/// Builds variation `var` of `task_id`.
pub fn generate(
    catalog: Arc<Catalog>,
    task_id: &str,
    var: usize,
    seed: u64,
    flags: Simplifications,
) -> Result<Generated, TaskError> {
    let cat = catalog.clone();
    let task = cat
        .task(task_id)
        .ok_or_else(|| TaskError::UnknownTask(task_id.to_string()))?;
    let v = task.variations.get(var).ok_or(TaskError::NoSuchVariation {
        task: task.id.clone(),
        index: var,
        count: task.variations.len(),
    })?;
    let start = start_room(&cat, &task.id, var);
    let world_seed = rng::mix(seed ^ rng::fnv1a(task.id.as_bytes()) ^ ((var as u64) << 32));
    let mut b = Builder {
        w: World::new(catalog, world_seed, start, flags),
        task,
        v,
        var,
        rng: rng::stream(world_seed, "layout"),
        bind: BTreeMap::new(),
        fill: BTreeMap::new(),
    };
    for (k, p) in &v.params {
        if let crate::catalog::Param::Text(s) = p {
            b.fill.insert(k.clone(), s.clone());
        }
    }
    furnish(&mut b)?;
    match task.family.as_str() {
        "change_of_state" => change_of_state(&mut b)?,
        "thermometer" => thermometer(&mut b)?,
        "melting_point" => melting_point(&mut b)?,
        "circuit" => circuit(&mut b)?,
        "renewable" => renewable(&mut b)?,
        "conductivity" => conductivity(&mut b)?,
        "classify" => classify(&mut b)?,
        "grow_plant" => grow_plant(&mut b)?,
        "grow_fruit" => grow_fruit(&mut b)?,
        "chemistry" => chemistry(&mut b)?,
        "paint" => paint(&mut b)?,
        "lifespan" => lifespan(&mut b)?,
        "life_stages" => life_stages(&mut b)?,
        "planes" => planes(&mut b)?,
        "genetics" => genetics(&mut b)?,
        other => return Err(b.err(format!("unknown family {other}"))),
    }
    // Fixtures may be spawned after the agent; keep the start state settled.
    crate::engine::thermo::update_phases(&mut b.w);
    let goal = |g: &GoalDef| GoalDef {
        when: fill_pred(&g.when, &b.fill),
        points: g.points,
    };
    let required = task.required.iter().map(goal).collect();
    let optional = task.optional.iter().map(goal).collect();
    let failure = task.failure.iter().map(|p| fill_pred(p, &b.fill)).collect();
    Ok(Generated {
        description: fill_text(&task.description, &b.fill),
        required,
        optional,
        failure,
        bindings: b.bind,
        world: b.w,
    })
}

/// Whether species `s` is a plant.
pub fn is_plant(w: &World, s: usize) -> bool {
    w.species[s].kind == LifeKind::Plant
}
