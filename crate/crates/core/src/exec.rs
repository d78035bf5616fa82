//! Executes grounded actions against the world. Execution never ticks; the
//! environment advances time afterwards by [`ExecResult::ticks`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::describe;
use crate::engine::{chemistry, device};
use crate::error::WorldError;
use crate::object::{ObjId, Phase, UseKind};
use crate::parser::Action;
use crate::referent::display_name;
use crate::world::World;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Focus(ObjId),
    Did(&'static str, ObjId),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExecResult {
    pub text: String,
    pub ok: bool,
    pub ticks: u32,
    pub events: Vec<Event>,
}

fn visible(w: &World, ids: &[ObjId]) -> Result<(), WorldError> {
    let v = w.visible_set();
    let room = w.rooms[w.agent_room()];
    if ids.iter().all(|&i| w.exists(i) && (v.contains(&i) || i == room)) {
        Ok(())
    } else {
        Err(WorldError::NotVisible)
    }
}

fn liquids_in(w: &World, c: ObjId) -> Vec<ObjId> {
    w.children(c)
        .iter()
        .copied()
        .filter(|&x| w.obj(x).phase == Some(Phase::Liquid))
        .collect()
}

fn pour_into(w: &mut World, from: ObjId, into: ObjId) -> Result<String, WorldError> {
    let src = w.obj(from);
    let dst_name = display_name(w, into);
    let d = w.obj(into);
    if !d.vessel || !d.is_container() {
        return Err(WorldError::NotAContainer(dst_name));
    }
    if !d.is_open_container() {
        return Err(WorldError::ContainerClosed(dst_name));
    }
    let liquids = if src.phase == Some(Phase::Liquid) {
        alloc::vec![from]
    } else {
        liquids_in(w, from)
    };
    if liquids.is_empty() {
        return Err(WorldError::NoLiquid(display_name(w, from)));
    }
    for &l in &liquids {
        if into == l || w.is_descendant(into, l) {
            return Err(WorldError::WouldCycle(display_name(w, l)));
        }
        if w.parent(l) == Some(into) {
            return Err(WorldError::AlreadyThere(display_name(w, l)));
        }
    }
    let names: Vec<String> = liquids.iter().map(|&l| display_name(w, l)).collect();
    for l in liquids {
        w.relocate(l, into);
    }
    Ok(format!("You pour the {} into the {dst_name}.", names.join(" and the ")))
}

fn run(w: &mut World, a: &Action, task_text: &str, events: &mut Vec<Event>) -> Result<String, WorldError> {
    visible(w, &a.objects())?;
    let name = |w: &World, x: ObjId| display_name(w, x);
    match *a {
        Action::Open(x) | Action::Close(x) => {
            let open = matches!(a, Action::Open(_));
            let n = name(w, x);
            if let Some(edge) = w.obj(x).door {
                if w.doors_open[edge] == open {
                    return Err(if open {
                        WorldError::AlreadyOpen(n)
                    } else {
                        WorldError::AlreadyClosed(n)
                    });
                }
                w.doors_open[edge] = open;
            } else {
                let o = w.obj(x);
                if o.container != crate::object::ContainerKind::Closeable {
                    return Err(WorldError::NotCloseable(n));
                }
                if o.open == open {
                    return Err(if open {
                        WorldError::AlreadyOpen(n)
                    } else {
                        WorldError::AlreadyClosed(n)
                    });
                }
                w.obj_mut(x).open = open;
            }
            Ok(format!("The {n} is now {}.", if open { "open" } else { "closed" }))
        }
        Action::Activate(x) => {
            device::activate(w, x)?;
            Ok(format!("The {} is now activated.", name(w, x)))
        }
        Action::Deactivate(x) => {
            device::deactivate(w, x)?;
            Ok(format!("The {} is now deactivated.", name(w, x)))
        }
        Action::Connect { a, ta, b, tb } => {
            let (ta, tb) = w.connect(a, ta, b, tb)?;
            Ok(format!(
                "The {} {} is now connected to the {} {}.",
                name(w, a),
                ta.name(),
                name(w, b),
                tb.name()
            ))
        }
        Action::Disconnect(x) => {
            if w.disconnect_all(x) == 0 {
                return Err(WorldError::NotConnected(name(w, x)));
            }
            Ok(format!("The {} is now disconnected.", name(w, x)))
        }
        Action::UseOn(tool, target) => match w.obj(tool).use_kind {
            Some(UseKind::Thermometer) if !w.obj(target).is_room() => {
                Ok(describe::thermometer_reading(w.obj(target).temperature))
            }
            Some(UseKind::Shovel) if w.obj(target).kind == "ground" => {
                let soil = w.material_id("soil").ok_or(WorldError::NoUseDefined)?;
                let inv = w.inventory;
                w.spawn_substance(soil, inv, None);
                Ok(String::from(
                    "You dig up some soil with the shovel and put it in your inventory.",
                ))
            }
            _ => Err(WorldError::NoUseDefined),
        },
        Action::Use(x) => {
            if w.obj(x).use_kind == Some(UseKind::Stopwatch) {
                if w.obj(x).device.as_ref().is_some_and(|d| d.active) {
                    device::deactivate(w, x)?;
                    Ok(format!("The {} is now stopped.", name(w, x)))
                } else {
                    device::activate(w, x)?;
                    Ok(format!("The {} is now running.", name(w, x)))
                }
            } else {
                Err(WorldError::NoUseDefined)
            }
        }
        Action::LookAround => Ok(describe::describe_room(w)),
        Action::LookAt(x) => describe::describe_object(w, x),
        Action::LookIn(x) => describe::describe_contents(w, x),
        Action::Read(x) => match &w.obj(x).readable {
            Some(t) if !t.is_empty() => Ok(t.clone()),
            _ => Err(WorldError::NotReadable(name(w, x))),
        },
        Action::Move(x, y) => {
            w.move_object(x, y)?;
            Ok(format!("You move the {} to the {}.", name(w, x), name(w, y)))
        }
        Action::PickUp(x) => {
            if w.obj(x).is_fluid() {
                return Err(WorldError::NeedsVessel(name(w, x)));
            }
            let inv = w.inventory;
            w.move_object(x, inv)?;
            Ok(format!("You move the {} to the inventory.", name(w, x)))
        }
        Action::PutDown(x) => {
            if w.parent(x) != Some(w.inventory) {
                return Err(WorldError::NotInInventory(name(w, x)));
            }
            let room = w.rooms[w.agent_room()];
            w.move_object(x, room)?;
            Ok(format!("You drop the {}.", name(w, x)))
        }
        Action::Pour(x, y) => pour_into(w, x, y),
        Action::Dunk(x, y) => {
            let v = w.obj(x);
            if !v.vessel || !v.portable {
                return Err(WorldError::NotAContainer(name(w, x)));
            }
            let src = if w.obj(y).phase == Some(Phase::Liquid) {
                w.parent(y).ok_or(WorldError::NotVisible)?
            } else {
                y
            };
            let liquids = liquids_in(w, src);
            let Some(&first) = liquids.first() else {
                return Err(WorldError::NoLiquid(name(w, y)));
            };
            let from = if w.obj(y).phase == Some(Phase::Liquid) { y } else { first };
            pour_into(w, from, x)?;
            Ok(format!("You dunk the {} into the {}.", name(w, x), name(w, y)))
        }
        Action::Mix(x) => {
            let out = chemistry::mix(w, x)?;
            Ok(format!(
                "You mix the contents of the {}, producing some {}.",
                name(w, x),
                name(w, out)
            ))
        }
        Action::GoTo(r) => {
            let here = w.agent_room();
            let target = w.room_name(r).into();
            if r == here {
                return Err(WorldError::AlreadyHere(target));
            }
            let edge = w
                .catalog
                .neighbors(here)
                .into_iter()
                .find(|&(_, o)| o == r)
                .map(|(e, _)| e)
                .ok_or(WorldError::NotAdjacent(target))?;
            if !w.doors_open[edge] {
                return Err(WorldError::DoorClosed(w.room_name(r).into()));
            }
            let (agent, room) = (w.agent, w.rooms[r]);
            w.relocate(agent, room);
            Ok(format!("You move to the {}.", w.room_name(r)))
        }
        Action::Teleport(r) => {
            if !w.flags.teleport {
                return Err(WorldError::TeleportDisabled);
            }
            if r == w.agent_room() {
                return Err(WorldError::AlreadyHere(w.room_name(r).into()));
            }
            let (agent, room) = (w.agent, w.rooms[r]);
            w.relocate(agent, room);
            Ok(format!("You teleport to the {}.", w.room_name(r)))
        }
        Action::Eat(x) => {
            let n = name(w, x);
            if !w.obj(x).edible {
                return Err(WorldError::NotEdible(n));
            }
            w.remove(x);
            Ok(format!("You eat the {n}."))
        }
        Action::Flush(x) => {
            let n = name(w, x);
            if !w.obj(x).flushable {
                return Err(WorldError::NotFlushable(n));
            }
            for c in w.children(x).to_vec() {
                w.remove(c);
            }
            Ok(format!("The {n} is flushed."))
        }
        Action::Focus(x) => {
            if w.obj(x).is_room() {
                return Err(WorldError::NotFocusable);
            }
            events.push(Event::Focus(x));
            Ok(format!("You focus on the {}.", name(w, x)))
        }
        Action::Wait(n) => Ok(if n == 1 {
            String::from("You decide to wait for 1 iteration.")
        } else {
            format!("You decide to wait for {n} iterations.")
        }),
        Action::Task => Ok(String::from(task_text)),
        Action::Inventory => Ok(describe::describe_inventory(w)),
    }
}

/// Runs one action. Failures leave the world unchanged and report the reason.
pub fn execute(w: &mut World, a: &Action, task_text: &str) -> ExecResult {
    let mut events = Vec::new();
    let ticks = match a {
        Action::Wait(n) => *n,
        _ => 1,
    };
    let objs = a.objects();
    match run(w, a, task_text, &mut events) {
        Ok(text) => {
            for o in objs {
                events.push(Event::Did(a.id(), o));
            }
            ExecResult {
                text,
                ok: true,
                ticks,
                events,
            }
        }
        Err(e) => ExecResult {
            text: format!("{e}"),
            ok: false,
            ticks,
            events: Vec::new(),
        },
    }
}
