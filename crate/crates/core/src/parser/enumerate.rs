use alloc::vec::Vec;

use super::{Action, ParsedAction};
use crate::object::{ContainerKind, ObjId, Phase, UseKind};
use crate::referent::ViewIndex;
use crate::world::World;

fn connectable(w: &World, id: ObjId) -> bool {
    let o = w.obj(id);
    o.electrical.is_some() || (o.portable && !o.is_substance() && o.life.is_none())
}

fn has_liquid(w: &World, c: ObjId) -> bool {
    w.children(c)
        .iter()
        .any(|&x| w.obj(x).phase == Some(Phase::Liquid))
}

/// Every action that passes the shallow preconditions, in canonical-text order.
pub fn valid_actions(w: &World, idx: &ViewIndex) -> Vec<ParsedAction> {
    let view = &idx.objects;
    let room = idx.room;
    let mut acts: Vec<Action> = Vec::new();

    for &x in view {
        let o = w.obj(x);
        if o.container == ContainerKind::Closeable {
            acts.push(if o.open { Action::Close(x) } else { Action::Open(x) });
        }
        if let Some(open) = w.door_open(x) {
            acts.push(if open { Action::Close(x) } else { Action::Open(x) });
        }
        if let Some(d) = &o.device {
            if d.agent_activatable {
                acts.push(if d.active {
                    Action::Deactivate(x)
                } else {
                    Action::Activate(x)
                });
            }
        }
        if !w.links_of(x).is_empty() {
            acts.push(Action::Disconnect(x));
        }
        match o.use_kind {
            Some(UseKind::Thermometer) => {
                for &y in view {
                    if y != x {
                        acts.push(Action::UseOn(x, y));
                    }
                }
            }
            Some(UseKind::Shovel) => {
                for &y in view {
                    if w.obj(y).kind == "ground" {
                        acts.push(Action::UseOn(x, y));
                    }
                }
            }
            _ => {}
        }
        acts.push(Action::LookAt(x));
        if o.is_open_container() {
            acts.push(Action::LookIn(x));
        }
        if o.readable.is_some() {
            acts.push(Action::Read(x));
        }
        if o.portable {
            let dests = view.iter().copied().chain(core::iter::once(room));
            for y in dests {
                let d = w.obj(y);
                if y == x
                    || !d.is_open_container()
                    || d.life.is_some()
                    || w.parent(x) == Some(y)
                    || w.is_descendant(y, x)
                    || (o.is_fluid() && !d.vessel)
                {
                    continue;
                }
                acts.push(Action::Move(x, y));
            }
            if !o.is_fluid() && w.parent(x) != Some(w.inventory) {
                acts.push(Action::PickUp(x));
            }
        }
        if w.parent(x) == Some(w.inventory) {
            acts.push(Action::PutDown(x));
        }
        let pours_liquid = o.phase == Some(Phase::Liquid);
        let pours_contents = o.is_container() && has_liquid(w, x);
        if pours_liquid || pours_contents {
            for &y in view {
                let d = w.obj(y);
                if y == x
                    || !d.vessel
                    || !d.is_open_container()
                    || w.is_descendant(y, x)
                    || (pours_liquid && w.parent(x) == Some(y))
                {
                    continue;
                }
                acts.push(Action::Pour(x, y));
            }
        }
        if o.portable && o.vessel && o.is_open_container() {
            for &y in view {
                let d = w.obj(y);
                let liquid = d.phase == Some(Phase::Liquid) && w.parent(y) != Some(x);
                let full = d.vessel && d.is_open_container() && has_liquid(w, y);
                if y != x && !w.is_descendant(y, x) && (liquid || full) {
                    acts.push(Action::Dunk(x, y));
                }
            }
        }
        let subs = w
            .children(x)
            .iter()
            .filter(|&&c| w.obj(c).is_substance())
            .count();
        if o.is_container() && subs >= 2 {
            acts.push(Action::Mix(x));
        }
        if o.edible {
            acts.push(Action::Eat(x));
        }
        if o.flushable {
            acts.push(Action::Flush(x));
        }
        acts.push(Action::Focus(x));
    }

    // connect: unordered pairs, explicit terminals only where polarity matters
    for (i, &a) in view.iter().enumerate() {
        if !connectable(w, a) {
            continue;
        }
        for &b in &view[i + 1..] {
            if !connectable(w, b) {
                continue;
            }
            if w.obj(a).electrical.is_none() && w.obj(b).electrical.is_none() {
                continue;
            }
            let opts = |x: ObjId| -> Vec<Option<crate::object::Terminal>> {
                let free = w.free_terminals(x);
                if free.is_empty() {
                    Vec::new()
                } else if w.obj(x).electrical.is_some_and(|e| e.polarized) {
                    free.into_iter().map(Some).collect()
                } else {
                    alloc::vec![None]
                }
            };
            for ta in opts(a) {
                for tb in opts(b) {
                    acts.push(Action::Connect { a, ta, b, tb });
                }
            }
        }
    }

    let here = w.agent_room();
    for (_, r) in w.catalog.neighbors(here) {
        acts.push(Action::GoTo(r));
    }
    if w.flags.teleport {
        for r in 0..w.rooms.len() {
            if r != here {
                acts.push(Action::Teleport(r));
            }
        }
    }
    acts.push(Action::LookAround);
    acts.push(Action::Task);
    acts.push(Action::Inventory);
    for k in 1..=10 {
        acts.push(Action::Wait(k));
    }

    let mut out: Vec<ParsedAction> = acts
        .into_iter()
        .map(|a| ParsedAction {
            text: a.render(w, idx),
            action: a,
        })
        .collect();
    out.sort_by(|a, b| a.text.cmp(&b.text));
    out.dedup_by(|a, b| a.action == b.action);
    out
}
