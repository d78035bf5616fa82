//! Heat transfer, phase changes and combustion.
//!
//! Within a tick: active heat devices pin themselves and drive their contents,
//! burning objects are pinned, objects sharing a container exchange heat
//! pairwise, loose objects relax toward room air, substances update their
//! phase, and hot combustible objects ignite or burn out.

use alloc::string::String;
use alloc::vec::Vec;

use crate::object::{ContainerKind, ObjId, Phase};
use crate::world::World;

/// Pairwise exchange rate: half the smaller conduction coefficient.
pub fn pair_rate(a: f64, b: f64) -> f64 {
    a.min(b) / 2.0
}

/// One symmetric conduction step. The gap shrinks by `1 - 2k` and neither
/// side passes the mean.
pub fn exchange(ta: f64, tb: f64, k: f64) -> (f64, f64) {
    let k = k.clamp(0.0, 0.5);
    let d = tb - ta;
    (ta + k * d, tb - k * d)
}

fn pinned(w: &World, id: ObjId) -> bool {
    let o = w.obj(id);
    o.burning.is_some() || o.is_active_heat_device()
}

fn conduction(w: &World, id: ObjId) -> Option<f64> {
    w.material_of(id).map(|m| m.conduction)
}

pub fn tick(w: &mut World) {
    let ids: Vec<ObjId> = w.ids().collect();
    let burn_t = w.catalog.physics.burn_temperature;

    // Devices drive everything inside them.
    for &id in &ids {
        let o = w.obj(id);
        if !o.is_active_heat_device() {
            continue;
        }
        let d = o.device.as_ref().expect("heat device");
        let (set, rate) = (d.set_temperature, d.rate);
        w.obj_mut(id).temperature = set;
        for c in w.descendants(id) {
            if !pinned(w, c) {
                let t = &mut w.obj_mut(c).temperature;
                *t += rate * (set - *t);
            }
        }
    }

    for &id in &ids {
        if w.obj(id).burning.is_some() {
            w.obj_mut(id).temperature = burn_t;
        }
    }

    // Contact groups: a container body and its direct children.
    for &c in &ids {
        let o = w.obj(c);
        if o.container == ContainerKind::None || o.is_room() || c == w.agent || c == w.inventory {
            continue;
        }
        let mut group: Vec<ObjId> = Vec::new();
        if !o.is_active_heat_device() {
            group.push(c);
        }
        group.extend_from_slice(w.children(c));
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                let (a, b) = (group[i], group[j]);
                let (Some(ca), Some(cb)) = (conduction(w, a), conduction(w, b)) else {
                    continue;
                };
                let k = pair_rate(ca, cb);
                let (ta, tb) = (w.obj(a).temperature, w.obj(b).temperature);
                let (na, nb) = exchange(ta, tb, k);
                match (pinned(w, a), pinned(w, b)) {
                    (false, false) => {
                        w.obj_mut(a).temperature = na;
                        w.obj_mut(b).temperature = nb;
                    }
                    (true, false) => w.obj_mut(b).temperature = nb,
                    (false, true) => w.obj_mut(a).temperature = na,
                    (true, true) => {}
                }
            }
        }
    }

    // Room air.
    let rate = w.catalog.physics.ambient_rate;
    let agent_room = w.agent_room();
    let mut loose: Vec<(ObjId, f64)> = Vec::new();
    for (r, &room) in w.rooms.iter().enumerate() {
        let amb = w.ambient(r);
        for &c in w.children(room) {
            loose.push((c, amb));
        }
    }
    let inv_amb = w.ambient(agent_room);
    for &c in w.children(w.inventory) {
        loose.push((c, inv_amb));
    }
    for (id, amb) in loose {
        if !pinned(w, id) {
            let t = &mut w.obj_mut(id).temperature;
            *t += rate * (amb - *t);
        }
    }

    update_phases(w);
    combustion(w);
}

/// Sets each substance's phase from its temperature.
pub fn update_phases(w: &mut World) {
    let ids: Vec<ObjId> = w.ids().collect();
    for id in ids {
        let o = w.obj(id);
        if let (Some(p), Some(m)) = (o.phase, o.material) {
            let want: Phase = w.material(m).phase_at(o.temperature);
            if want != p {
                w.obj_mut(id).phase = Some(want);
            }
        }
    }
}

fn combustion(w: &mut World) {
    let ids: Vec<ObjId> = w.ids().collect();
    let duration = w.catalog.physics.burn_duration;
    let no_fire = w.flags.no_combustion;
    for id in ids {
        if !w.exists(id) {
            continue;
        }
        let o = w.obj(id);
        if let Some(n) = o.burning {
            if n + 1 >= duration {
                burn_out(w, id);
            } else {
                w.obj_mut(id).burning = Some(n + 1);
            }
            continue;
        }
        if no_fire || o.is_room() || id == w.agent || id == w.inventory {
            continue;
        }
        let Some(cp) = w.material_of(id).and_then(|m| m.combustion_point) else {
            continue;
        };
        if o.temperature >= cp {
            w.obj_mut(id).burning = Some(0);
        }
    }
}

/// A burnt-out object becomes a pile of ash; its contents fall out.
fn burn_out(w: &mut World, id: ObjId) {
    if let Some(p) = w.parent(id) {
        for c in w.children(id).to_vec() {
            w.relocate(c, p);
        }
    }
    w.disconnect_all(id);
    let ash = w.material_id("ash");
    let o = w.obj_mut(id);
    o.kind = String::from("substance");
    o.name = None;
    o.material = ash;
    o.phase = Some(Phase::Solid);
    o.container = ContainerKind::None;
    o.open = false;
    o.vessel = false;
    o.device = None;
    o.electrical = None;
    o.life = None;
    o.genotype = None;
    o.portable = true;
    o.edible = false;
    o.flushable = false;
    o.readable = None;
    o.use_kind = None;
    o.categories = alloc::vec![String::from("substance")];
    o.burning = None;
    o.plane = None;
    w.powered.remove(&id);
}
