//! Device activation and per-tick device effects (taps).

use alloc::format;
use alloc::vec::Vec;

use crate::error::WorldError;
use crate::object::{Condition, DeviceKind, ObjId};
use crate::referent::display_name;
use crate::world::World;

fn checked(w: &World, id: ObjId) -> Result<(), WorldError> {
    let name = display_name(w, id);
    let Some(d) = &w.obj(id).device else {
        return Err(WorldError::NotADevice(name));
    };
    if !d.agent_activatable {
        return Err(WorldError::NotADevice(name));
    }
    if d.broken {
        return Err(WorldError::ConditionUnmet(format!("The {name} is broken.")));
    }
    Ok(())
}

pub fn activate(w: &mut World, id: ObjId) -> Result<(), WorldError> {
    checked(w, id)?;
    let name = display_name(w, id);
    let d = w.obj(id).device.as_ref().expect("checked");
    if d.active {
        return Err(WorldError::AlreadyActive(name));
    }
    if d.condition == Some(Condition::Outside) {
        let outside = w.room_of(id).is_some_and(|r| w.room_name(r) == "outside");
        if !outside {
            return Err(WorldError::ConditionUnmet(format!(
                "The {name} only works outside."
            )));
        }
    }
    let tick = w.tick;
    let d = w.obj_mut(id).device.as_mut().expect("checked");
    d.active = true;
    if d.kind == DeviceKind::Stopwatch {
        d.started_at = Some(tick);
    }
    Ok(())
}

pub fn deactivate(w: &mut World, id: ObjId) -> Result<(), WorldError> {
    checked(w, id)?;
    let name = display_name(w, id);
    let d = w.obj_mut(id).device.as_mut().expect("checked");
    if !d.active {
        return Err(WorldError::AlreadyInactive(name));
    }
    d.active = false;
    Ok(())
}

/// Running taps keep every open vessel inside them (or else the basin) supplied
/// with fresh water.
pub fn tick(w: &mut World) {
    let Some(water) = w.material_id("water") else {
        return;
    };
    let tap = w.catalog.physics.tap_temperature;
    let taps: Vec<ObjId> = w
        .ids()
        .filter(|&id| {
            w.obj(id).device.as_ref().is_some_and(|d| {
                d.kind == DeviceKind::WaterSource && d.active && !d.broken
            })
        })
        .collect();
    let has_water = |w: &World, c: ObjId| {
        w.children(c)
            .iter()
            .any(|&x| w.obj(x).material == Some(water) && w.obj(x).is_fluid())
    };
    for t in taps {
        let vessels: Vec<ObjId> = w
            .children(t)
            .iter()
            .copied()
            .filter(|&c| {
                let o = w.obj(c);
                o.vessel && o.is_open_container()
            })
            .collect();
        if vessels.is_empty() {
            if !has_water(w, t) {
                w.spawn_substance(water, t, Some(tap));
            }
            continue;
        }
        for v in vessels {
            if !has_water(w, v) {
                w.spawn_substance(water, v, Some(tap));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    #[test]
    fn sink_fills_cup() {
        let c = Catalog::builtin();
        let k = c.room_index("kitchen").unwrap();
        let mut w = World::new(c, 1, k, Simplifications::none());
        let room = w.rooms[k];
        let sink = w.spawn("sink", room).unwrap();
        let cup = w.spawn("glass cup", sink).unwrap();
        activate(&mut w, sink).unwrap();
        assert!(matches!(activate(&mut w, sink), Err(WorldError::AlreadyActive(_))));
        tick(&mut w);
        tick(&mut w);
        assert_eq!(w.children(cup).len(), 1);
        assert!(w.children(sink).len() == 1);
    }

    #[test]
    fn solar_panel_needs_outside_and_broken_fails() {
        let c = Catalog::builtin();
        let k = c.room_index("kitchen").unwrap();
        let o = c.room_index("outside").unwrap();
        let mut w = World::new(c, 1, k, Simplifications::none());
        let p = w.spawn("solar panel", w.rooms[k]).unwrap();
        assert!(matches!(activate(&mut w, p), Err(WorldError::ConditionUnmet(_))));
        let q = w.spawn("solar panel", w.rooms[o]).unwrap();
        activate(&mut w, q).unwrap();
        let s = w.spawn("stove", w.rooms[k]).unwrap();
        w.obj_mut(s).device.as_mut().unwrap().broken = true;
        assert!(matches!(activate(&mut w, s), Err(WorldError::ConditionUnmet(_))));
        let b = w.spawn("battery", w.rooms[k]).unwrap();
        assert!(matches!(activate(&mut w, b), Err(WorldError::NotADevice(_))));
    }
}
