//! Series circuits over terminal links.
//!
//! Every terminal holds at most one link and every conducting object joins its
//! own two terminals, so the terminal graph is a disjoint union of paths and
//! cycles. A consumer is powered when it lies on a cycle through an active
//! source, all members conduct, and walking the cycle out of the source's anode
//! enters every polarized member through its cathode.

use alloc::vec::Vec;

use crate::object::{DeviceKind, ElecRole, ObjId, Terminal};
use crate::world::World;

/// Whether current passes between the object's two terminals.
pub fn conducts(w: &World, id: ObjId) -> bool {
    let o = w.obj(id);
    match o.electrical {
        Some(e) => match e.role {
            ElecRole::Source | ElecRole::Consumer | ElecRole::Conductor => true,
            ElecRole::Switch => o.device.as_ref().is_some_and(|d| d.active && !d.broken),
        },
        None => w.material_of(id).is_some_and(|m| m.conductive),
    }
}

fn polarized(w: &World, id: ObjId) -> bool {
    w.obj(id).electrical.is_some_and(|e| e.polarized)
}

fn is_live_source(w: &World, id: ObjId) -> bool {
    let o = w.obj(id);
    o.electrical.is_some_and(|e| e.role == ElecRole::Source)
        && o.device
            .as_ref()
            .is_some_and(|d| d.kind == DeviceKind::PowerSource && d.active && !d.broken)
}

/// Members of the valid loop leaving `source` through its anode, source first.
pub fn trace_loop(w: &World, source: ObjId) -> Option<Vec<ObjId>> {
    let mut members = alloc::vec![source];
    let mut cur = (source, Terminal::Anode);
    loop {
        let &(o, t) = w.links.get(&cur)?;
        if o == source {
            return (t == Terminal::Cathode).then_some(members);
        }
        if members.contains(&o) || !conducts(w, o) {
            return None;
        }
        if polarized(w, o) && t != Terminal::Cathode {
            return None;
        }
        members.push(o);
        cur = (o, t.partner());
    }
}

/// Recomputes which consumers are powered and sets their activation.
pub fn update(w: &mut World) {
    w.powered.clear();
    let ids: Vec<ObjId> = w.ids().collect();
    for &id in &ids {
        if !is_live_source(w, id) || !conducts(w, id) {
            continue;
        }
        let Some(members) = trace_loop(w, id) else {
            continue;
        };
        let renewable = members
            .iter()
            .any(|&m| is_live_source(w, m) && w.obj(m).electrical.is_some_and(|e| e.renewable));
        for m in members {
            if w.obj(m).electrical.is_some_and(|e| e.role == ElecRole::Consumer) {
                let e = w.powered.entry(m).or_insert(false);
                *e |= renewable;
            }
        }
    }
    for id in ids {
        let on = w.powered.contains_key(&id);
        let o = w.obj_mut(id);
        if let Some(d) = o.device.as_mut() {
            if d.kind == DeviceKind::Consumer {
                d.active = on && !d.broken;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    fn world() -> (World, ObjId) {
        let c = Catalog::builtin();
        let k = c.room_index("workshop").unwrap();
        let w = World::new(c, 1, k, Simplifications::none());
        let r = w.rooms[k];
        (w, r)
    }

    #[test]
    fn simple_loop_lights_bulb() {
        let (mut w, r) = world();
        let bat = w.spawn("battery", r).unwrap();
        let bulb = w.spawn("light bulb", r).unwrap();
        let w1 = w.spawn("wire", r).unwrap();
        let w2 = w.spawn("wire", r).unwrap();
        w.connect(bat, Some(Terminal::Anode), w1, Some(Terminal::One)).unwrap();
        w.connect(w1, Some(Terminal::Two), bulb, Some(Terminal::Cathode)).unwrap();
        w.connect(bulb, Some(Terminal::Anode), w2, Some(Terminal::One)).unwrap();
        update(&mut w);
        assert!(!w.powered.contains_key(&bulb), "open loop");
        w.connect(w2, Some(Terminal::Two), bat, Some(Terminal::Cathode)).unwrap();
        update(&mut w);
        assert_eq!(w.powered.get(&bulb), Some(&false));
        assert!(w.obj(bulb).device.as_ref().unwrap().active);
    }

    #[test]
    fn reversed_bulb_stays_dark() {
        let (mut w, r) = world();
        let bat = w.spawn("battery", r).unwrap();
        let bulb = w.spawn("light bulb", r).unwrap();
        w.connect(bat, Some(Terminal::Anode), bulb, Some(Terminal::Anode)).unwrap();
        w.connect(bulb, Some(Terminal::Cathode), bat, Some(Terminal::Cathode)).unwrap();
        update(&mut w);
        assert!(w.powered.is_empty());
    }

    #[test]
    fn fork_conducts_and_plastic_does_not() {
        for (item, lit) in [("metal fork", true), ("plastic fork", false)] {
            let (mut w, r) = world();
            let bat = w.spawn("battery", r).unwrap();
            let bulb = w.spawn("light bulb", r).unwrap();
            let f = w.spawn(item, r).unwrap();
            w.connect(bat, Some(Terminal::Anode), bulb, Some(Terminal::Cathode)).unwrap();
            w.connect(bulb, Some(Terminal::Anode), f, None).unwrap();
            w.connect(f, None, bat, Some(Terminal::Cathode)).unwrap();
            update(&mut w);
            assert_eq!(w.powered.contains_key(&bulb), lit, "{item}");
        }
    }

    #[test]
    fn open_switch_breaks_loop() {
        let (mut w, r) = world();
        let bat = w.spawn("battery", r).unwrap();
        let m = w.spawn("motor", r).unwrap();
        let s = w.spawn("switch", r).unwrap();
        w.connect(bat, Some(Terminal::Anode), m, None).unwrap();
        w.connect(m, None, s, None).unwrap();
        w.connect(s, None, bat, Some(Terminal::Cathode)).unwrap();
        update(&mut w);
        assert!(w.powered.is_empty());
        w.obj_mut(s).device.as_mut().unwrap().active = true;
        update(&mut w);
        assert!(w.powered.contains_key(&m));
    }
}
