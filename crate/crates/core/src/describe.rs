//! Text rendering of rooms, objects and the inventory. Temperatures are never
//! shown here; only a thermometer reveals them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::catalog::LifeKind;
use crate::catalog::plant_stage;
use crate::engine::genetics::phenotype;
use crate::error::WorldError;
use crate::object::{ContainerKind, DeviceKind, ObjId};
use crate::referent::display_name;
use crate::world::World;

fn starts_with_vowel(s: &str) -> bool {
    matches!(s.chars().next(), Some('a' | 'e' | 'i' | 'o' | 'u'))
}

/// "a glass cup", "an apple", "some water".
pub fn with_article(w: &World, id: ObjId) -> String {
    let o = w.obj(id);
    let n = display_name(w, id);
    if id == w.agent {
        return String::from("the agent");
    }
    if o.is_substance() {
        return format!("some {n}");
    }
    if starts_with_vowel(&n) {
        format!("an {n}")
    } else {
        format!("a {n}")
    }
}

/// Parenthesized state markers for an object.
pub fn annotations(w: &World, id: ObjId) -> Vec<String> {
    let o = w.obj(id);
    let mut out = Vec::new();
    if let Some(d) = &o.device {
        if d.broken {
            out.push("broken".to_string());
        } else {
            let shown = match d.kind {
                DeviceKind::PowerSource => d.agent_activatable,
                _ => true,
            };
            if shown {
                out.push(if d.active { "on" } else { "off" }.to_string());
            }
        }
    }
    if let Some(open) = w.door_open(id) {
        out.push(if open { "open" } else { "closed" }.to_string());
    }
    if o.container == ContainerKind::Closeable {
        out.push(if o.open { "open" } else { "closed" }.to_string());
    }
    if o.burning.is_some() {
        out.push("on fire".to_string());
    }
    if let Some(p) = &o.plane {
        out.push(format!("surface: {}", w.material(p.surface).name));
        if let Some(&load) = w.children(id).first() {
            let pct = libm::round(p.position * 100.0) as i64;
            out.push(format!(
                "{} is {pct}% of the way down the plane",
                with_article(w, load)
            ));
        }
    }
    if let (Some(l), Some(g)) = (&o.life, &o.genotype) {
        let s = &w.species[l.species];
        if s.kind == LifeKind::Plant
            && l.stage >= plant_stage::ADULT
            && l.stage < plant_stage::DEAD
        {
            for t in &s.traits {
                if let Ok(v) = phenotype(g, t) {
                    out.push(format!("{}: {v}", t.name));
                }
            }
        }
    }
    out
}

pub fn object_line(w: &World, id: ObjId) -> String {
    let mut s = with_article(w, id);
    let a = annotations(w, id);
    if !a.is_empty() {
        s.push_str(" (");
        s.push_str(&a.join(", "));
        s.push(')');
    }
    s
}

fn render_tree(w: &World, id: ObjId, depth: usize, out: &mut Vec<String>) {
    let mut line = "\t".repeat(depth);
    line.push_str(&object_line(w, id));
    let o = w.obj(id);
    let shown: &[ObjId] = if o.is_open_container() && id != w.agent {
        w.children(id)
    } else {
        &[]
    };
    if !shown.is_empty() {
        line.push_str(", containing:");
    }
    out.push(line);
    for &c in shown {
        render_tree(w, c, depth + 1, out);
    }
}

/// The "look around" text for the agent's room.
pub fn describe_room(w: &World) -> String {
    let r = w.agent_room();
    let room = w.rooms[r];
    let mut lines = Vec::new();
    lines.push(format!(
        "This room is called the {}. In it, you see:",
        w.room_name(r)
    ));
    let mut doors = Vec::new();
    for &c in w.children(room) {
        if w.obj(c).door.is_some() {
            doors.push(c);
        } else {
            render_tree(w, c, 1, &mut lines);
        }
    }
    if !doors.is_empty() {
        lines.push("You also see:".to_string());
        for d in doors {
            lines.push(format!("\t{}", object_line(w, d)));
        }
    }
    lines.join("\n")
}

pub fn describe_inventory(w: &World) -> String {
    let mut lines = alloc::vec![String::from("In your inventory, you see:")];
    let ch = w.children(w.inventory);
    if ch.is_empty() {
        lines.push("\tnothing".to_string());
    }
    for &c in ch {
        render_tree(w, c, 1, &mut lines);
    }
    lines.join("\n")
}

/// "look at": the object with its visible contents and its connections.
pub fn describe_object(w: &World, id: ObjId) -> Result<String, WorldError> {
    if !w.visible_set().contains(&id) {
        return Err(WorldError::NotVisible);
    }
    let mut lines = Vec::new();
    render_tree(w, id, 0, &mut lines);
    for (t, other, ot) in w.links_of(id) {
        lines.push(format!(
            "its {} is connected to the {} {}",
            t.name(),
            display_name(w, other),
            ot.name()
        ));
    }
    if let Some(d) = &w.obj(id).device {
        if d.kind == DeviceKind::Stopwatch {
            if let Some(start) = d.started_at {
                lines.push(format!("it reads {} ticks", w.tick - start));
            }
        }
    }
    Ok(lines.join("\n"))
}

/// "look in": the contents of a container.
pub fn describe_contents(w: &World, id: ObjId) -> Result<String, WorldError> {
    if !w.visible_set().contains(&id) {
        return Err(WorldError::NotVisible);
    }
    let o = w.obj(id);
    let name = display_name(w, id);
    if !o.is_container() {
        return Err(WorldError::NotAContainer(name));
    }
    if !o.is_open_container() {
        return Err(WorldError::ContainerClosed(name));
    }
    let mut lines = alloc::vec![format!("In the {name}, you see:")];
    if w.children(id).is_empty() {
        lines.push("\tnothing".to_string());
    }
    for &c in w.children(id) {
        render_tree(w, c, 1, &mut lines);
    }
    Ok(lines.join("\n"))
}

/// Thermometer reading, rounded to whole degrees.
pub fn thermometer_reading(t: f64) -> String {
    let r = libm::round(t) as i64;
    format!("the thermometer measures a temperature of {r} degrees celsius")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    fn kitchen_world() -> (World, ObjId) {
        let c = Catalog::builtin();
        let k = c.room_index("kitchen").unwrap();
        let w = World::new(c, 1, k, Simplifications::none());
        let room = w.rooms[k];
        (w, room)
    }

    #[test]
    fn room_lists_children_and_doors() {
        let (mut w, k) = kitchen_world();
        let fridge = w.spawn("fridge", k).unwrap();
        let table = w.spawn("table", k).unwrap();
        let cup = w.spawn("glass cup", table).unwrap();
        let water = w.material_id("water").unwrap();
        w.spawn_substance(water, cup, None);
        w.spawn("apple", fridge).unwrap();
        let text = describe_room(&w);
        let expected = "This room is called the kitchen. In it, you see:\n\
\ta fridge (on, closed)\n\
\ta table, containing:\n\
\t\ta glass cup, containing:\n\
\t\t\tsome water\n\
\tthe agent\n\
You also see:\n\
\ta door to hallway (closed)\n\
\ta door to bathroom (closed)\n\
\ta door to outside (closed)";
        // agent was created before the furniture, so it is listed first
        let expected = expected.replace(
            "\ta fridge (on, closed)\n\ta table, containing:\n\t\ta glass cup, containing:\n\t\t\tsome water\n\tthe agent",
            "\tthe agent\n\ta fridge (on, closed)\n\ta table, containing:\n\t\ta glass cup, containing:\n\t\t\tsome water",
        );
        assert_eq!(text, expected);
        assert!(!text.contains("apple"));
    }

    #[test]
    fn temperatures_are_not_described() {
        let (mut w, k) = kitchen_world();
        let stove = w.spawn("stove", k).unwrap();
        w.obj_mut(stove).device.as_mut().unwrap().active = true;
        let t = describe_object(&w, stove).unwrap();
        assert_eq!(t, "a stove (on)");
        assert!(!describe_room(&w).contains("degrees"));
    }

    #[test]
    fn active_bulb_shows_on() {
        let (mut w, k) = kitchen_world();
        let bulb = w.spawn("light bulb", k).unwrap();
        assert_eq!(object_line(&w, bulb), "a light bulb (off)");
        w.obj_mut(bulb).device.as_mut().unwrap().active = true;
        assert_eq!(object_line(&w, bulb), "a light bulb (on)");
    }

    #[test]
    fn reading_is_rounded() {
        assert_eq!(
            thermometer_reading(19.6),
            "the thermometer measures a temperature of 20 degrees celsius"
        );
        assert_eq!(
            thermometer_reading(-17.6),
            "the thermometer measures a temperature of -18 degrees celsius"
        );
    }

    #[test]
    fn empty_inventory() {
        let (w, _) = kitchen_world();
        assert_eq!(describe_inventory(&w), "In your inventory, you see:\n\tnothing");
    }
}
