//! Heuristic knowledge-graph triples from rendered room and inventory text.
//!
//! Indentation gives containment; parenthesized markers give properties;
//! doors listed under "You also see" give exits. Lines that match nothing are
//! skipped.

use std::sync::LazyLock;

use regex::Regex;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: String,
    pub relation: String,
    pub object: String,
}

impl Triple {
    pub fn new(s: &str, r: &str, o: &str) -> Triple {
        Triple {
            subject: s.to_string(),
            relation: r.to_string(),
            object: o.to_string(),
        }
    }
}

static ROOM: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^This room is called the (.+)\. In it, you see:$").unwrap());
static ITEM: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(\t+)(?:an?|some|the) (.+?)(?: \(([^()]*)\))?(, containing:)?$").unwrap()
});
static DOOR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^door to (.+)$").unwrap());
static KEYED: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^([a-z ]+): (.+)$").unwrap());
static SLIDE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^(?:an?|some|the) (.+) is (\d+% of the way down the plane)$").unwrap());

pub const INVENTORY: &str = "inventory";

fn properties(name: &str, markers: &str, out: &mut Vec<Triple>) {
    for m in markers.split(", ") {
        if let Some(c) = SLIDE.captures(m) {
            out.push(Triple::new(&c[1], "position", &c[2]));
            out.push(Triple::new(name, "holds", &c[1]));
        } else if let Some(c) = KEYED.captures(m) {
            out.push(Triple::new(name, &c[1], &c[2]));
        } else {
            out.push(Triple::new(name, "is", m));
        }
    }
}

/// Triples from one block whose unindented header names the root.
fn block(text: &str, out: &mut Vec<Triple>) {
    let mut lines = text.lines();
    let Some(head) = lines.next() else { return };
    let root = if let Some(c) = ROOM.captures(head) {
        c[1].to_string()
    } else if head.starts_with("In your inventory") {
        INVENTORY.to_string()
    } else {
        return;
    };
    let mut exits = false;
    let mut stack = vec![root.clone()];
    for line in lines {
        if line == "You also see:" {
            exits = true;
            continue;
        }
        let Some(c) = ITEM.captures(line) else { continue };
        let depth = c[1].len();
        let name = c[2].to_string();
        if exits {
            if let Some(d) = DOOR.captures(&name) {
                out.push(Triple::new(&root, "exit", &d[1]));
            }
        } else {
            if depth > stack.len() {
                continue;
            }
            stack.truncate(depth);
            out.push(Triple::new(&stack[depth - 1], "contains", &name));
            stack.push(name.clone());
        }
        if let Some(m) = c.get(3) {
            properties(&name, m.as_str(), out);
        }
    }
}

pub fn extract(look_text: &str, inventory_text: &str) -> Vec<Triple> {
    let mut out = Vec::new();
    block(look_text, &mut out);
    block(inventory_text, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottle_holds_water() {
        let look = "This room is called the kitchen. In it, you see:\n\ta table, containing:\n\t\ta glass bottle, containing:\n\t\t\tsome water\n\ta stove (off)\nYou also see:\n\ta door to hallway (open)";
        let t = extract(look, "In your inventory, you see:\n\tnothing");
        assert!(t.contains(&Triple::new("glass bottle", "contains", "water")));
        assert!(t.contains(&Triple::new("kitchen", "contains", "table")));
        assert!(t.contains(&Triple::new("stove", "is", "off")));
        assert!(t.contains(&Triple::new("kitchen", "exit", "hallway")));
        assert!(t.contains(&Triple::new("door to hallway", "is", "open")));
    }

    #[test]
    fn empty_room_has_only_structure() {
        let look = "This room is called the hallway. In it, you see:\nYou also see:\n\ta door to kitchen (closed)";
        let t = extract(look, "In your inventory, you see:\n\tnothing");
        assert_eq!(
            t,
            [
                Triple::new("hallway", "exit", "kitchen"),
                Triple::new("door to kitchen", "is", "closed")
            ]
        );
    }

    #[test]
    fn plane_and_traits() {
        let look = "This room is called the workshop. In it, you see:\n\tan inclined plane A (surface: wood, a block is 60% of the way down the plane), containing:\n\t\ta block\n\ta pea plant (flower color: purple)";
        let t = extract(look, "");
        assert!(t.contains(&Triple::new("inclined plane A", "surface", "wood")));
        assert!(t.contains(&Triple::new("block", "position", "60% of the way down the plane")));
        assert!(t.contains(&Triple::new("pea plant", "flower color", "purple")));
    }
}
