//! Object naming: display names, state-dependent referents, and the canonical
//! rendering that keeps every name in a view unambiguous.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::object::ObjId;
use crate::world::World;

/// The name used in descriptions.
pub fn display_name(w: &World, id: ObjId) -> String {
    let o = w.obj(id);
    if let Some(r) = o.room {
        return w.room_name(r).to_string();
    }
    if let (Some(p), Some(m)) = (o.phase, o.material) {
        return w.material(m).phase_name(p).to_string();
    }
    if let Some(l) = &o.life {
        return w.species[l.species].stages[l.stage].clone();
    }
    o.name.clone().unwrap_or_else(|| o.kind.clone())
}

/// Names an agent may use for the object, most specific first.
pub fn referents(w: &World, id: ObjId) -> Vec<String> {
    let o = w.obj(id);
    let mut out: Vec<String> = Vec::with_capacity(3);
    let mut push = |s: String| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    push(display_name(w, id));
    if let (Some(p), Some(m)) = (o.phase, o.material) {
        push(format!("{} {}", p.adjective(), w.material(m).name));
        push("substance".to_string());
    } else if let Some(l) = &o.life {
        let s = &w.species[l.species];
        push(s.name.clone());
        push(o.kind.clone());
    } else if o.room.is_none() && o.door.is_none() {
        push(o.kind.clone());
    }
    out
}

/// Referent lookup for one view, plus the canonical (unambiguous) rendering of
/// every object in it.
#[derive(Clone, Debug)]
pub struct ViewIndex {
    pub objects: Vec<ObjId>,
    pub room: ObjId,
    phrases: BTreeMap<String, Vec<ObjId>>,
    parent_names: BTreeMap<ObjId, String>,
    canonical: BTreeMap<ObjId, String>,
}

impl ViewIndex {
    pub fn new(w: &World) -> ViewIndex {
        let objects = w.view();
        let room = w.rooms[w.agent_room()];
        let mut phrases: BTreeMap<String, Vec<ObjId>> = BTreeMap::new();
        let mut parent_names = BTreeMap::new();
        let mut names = BTreeMap::new();
        for &id in &objects {
            for r in referents(w, id) {
                phrases.entry(r.to_lowercase()).or_default().push(id);
            }
            let p = w.parent(id).expect("non-room objects have parents");
            parent_names.insert(id, display_name(w, p).to_lowercase());
            names.insert(id, display_name(w, id));
        }
        phrases
            .entry(display_name(w, room).to_lowercase())
            .or_default()
            .push(room);
        let mut idx = ViewIndex {
            objects,
            room,
            phrases,
            parent_names,
            canonical: BTreeMap::new(),
        };
        let mut canonical = BTreeMap::new();
        for &id in &idx.objects {
            let n: &String = &names[&id];
            let cands = idx
                .phrases
                .get(&n.to_lowercase())
                .map(Vec::as_slice)
                .unwrap_or(&[]);
            let text = if cands.len() == 1 {
                n.clone()
            } else {
                let p = &idx.parent_names[&id];
                let pn = display_name(w, w.parent(id).expect("parent"));
                let q = format!("{n} (in {pn})");
                let same: Vec<ObjId> = cands
                    .iter()
                    .copied()
                    .filter(|c| idx.parent_names.get(c) == Some(p))
                    .collect();
                if same.len() == 1 {
                    q
                } else {
                    let k = same.iter().position(|&c| c == id).unwrap_or(0) + 1;
                    format!("{q} #{k}")
                }
            };
            canonical.insert(id, text);
        }
        canonical.insert(room, display_name(w, room));
        idx.canonical = canonical;
        idx
    }

    /// Canonical rendering; `None` for objects outside the view.
    pub fn name(&self, id: ObjId) -> Option<&str> {
        self.canonical.get(&id).map(String::as_str)
    }

    /// Every object a phrase may denote. Accepts bare referents,
    /// "name (in parent)" and "name (in parent) #k", in any letter case.
    pub fn resolve(&self, phrase: &str) -> Vec<ObjId> {
        let phrase = phrase.to_lowercase();
        let phrase = phrase.as_str();
        if let Some(v) = self.phrases.get(phrase) {
            return v.clone();
        }
        let (body, ordinal) = match phrase.rsplit_once(" #") {
            Some((b, k)) => match k.parse::<usize>() {
                Ok(k) if k >= 1 => (b, Some(k)),
                _ => return Vec::new(),
            },
            None => (phrase, None),
        };
        let Some(inner) = body.strip_suffix(')') else {
            return Vec::new();
        };
        let Some((name, parent)) = inner.split_once(" (in ") else {
            return Vec::new();
        };
        let Some(cands) = self.phrases.get(name) else {
            return Vec::new();
        };
        let same: Vec<ObjId> = cands
            .iter()
            .copied()
            .filter(|c| self.parent_names.get(c).map(String::as_str) == Some(parent))
            .collect();
        match ordinal {
            None => same,
            Some(k) => same.get(k - 1).map(|&x| alloc::vec![x]).unwrap_or_default(),
        }
    }
}
