//! The object tree: every entity in the house, its containment parent, and the
//! global state the engines share (door states, electrical links, tick counter,
//! random stream).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;

use crate::catalog::{Catalog, LifeKind, ObjectDef, Species};
use crate::engine::genetics::Genotype;
use crate::error::WorldError;
use crate::material::{Material, MaterialId};
use crate::object::{
    ContainerKind, Device, Electrical, LifeState, ObjId, Phase, SimObject, Terminal,
};
use crate::referent;
use crate::rng;
use crate::task::simplify::Simplifications;

#[derive(Clone, Debug, PartialEq)]
struct Node {
    obj: SimObject,
    parent: Option<ObjId>,
    /// Sorted by id.
    children: Vec<ObjId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct World {
    pub catalog: Arc<Catalog>,
    /// Per-world copy of the material table; masked variations append entries.
    pub materials: Vec<Material>,
    pub species: Vec<Species>,
    nodes: Vec<Option<Node>>,
    /// Room objects, indexed like `catalog.rooms`.
    pub rooms: Vec<ObjId>,
    pub doors_open: Vec<bool>,
    pub agent: ObjId,
    pub inventory: ObjId,
    /// Symmetric terminal links: both directions are stored.
    pub links: BTreeMap<(ObjId, Terminal), (ObjId, Terminal)>,
    /// Consumers powered this tick; the value tells whether a renewable source
    /// is on the powering loop.
    pub powered: BTreeMap<ObjId, bool>,
    pub tick: u64,
    pub rng: ChaCha8Rng,
    pub flags: Simplifications,
}

impl World {
    /// An empty house: ten rooms, their doors, and the agent in `start_room`.
    pub fn new(catalog: Arc<Catalog>, seed: u64, start_room: usize, flags: Simplifications) -> World {
        let mut w = World {
            materials: catalog.materials.clone(),
            species: catalog.species.clone(),
            nodes: Vec::new(),
            rooms: Vec::new(),
            doors_open: alloc::vec![flags.open_doors; catalog.doors.len()],
            agent: ObjId(0),
            inventory: ObjId(0),
            links: BTreeMap::new(),
            powered: BTreeMap::new(),
            tick: 0,
            rng: rng::stream(seed, "world"),
            flags,
            catalog,
        };
        let cat = w.catalog.clone();
        for (i, r) in cat.rooms.iter().enumerate() {
            let id = w.alloc_id();
            let mut o = SimObject::bare(id, "room");
            o.name = Some(r.name.clone());
            o.room = Some(i);
            o.container = ContainerKind::Open;
            o.temperature = r.ambient;
            w.insert(o, None);
            w.rooms.push(id);
        }
        for (i, r) in cat.rooms.iter().enumerate() {
            for (edge, other) in cat.neighbors(i) {
                let id = w.alloc_id();
                let mut o = SimObject::bare(id, "door");
                o.name = Some(format!("door to {}", cat.rooms[other].name));
                o.door = Some(edge);
                o.temperature = r.ambient;
                o.categories.push("door".to_string());
                let room = w.rooms[i];
                w.insert(o, Some(room));
            }
        }
        let room = w.rooms[start_room];
        let agent = w.alloc_id();
        let mut a = SimObject::bare(agent, "agent");
        a.temperature = cat.rooms[start_room].ambient;
        a.container = ContainerKind::Open;
        w.insert(a, Some(room));
        let inv = w.alloc_id();
        let mut i = SimObject::bare(inv, "inventory");
        i.container = ContainerKind::Open;
        i.temperature = cat.rooms[start_room].ambient;
        w.insert(i, Some(agent));
        w.agent = agent;
        w.inventory = inv;
        w
    }

    fn alloc_id(&mut self) -> ObjId {
        let id = ObjId(self.nodes.len() as u32);
        self.nodes.push(None);
        id
    }

    fn insert(&mut self, obj: SimObject, parent: Option<ObjId>) {
        let id = obj.id;
        self.nodes[id.0 as usize] = Some(Node {
            obj,
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            let ch = &mut self.node_mut(p).children;
            let pos = ch.binary_search(&id).unwrap_or_else(|e| e);
            ch.insert(pos, id);
        }
    }

    fn node(&self, id: ObjId) -> &Node {
        self.nodes
            .get(id.0 as usize)
            .and_then(Option::as_ref)
            .expect("live object id")
    }

    fn node_mut(&mut self, id: ObjId) -> &mut Node {
        self.nodes
            .get_mut(id.0 as usize)
            .and_then(Option::as_mut)
            .expect("live object id")
    }

    pub fn exists(&self, id: ObjId) -> bool {
        matches!(self.nodes.get(id.0 as usize), Some(Some(_)))
    }

    pub fn get(&self, id: ObjId) -> Option<&SimObject> {
        self.nodes.get(id.0 as usize)?.as_ref().map(|n| &n.obj)
    }

    /// Panics on a dead id; use [`World::get`] when the id may be stale.
    pub fn obj(&self, id: ObjId) -> &SimObject {
        &self.node(id).obj
    }

    pub fn obj_mut(&mut self, id: ObjId) -> &mut SimObject {
        &mut self.node_mut(id).obj
    }

    pub fn parent(&self, id: ObjId) -> Option<ObjId> {
        self.node(id).parent
    }

    pub fn children(&self, id: ObjId) -> &[ObjId] {
        &self.node(id).children
    }

    /// Every live object id in increasing order.
    pub fn ids(&self) -> impl Iterator<Item = ObjId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.is_some())
            .map(|(i, _)| ObjId(i as u32))
    }

    pub fn len(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All objects below `id`, depth first in id order.
    pub fn descendants(&self, id: ObjId) -> Vec<ObjId> {
        let mut out = Vec::new();
        let mut stack: Vec<ObjId> = self.children(id).iter().rev().copied().collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children(x).iter().rev());
        }
        out
    }

    pub fn is_descendant(&self, id: ObjId, of: ObjId) -> bool {
        let mut cur = self.parent(id);
        while let Some(p) = cur {
            if p == of {
                return true;
            }
            cur = self.parent(p);
        }
        false
    }

    /// The room an object is in, following parents to the root.
    pub fn room_of(&self, id: ObjId) -> Option<usize> {
        let mut cur = id;
        loop {
            if let Some(r) = self.obj(cur).room {
                return Some(r);
            }
            cur = self.parent(cur)?;
        }
    }

    pub fn agent_room(&self) -> usize {
        self.room_of(self.agent).expect("agent is in a room")
    }

    pub fn material(&self, id: MaterialId) -> &Material {
        &self.materials[id.0 as usize]
    }

    pub fn material_id(&self, name: &str) -> Option<MaterialId> {
        self.materials
            .iter()
            .position(|m| m.name == name)
            .map(|i| MaterialId(i as u16))
    }

    pub fn add_material(&mut self, m: Material) -> MaterialId {
        self.materials.push(m);
        MaterialId((self.materials.len() - 1) as u16)
    }

    pub fn material_of(&self, id: ObjId) -> Option<&Material> {
        self.obj(id).material.map(|m| self.material(m))
    }

    pub fn species_of(&self, id: ObjId) -> Option<&Species> {
        self.obj(id).life.as_ref().map(|l| &self.species[l.species])
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s.name == name)
    }

    pub fn ambient(&self, room: usize) -> f64 {
        self.catalog.rooms[room].ambient
    }

    pub fn room_name(&self, room: usize) -> &str {
        &self.catalog.rooms[room].name
    }

    pub fn door_open(&self, id: ObjId) -> Option<bool> {
        self.obj(id).door.map(|e| self.doors_open[e])
    }

    // --- construction ------------------------------------------------------

    fn instantiate(&mut self, def: &ObjectDef, temperature: f64) -> SimObject {
        let id = self.alloc_id();
        let mut o = SimObject::bare(id, &def.name);
        o.material = def.material.as_deref().and_then(|m| self.material_id(m));
        o.temperature = temperature;
        o.container = def.container;
        o.open = def.container == ContainerKind::Closeable && self.flags.open_containers;
        o.vessel = def.vessel;
        o.portable = def.portable;
        o.edible = def.edible;
        o.flushable = def.flushable;
        o.readable = def.readable.clone();
        o.use_kind = def.use_kind;
        o.categories = def.categories.clone();
        o.device = def.device.as_ref().map(|d| Device {
            kind: d.kind,
            active: d.active,
            set_temperature: d.temperature,
            rate: d.rate,
            condition: d.condition,
            agent_activatable: d.agent_activatable,
            broken: false,
            started_at: None,
        });
        o.electrical = def.electrical.as_ref().map(|e| Electrical {
            polarized: e.polarized,
            role: e.role,
            renewable: e.renewable,
        });
        if def.name == "flower pot" && self.flags.self_watering {
            o.self_watering = true;
        }
        o
    }

    fn spawn_temperature(&self, parent: ObjId) -> f64 {
        // Start at equilibrium with the surroundings.
        let mut cur = Some(parent);
        while let Some(p) = cur {
            let o = self.obj(p);
            if let Some(d) = &o.device {
                if d.kind.is_heat() && d.active && !d.broken {
                    return d.set_temperature;
                }
            }
            if let Some(r) = o.room {
                return self.ambient(r);
            }
            cur = self.parent(p);
        }
        self.catalog.physics.default_temperature
    }

    /// Creates a catalog object inside `parent`.
    pub fn spawn(&mut self, kind: &str, parent: ObjId) -> Result<ObjId, String> {
        let cat = self.catalog.clone();
        let def = cat.object(kind).ok_or_else(|| format!("unknown object type {kind}"))?;
        let t = self.spawn_temperature(parent);
        let o = self.instantiate(def, t);
        let id = o.id;
        self.insert(o, Some(parent));
        Ok(id)
    }

    /// Creates a substance of `material`; its phase follows `temperature`.
    pub fn spawn_substance(&mut self, material: MaterialId, parent: ObjId, temperature: Option<f64>) -> ObjId {
        let cat = self.catalog.clone();
        let def = cat.object("substance").expect("substance type");
        let t = temperature.unwrap_or_else(|| self.spawn_temperature(parent));
        let mut o = self.instantiate(def, t);
        o.material = Some(material);
        o.phase = Some(self.material(material).phase_at(t));
        let id = o.id;
        self.insert(o, Some(parent));
        id
    }

    /// Creates a plant or animal of species `species` at `stage`.
    pub fn spawn_living(&mut self, species: usize, stage: usize, parent: ObjId) -> ObjId {
        let kind = match self.species[species].kind {
            LifeKind::Plant => "plant",
            LifeKind::Animal => "animal",
        };
        let cat = self.catalog.clone();
        let def = cat.object(kind).expect("living types");
        let t = self.spawn_temperature(parent);
        let mut o = self.instantiate(def, t);
        o.categories.push(String::from(kind));
        if !self.species[species].traits.is_empty() {
            o.genotype = Some(Genotype::homozygous(&self.species[species].traits, &[]));
        }
        o.life = Some(LifeState::new(species, stage));
        let id = o.id;
        self.insert(o, Some(parent));
        id
    }

    // --- mutation ------------------------------------------------------------

    /// Removes every terminal link touching `id`.
    pub fn disconnect_all(&mut self, id: ObjId) -> usize {
        let mine: Vec<(ObjId, Terminal)> = self
            .links
            .keys()
            .filter(|(o, _)| *o == id)
            .copied()
            .collect();
        for k in &mine {
            if let Some(other) = self.links.remove(k) {
                self.links.remove(&other);
            }
        }
        mine.len()
    }

    /// Moves without any precondition checks; breaks the mover's electrical links.
    pub fn relocate(&mut self, id: ObjId, dest: ObjId) {
        if self.parent(id) == Some(dest) {
            return;
        }
        if let Some(p) = self.parent(id) {
            let ch = &mut self.node_mut(p).children;
            if let Ok(pos) = ch.binary_search(&id) {
                ch.remove(pos);
            }
        }
        self.node_mut(id).parent = Some(dest);
        let ch = &mut self.node_mut(dest).children;
        let pos = ch.binary_search(&id).unwrap_or_else(|e| e);
        ch.insert(pos, id);
        self.disconnect_all(id);
    }

    /// Deletes `id` and its whole subtree.
    pub fn remove(&mut self, id: ObjId) {
        for d in self.descendants(id) {
            self.disconnect_all(d);
            self.nodes[d.0 as usize] = None;
        }
        self.disconnect_all(id);
        if let Some(p) = self.parent(id) {
            let ch = &mut self.node_mut(p).children;
            if let Ok(pos) = ch.binary_search(&id) {
                ch.remove(pos);
            }
        }
        self.nodes[id.0 as usize] = None;
    }

    /// Deletes `id` but hands its children to its parent.
    pub fn remove_keep_contents(&mut self, id: ObjId) {
        if let Some(p) = self.parent(id) {
            for c in self.children(id).to_vec() {
                self.relocate(c, p);
            }
        }
        self.remove(id);
    }

    /// Agent-facing move with the containment rules of the `move` action.
    pub fn move_object(&mut self, id: ObjId, dest: ObjId) -> Result<(), WorldError> {
        let visible = self.visible_set();
        if !self.exists(id) || !self.exists(dest) {
            return Err(WorldError::NotVisible);
        }
        let dest_is_room = self.obj(dest).is_room();
        if !visible.contains(&id) || !(visible.contains(&dest) || dest == self.rooms[self.agent_room()]) {
            return Err(WorldError::NotVisible);
        }
        let name = referent::display_name(self, id);
        if !self.obj(id).portable {
            return Err(WorldError::NotPortable(name));
        }
        if id == dest || self.is_descendant(dest, id) {
            return Err(WorldError::WouldCycle(name));
        }
        let d = self.obj(dest);
        if !d.is_container() {
            return Err(WorldError::NotAContainer(referent::display_name(self, dest)));
        }
        if !d.is_open_container() {
            return Err(WorldError::ContainerClosed(referent::display_name(self, dest)));
        }
        if self.obj(id).is_fluid() && !(d.vessel) {
            return Err(WorldError::NeedsVessel(name));
        }
        if dest_is_room && self.obj(id).is_fluid() {
            return Err(WorldError::NeedsVessel(name));
        }
        if self.parent(id) == Some(dest) {
            return Err(WorldError::AlreadyThere(name));
        }
        self.relocate(id, dest);
        Ok(())
    }

    // --- visibility ----------------------------------------------------------

    /// Ids the agent can see: itself, its inventory contents, the contents of its
    /// room, and recursively the contents of open containers. Sorted by id.
    pub fn visible_objects(&self) -> Vec<ObjId> {
        let mut out = Vec::new();
        let room = self.rooms[self.agent_room()];
        let mut stack: Vec<ObjId> = self.children(room).to_vec();
        while let Some(x) = stack.pop() {
            out.push(x);
            if self.obj(x).is_open_container() {
                stack.extend(self.children(x));
            }
        }
        out.sort();
        out
    }

    pub fn visible_set(&self) -> BTreeSet<ObjId> {
        self.visible_objects().into_iter().collect()
    }

    /// The parser's view: visible objects minus the agent and its inventory bag.
    pub fn view(&self) -> Vec<ObjId> {
        self.visible_objects()
            .into_iter()
            .filter(|&i| i != self.agent && i != self.inventory)
            .collect()
    }

    /// Not inside any closed container below its room.
    pub fn unenclosed(&self, id: ObjId) -> bool {
        let mut cur = self.parent(id);
        while let Some(p) = cur {
            let o = self.obj(p);
            if o.is_room() {
                return true;
            }
            if !o.is_open_container() {
                return false;
            }
            cur = self.parent(p);
        }
        false
    }

    // --- electrical ----------------------------------------------------------

    /// The two terminals of any object: explicit for electrical components,
    /// virtual and unpolarized for everything else.
    pub fn terminals(&self, id: ObjId) -> [Terminal; 2] {
        Terminal::pair(self.obj(id).electrical.is_some_and(|e| e.polarized))
    }

    pub fn free_terminals(&self, id: ObjId) -> Vec<Terminal> {
        self.terminals(id)
            .into_iter()
            .filter(|t| !self.links.contains_key(&(id, *t)))
            .collect()
    }

    pub fn connect(
        &mut self,
        a: ObjId,
        ta: Option<Terminal>,
        b: ObjId,
        tb: Option<Terminal>,
    ) -> Result<(Terminal, Terminal), WorldError> {
        if a == b {
            return Err(WorldError::SelfConnection(referent::display_name(self, a)));
        }
        let pick = |w: &World, id: ObjId, t: Option<Terminal>| -> Result<Terminal, WorldError> {
            match t {
                Some(t) => {
                    if !w.terminals(id).contains(&t) {
                        return Err(WorldError::NoSuchTerminal(referent::display_name(w, id)));
                    }
                    if w.links.contains_key(&(id, t)) {
                        return Err(WorldError::TerminalOccupied);
                    }
                    Ok(t)
                }
                None => w
                    .free_terminals(id)
                    .first()
                    .copied()
                    .ok_or_else(|| WorldError::NoFreeTerminal(referent::display_name(w, id))),
            }
        };
        let ta = pick(self, a, ta)?;
        let tb = pick(self, b, tb)?;
        self.links.insert((a, ta), (b, tb));
        self.links.insert((b, tb), (a, ta));
        Ok((ta, tb))
    }

    pub fn links_of(&self, id: ObjId) -> Vec<(Terminal, ObjId, Terminal)> {
        self.terminals(id)
            .into_iter()
            .filter_map(|t| self.links.get(&(id, t)).map(|&(o, ot)| (t, o, ot)))
            .collect()
    }

    // --- checks ----------------------------------------------------------------

    /// Structural invariants: acyclic tree, parent/child agreement, sorted
    /// children, symmetric links and substance phases matching temperature.
    pub fn check_integrity(&self) -> Result<(), String> {
        for id in self.ids() {
            let n = self.node(id);
            match n.parent {
                None => {
                    if n.obj.room.is_none() {
                        return Err(format!("object {} has no parent", id.0));
                    }
                }
                Some(p) => {
                    if !self.exists(p) || !self.children(p).contains(&id) {
                        return Err(format!("object {} missing from its parent", id.0));
                    }
                }
            }
            if n.children.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("children of {} not sorted", id.0));
            }
            let mut seen = 0;
            let mut cur = n.parent;
            while let Some(p) = cur {
                seen += 1;
                if p == id || seen > self.nodes.len() {
                    return Err(format!("cycle through {}", id.0));
                }
                cur = self.node(p).parent;
            }
        }
        for (k, v) in &self.links {
            if self.links.get(v) != Some(k) {
                return Err(String::from("asymmetric link"));
            }
            if !self.exists(k.0) {
                return Err(String::from("link to removed object"));
            }
        }
        self.check_phases()
    }

    pub fn check_phases(&self) -> Result<(), String> {
        for id in self.ids() {
            let o = self.obj(id);
            if let (Some(p), Some(m)) = (o.phase, o.material) {
                let want: Phase = self.material(m).phase_at(o.temperature);
                if p != want {
                    return Err(format!(
                        "object {} is {:?} at {} but should be {:?}",
                        id.0, p, o.temperature, want
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn world() -> World {
        World::new(Catalog::builtin(), 1, 0, Simplifications::none())
    }

    fn kitchen(w: &World) -> ObjId {
        w.rooms[w.catalog.room_index("kitchen").unwrap()]
    }

    #[test]
    fn pick_up_puts_object_in_inventory() {
        let mut w = world();
        let k = kitchen(&w);
        let apple = w.spawn("apple", k).unwrap();
        w.move_object(apple, w.inventory).unwrap();
        assert_eq!(w.parent(apple), Some(w.inventory));
    }

    #[test]
    fn closed_container_rejects_and_hides() {
        let mut w = world();
        let k = kitchen(&w);
        let cup = w.spawn("cupboard", k).unwrap();
        let apple = w.spawn("apple", k).unwrap();
        assert!(matches!(w.move_object(apple, cup), Err(WorldError::ContainerClosed(_))));
        let inner = w.spawn("banana", cup).unwrap();
        assert!(!w.visible_set().contains(&inner));
        w.obj_mut(cup).open = true;
        assert!(w.visible_set().contains(&inner));
    }

    #[test]
    fn furniture_is_not_portable() {
        let mut w = world();
        let k = kitchen(&w);
        let t = w.spawn("table", k).unwrap();
        assert!(matches!(w.move_object(t, w.inventory), Err(WorldError::NotPortable(_))));
    }

    #[test]
    fn nested_open_jar_in_closed_cupboard_is_hidden() {
        let mut w = world();
        let k = kitchen(&w);
        let cup = w.spawn("cupboard", k).unwrap();
        let jar = w.spawn("glass jar", cup).unwrap();
        let water = w.spawn_substance(w.material_id("water").unwrap(), jar, None);
        let v = w.visible_set();
        assert!(!v.contains(&jar) && !v.contains(&water));
    }

    #[test]
    fn other_rooms_are_invisible() {
        let mut w = world();
        let bath = w.rooms[w.catalog.room_index("bathroom").unwrap()];
        let soap = w.spawn("apple", bath).unwrap();
        assert!(!w.visible_set().contains(&soap));
    }

    #[test]
    fn liquids_need_vessels() {
        let mut w = world();
        let k = kitchen(&w);
        let cup = w.spawn("glass cup", k).unwrap();
        let table = w.spawn("table", k).unwrap();
        let water = w.spawn_substance(w.material_id("water").unwrap(), cup, None);
        assert!(matches!(w.move_object(water, table), Err(WorldError::NeedsVessel(_))));
        assert!(matches!(w.move_object(water, w.inventory), Err(WorldError::NeedsVessel(_))));
    }

    #[test]
    fn no_cycles() {
        let mut w = world();
        let k = kitchen(&w);
        let a = w.spawn("glass cup", k).unwrap();
        let b = w.spawn("bowl", a).unwrap();
        assert!(matches!(w.move_object(a, b), Err(WorldError::WouldCycle(_))));
        assert!(matches!(w.move_object(a, a), Err(WorldError::WouldCycle(_))));
        w.check_integrity().unwrap();
    }

    #[test]
    fn moving_breaks_links() {
        let mut w = world();
        let k = kitchen(&w);
        let bat = w.spawn("battery", k).unwrap();
        let wire = w.spawn("wire", k).unwrap();
        w.connect(bat, Some(Terminal::Anode), wire, None).unwrap();
        assert_eq!(w.links.len(), 2);
        assert!(matches!(
            w.connect(bat, Some(Terminal::Anode), wire, None),
            Err(WorldError::TerminalOccupied)
        ));
        assert!(matches!(
            w.connect(bat, Some(Terminal::One), wire, None),
            Err(WorldError::NoSuchTerminal(_))
        ));
        w.move_object(wire, w.inventory).unwrap();
        assert!(w.links.is_empty());
    }

    #[test]
    fn removal_keeps_tree_consistent() {
        let mut w = world();
        let k = kitchen(&w);
        let a = w.spawn("glass cup", k).unwrap();
        let b = w.spawn("apple", a).unwrap();
        w.remove_keep_contents(a);
        assert_eq!(w.parent(b), Some(k));
        assert!(!w.exists(a));
        w.check_integrity().unwrap();
    }
}
