use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sciworld::triples::{extract, Triple, INVENTORY};
use sciworld_core::catalog::Catalog;
use sciworld_core::env::Environment;
use sciworld_core::object::ObjId;
use sciworld_core::referent::display_name;
use sciworld_core::task::Simplifications;
use sciworld_core::world::World;

fn tree(w: &World, parent: &str, id: ObjId, out: &mut Vec<Triple>) {
    let name = display_name(w, id);
    out.push(Triple::new(parent, "contains", &name));
    if id != w.agent && w.obj(id).is_open_container() {
        for &c in w.children(id) {
            tree(w, &name, c, out);
        }
    }
}

/// Containment read straight off the object tree.
fn expected(w: &World) -> Vec<Triple> {
    let r = w.agent_room();
    let mut out = Vec::new();
    for &c in w.children(w.rooms[r]) {
        if w.obj(c).door.is_none() {
            tree(w, w.room_name(r), c, &mut out);
        }
    }
    for &c in w.children(w.inventory) {
        tree(w, INVENTORY, c, &mut out);
    }
    out.sort();
    out
}

#[test]
fn containment_triples_match_the_tree() {
    let cat = Catalog::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut env = Environment::new(cat.clone());
    for i in 0..100u64 {
        let t = &cat.tasks[rng.random_range(0..cat.tasks.len())];
        let mut o = env.reset(&t.id, rng.random_range(0..t.variations.len()), i, Simplifications::easy()).unwrap();
        for _ in 0..rng.random_range(0..20) {
            if o.done {
                break;
            }
            let acts = env.valid_actions().unwrap();
            o = env.step(&acts[rng.random_range(0..acts.len())].text).unwrap();
        }
        let mut got: Vec<Triple> = extract(&o.look_text, &o.inventory_text)
            .into_iter()
            .filter(|t| t.relation == "contains")
            .collect();
        got.sort();
        assert_eq!(got, expected(env.world().unwrap()), "{} episode {i}", t.id);
    }
}
