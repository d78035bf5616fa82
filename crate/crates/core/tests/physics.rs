use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sciworld_core::catalog::Catalog;
use sciworld_core::engine::{self, electric, thermo};
use sciworld_core::exec;
use sciworld_core::object::{ElecRole, ObjId, Terminal};
use sciworld_core::parser::valid_actions;
use sciworld_core::referent::ViewIndex;
use sciworld_core::task::{generate, Simplifications};
use sciworld_core::world::World;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn conduction_closes_the_gap(ta in -50.0..1500.0f64, tb in -50.0..1500.0f64,
                                 ca in 0.0..=1.0f64, cb in 0.0..=1.0f64) {
        let (na, nb) = thermo::exchange(ta, tb, thermo::pair_rate(ca, cb));
        let mean = (ta + tb) / 2.0;
        prop_assert!((na - nb).abs() <= (ta - tb).abs() + 1e-9);
        prop_assert!((na + nb - ta - tb).abs() < 1e-6);
        // neither side crosses the mean
        prop_assert!((ta - mean) * (na - mean) >= -1e-9);
        prop_assert!((tb - mean) * (nb - mean) >= -1e-9);
    }
}

fn assert_phases(w: &World, ctx: &str) {
    for id in w.ids() {
        let o = w.obj(id);
        if let (Some(p), Some(m)) = (o.phase, w.material_of(id)) {
            assert_eq!(p, m.phase_at(o.temperature), "{ctx}: {} at {}", m.name, o.temperature);
        }
    }
}

#[test]
fn phases_match_temperature_after_every_tick() {
    let cat = Catalog::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ep in 0..100 {
        let t = &cat.tasks[ep % cat.tasks.len()];
        let var = rng.random_range(0..t.variations.len());
        let mut g = generate(cat.clone(), &t.id, var, ep as u64, Simplifications::easy()).unwrap();
        let w = &mut g.world;
        assert_phases(w, "start");
        for step in 0..50 {
            let acts = valid_actions(w, &ViewIndex::new(w));
            let a = acts[rng.random_range(0..acts.len())].action.clone();
            let r = exec::execute(w, &a, &g.description);
            for _ in 0..r.ticks {
                engine::tick(w);
                assert_phases(w, &format!("{} episode {ep} step {step}", t.id));
            }
        }
    }
}

/// Independent search: a consumer is powered iff some simple loop leaves a
/// live source by its anode, crosses only conducting objects (polarized ones
/// cathode first), and returns to the source's cathode.
fn brute_powered(w: &World, ids: &[ObjId]) -> BTreeSet<ObjId> {
    let conducts = |id: ObjId| {
        let o = w.obj(id);
        match o.electrical {
            Some(e) if e.role == ElecRole::Switch => {
                o.device.as_ref().is_some_and(|d| d.active && !d.broken)
            }
            Some(_) => true,
            None => w.material_of(id).is_some_and(|m| m.conductive),
        }
    };
    let other = |t: Terminal| match t {
        Terminal::Anode => Terminal::Cathode,
        Terminal::Cathode => Terminal::Anode,
        Terminal::One => Terminal::Two,
        Terminal::Two => Terminal::One,
    };
    fn dfs(
        w: &World,
        src: ObjId,
        at: (ObjId, Terminal),
        path: &mut Vec<ObjId>,
        out: &mut BTreeSet<ObjId>,
        conducts: &dyn Fn(ObjId) -> bool,
        other: &dyn Fn(Terminal) -> Terminal,
    ) {
        for (&(o, t), &(p, pt)) in &w.links {
            if (o, t) != at {
                continue;
            }
            if p == src {
                if pt == Terminal::Cathode {
                    out.extend(path.iter().copied().filter(|&m| {
                        w.obj(m).electrical.is_some_and(|e| e.role == ElecRole::Consumer)
                    }));
                }
                continue;
            }
            let pol = w.obj(p).electrical.is_some_and(|e| e.polarized);
            if path.contains(&p) || !conducts(p) || (pol && pt != Terminal::Cathode) {
                continue;
            }
            path.push(p);
            dfs(w, src, (p, other(pt)), path, out, conducts, other);
            path.pop();
        }
    }
    let mut out = BTreeSet::new();
    for &s in ids {
        let o = w.obj(s);
        let live = o.electrical.is_some_and(|e| e.role == ElecRole::Source)
            && o.device.as_ref().is_some_and(|d| d.active && !d.broken);
        if live {
            dfs(w, s, (s, Terminal::Anode), &mut Vec::new(), &mut out, &conducts, &other);
        }
    }
    out
}

const PARTS: [&str; 8] = [
    "battery", "light bulb", "motor", "buzzer", "wire", "switch", "metal fork", "plastic fork",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn circuit_matches_brute_force(seed in any::<u64>()) {
        let cat = Catalog::builtin();
        let k = cat.room_index("workshop").unwrap();
        let mut w = World::new(cat, seed, k, Simplifications::none());
        let room = w.rooms[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=12);
        let ids: Vec<ObjId> = (0..n)
            .map(|i| {
                let kind = if i == 0 { "battery" } else { PARTS[rng.random_range(0..PARTS.len())] };
                w.spawn(kind, room).unwrap()
            })
            .collect();
        for &id in &ids {
            if let Some(d) = w.obj_mut(id).device.as_mut() {
                if rng.random_bool(0.5) { d.active = !d.active; }
            }
        }
        if rng.random_bool(0.7) {
            let mut ring = ids.clone();
            for i in (1..ring.len()).rev() {
                ring.swap(i, rng.random_range(0..=i));
            }
            if let Some(i) = ring.iter().position(|&x| w.obj(x).kind == "battery") {
                ring.swap(0, i);
            }
            ring.truncate(rng.random_range(2..=n));
            for i in 0..ring.len() {
                let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
                let polar = w.obj(b).electrical.is_some_and(|e| e.polarized);
                let tb = (polar && i + 1 < ring.len() && rng.random_bool(0.8)).then_some(Terminal::Cathode);
                let _ = w.connect(a, None, b, tb);
            }
        }
        for _ in 0..rng.random_range(0..n) {
            let (a, b) = (ids[rng.random_range(0..n)], ids[rng.random_range(0..n)]);
            let pick = |rng: &mut ChaCha8Rng, id: ObjId| {
                rng.random_bool(0.5).then(|| w.terminals(id)[rng.random_range(0..2)])
            };
            let (ta, tb) = (pick(&mut rng, a), pick(&mut rng, b));
            let _ = w.connect(a, ta, b, tb);
        }
        electric::update(&mut w);
        let got: BTreeSet<ObjId> = w.powered.keys().copied().collect();
        prop_assert_eq!(got, brute_powered(&w, &ids));
    }
}
