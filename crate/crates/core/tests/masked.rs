//! Oracles must answer masked tasks by running the experiment: flipping the
//! hidden property after reset has to flip their answer.

use sciworld_core::catalog::Catalog;
use sciworld_core::env::Environment;
use sciworld_core::oracle;
use sciworld_core::task::Simplifications;
use sciworld_core::world::World;

type Mutation<'a> = &'a dyn Fn(&mut World, &Environment);

fn decision(task: &str, var: usize, mutate: Option<Mutation>) -> String {
    let cat = Catalog::builtin();
    let mut env = Environment::new(cat);
    let start = env.reset(task, var, 0, Simplifications::easy()).unwrap();
    if let Some(f) = mutate {
        let mut w = env.world().unwrap().clone();
        f(&mut w, &env);
        *env.world_mut().unwrap() = w;
    }
    oracle::solve(&mut env, start).unwrap();
    let verb = if task == "3-4" { "move" } else { "focus on" };
    env.history()
        .iter()
        .rev()
        .find(|h| h.input.starts_with(verb))
        .map(|h| h.input.clone())
        .unwrap()
}

fn masked_vars(task: &str) -> Vec<usize> {
    let cat = Catalog::builtin();
    let t = cat.task(task).unwrap();
    (0..t.variations.len())
        .filter(|&v| {
            let x = &t.variations[v];
            x.text("label").is_some() || x.text("mode") == Some("masked")
        })
        .collect()
}

#[test]
fn conductivity_answer_tracks_the_material() {
    let vars = masked_vars("3-4");
    assert!(!vars.is_empty());
    for v in vars {
        let flip = |w: &mut World, env: &Environment| {
            let t = env.bindings().unwrap()["target"][0];
            let m = w.obj(t).material.unwrap();
            w.materials[m.0 as usize].conductive ^= true;
        };
        let plain = decision("3-4", v, None);
        let flipped = decision("3-4", v, Some(&flip));
        assert_ne!(plain, flipped, "3-4 variation {v}");
    }
}

#[test]
fn friction_answer_tracks_the_surfaces() {
    let vars = masked_vars("9-3");
    assert!(!vars.is_empty());
    for v in vars {
        let swap = |w: &mut World, env: &Environment| {
            let ps = &env.bindings().unwrap()["planes"];
            let [a, b] = [ps[0], ps[1]].map(|p| w.obj(p).plane.as_ref().unwrap().surface.0 as usize);
            let fa = w.materials[a].friction;
            w.materials[a].friction = w.materials[b].friction;
            w.materials[b].friction = fa;
        };
        let plain = decision("9-3", v, None);
        let flipped = decision("9-3", v, Some(&swap));
        assert_ne!(plain, flipped, "9-3 variation {v}");
    }
}
