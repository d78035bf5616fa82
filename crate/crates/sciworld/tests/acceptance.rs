//! One pass/fail line per acceptance criterion. Runs as a plain binary so the
//! lines always show up in `cargo test` output.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sciworld::eval::{self, Agent};
use sciworld::transcript;
use sciworld_core::catalog::Catalog;
use sciworld_core::engine::genetics::{punnett_cross, Allele, GenePair, Genotype};
use sciworld_core::engine::{self, electric, thermo};
use sciworld_core::env::Environment;
use sciworld_core::exec;
use sciworld_core::export::{records, returns_to_go, Format, Record, Transcript};
use sciworld_core::object::{ElecRole, ObjId, Terminal};
use sciworld_core::parser::{valid_actions, ParseOutcome, Parser};
use sciworld_core::referent::ViewIndex;
use sciworld_core::rng::stream;
use sciworld_core::task::{generate, split, Outcome, Simplifications, Split};
use sciworld_core::world::World;

const ORACLE_SEEDS: [u64; 3] = [0, 1, 2];
const MAX_STEPS: u32 = 100;
const RANDOM_EPISODES_4_2: usize = 500;
const RANDOM_EPISODES_OTHER: usize = 100;
const RANDOM_4_2_RANGE: (f64, f64) = (0.48, 0.78);
const RANDOM_MATTER_MAX: f64 = 0.05;
const RANDOM_OVERALL_MAX: f64 = 0.10;
const DETERMINISM_EPISODES: u64 = 100;
const DETERMINISM_ACTIONS: usize = 50;
const PARSER_STATES: u64 = 1000;
const CONDUCTION_PAIRS: usize = 10_000;
const PHASE_EPISODES: usize = 100;
const CIRCUIT_WORLDS: u64 = 1000;
const CIRCUIT_MAX_PARTS: usize = 12;
const CROSS_DRAWS: usize = 10_000;
const CHI_SQUARE_P_MIN: f64 = 0.01;
const SPLIT_TOLERANCE: f64 = 1.0;
const EPS: f64 = 1e-9;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn oracle(cat: &Arc<Catalog>) -> Check {
    let mut n = 0;
    let mut max_steps = 0;
    for t in &cat.tasks {
        for v in 0..t.variations.len() {
            for s in ORACLE_SEEDS {
                let tr = eval::run_episode(cat, Agent::Oracle, &t.id, v, s, Simplifications::easy())
                    .map_err(|e| e.to_string())?;
                let steps = tr.steps.last().map_or(0, |x| x.observation.steps);
                if tr.final_score != 1.0 || tr.outcome != Outcome::Success || steps > MAX_STEPS {
                    return Err(format!("{} var {v} seed {s}: score {} in {steps} steps", t.id, tr.final_score));
                }
                max_steps = max_steps.max(steps);
                n += 1;
            }
        }
    }
    Ok(format!("{n} episodes all 1.000, longest {max_steps} steps"))
}

fn random_valid(cat: &Arc<Catalog>) -> Check {
    let mut rows = Vec::new();
    for t in &cat.tasks {
        let n = if t.id == "4-2" { RANDOM_EPISODES_4_2 } else { RANDOM_EPISODES_OTHER };
        rows.extend(
            eval::evaluate(cat, Agent::RandomValid, &[t], Split::Test, n, 0, Simplifications::easy())
                .map_err(|e| e.to_string())?,
        );
    }
    let mean = |id: &str| rows.iter().find(|r| r.task == id).unwrap().mean_score;
    let m42 = mean("4-2");
    let matter: Vec<f64> = ["1-1", "1-2", "1-3", "1-4"].map(mean).to_vec();
    let all = eval::overall(&rows);
    let episodes: usize = rows.iter().map(|r| r.episodes).sum();
    let msg = format!(
        "{episodes} test episodes; 4-2 {m42:.3}, 1-x {:?}, overall {all:.3}",
        matter.iter().map(|m| format!("{m:.3}")).collect::<Vec<_>>()
    );
    let ok = (RANDOM_4_2_RANGE.0..=RANDOM_4_2_RANGE.1).contains(&m42)
        && matter.iter().all(|&m| m <= RANDOM_MATTER_MAX)
        && all <= RANDOM_OVERALL_MAX;
    if ok { Ok(msg) } else { Err(msg) }
}

fn random_transcript(cat: &Arc<Catalog>, i: u64) -> Transcript {
    let t = &cat.tasks[i as usize % cat.tasks.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(i);
    let var = rng.random_range(0..t.variations.len());
    let mut env = Environment::new(cat.clone());
    let start = env.reset(&t.id, var, i, Simplifications::easy()).unwrap();
    for _ in 0..DETERMINISM_ACTIONS {
        if env.is_done() {
            break;
        }
        let acts = env.valid_actions().unwrap();
        let a = acts[rng.random_range(0..acts.len())].text.clone();
        env.step(&a).unwrap();
    }
    Transcript::from_env(&env, start).unwrap()
}

fn determinism(cat: &Arc<Catalog>) -> Check {
    for i in 0..DETERMINISM_EPISODES {
        let a = transcript::to_line(&random_transcript(cat, i));
        let b = transcript::to_line(&random_transcript(cat, i));
        if a != b {
            return Err(format!("episode {i} differs between runs"));
        }
        let t: Transcript = serde_json::from_str(&a).unwrap();
        transcript::replay(cat.clone(), &t).map_err(|e| e.to_string())?;
    }
    Ok(format!("{DETERMINISM_EPISODES} episodes x {DETERMINISM_ACTIONS} actions byte-identical and replayable"))
}

fn parser_round_trip(cat: &Arc<Catalog>) -> Check {
    let mut checked = 0;
    for i in 0..PARSER_STATES {
        let mut rng = ChaCha8Rng::seed_from_u64(i ^ 0xface);
        let t = &cat.tasks[rng.random_range(0..cat.tasks.len())];
        let mut flags = Simplifications::easy();
        flags.teleport = rng.random_bool(0.5);
        let mut env = Environment::new(cat.clone());
        env.reset(&t.id, rng.random_range(0..t.variations.len()), i, flags).unwrap();
        for _ in 0..rng.random_range(0..40) {
            if env.is_done() {
                break;
            }
            let acts = env.valid_actions().unwrap();
            env.step(&acts[rng.random_range(0..acts.len())].text).unwrap();
        }
        let w = env.world().unwrap();
        let idx = ViewIndex::new(w);
        let parser = Parser::new(cat, flags.teleport);
        for va in env.valid_actions().unwrap() {
            match parser.parse(w, &idx, &va.text) {
                ParseOutcome::Parsed(p) if p.action == va.action => checked += 1,
                other => return Err(format!("state {i}: {:?} -> {other:?}", va.text)),
            }
        }
    }
    Ok(format!("{PARSER_STATES} states, {checked} actions parse back uniquely"))
}

fn conduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..CONDUCTION_PAIRS {
        let (ta, tb) = (rng.random_range(-100.0..1600.0), rng.random_range(-100.0..1600.0));
        let k = thermo::pair_rate(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let (na, nb) = thermo::exchange(ta, tb, k);
        let mean = (ta + tb) / 2.0;
        let closes = (na - nb).abs() <= (ta - tb).abs() + EPS;
        let ordered = (ta - mean) * (na - mean) >= -EPS && (tb - mean) * (nb - mean) >= -EPS;
        if !closes || !ordered || (na + nb - ta - tb).abs() > 1e-6 {
            return Err(format!("({ta}, {tb}) k={k} -> ({na}, {nb})"));
        }
    }
    Ok(format!("{CONDUCTION_PAIRS} pairs: gap never grows, no overshoot, heat conserved"))
}

fn phases(cat: &Arc<Catalog>) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ticks = 0;
    for ep in 0..PHASE_EPISODES {
        let t = &cat.tasks[ep % cat.tasks.len()];
        let var = rng.random_range(0..t.variations.len());
        let mut g = generate(cat.clone(), &t.id, var, ep as u64, Simplifications::easy()).unwrap();
        let w = &mut g.world;
        for _ in 0..50 {
            let acts = valid_actions(w, &ViewIndex::new(w));
            let a = acts[rng.random_range(0..acts.len())].action.clone();
            let r = exec::execute(w, &a, &g.description);
            for _ in 0..r.ticks {
                engine::tick(w);
                ticks += 1;
                for id in w.ids() {
                    let o = w.obj(id);
                    if let (Some(p), Some(m)) = (o.phase, w.material_of(id)) {
                        if p != m.phase_at(o.temperature) {
                            return Err(format!("{} episode {ep}: {} {p:?} at {}", t.id, m.name, o.temperature));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{PHASE_EPISODES} episodes, {ticks} ticks consistent"))
}

fn brute_powered(w: &World, ids: &[ObjId]) -> BTreeSet<ObjId> {
    fn conducts(w: &World, id: ObjId) -> bool {
        let o = w.obj(id);
        match o.electrical {
            Some(e) if e.role == ElecRole::Switch => o.device.as_ref().is_some_and(|d| d.active && !d.broken),
            Some(_) => true,
            None => w.material_of(id).is_some_and(|m| m.conductive),
        }
    }
    fn other(t: Terminal) -> Terminal {
        match t {
            Terminal::Anode => Terminal::Cathode,
            Terminal::Cathode => Terminal::Anode,
            Terminal::One => Terminal::Two,
            Terminal::Two => Terminal::One,
        }
    }
    fn dfs(w: &World, src: ObjId, at: (ObjId, Terminal), path: &mut Vec<ObjId>, out: &mut BTreeSet<ObjId>) {
        for (&from, &(p, pt)) in &w.links {
            if from != at {
                continue;
            }
            if p == src {
                if pt == Terminal::Cathode {
                    out.extend(path.iter().filter(|&&m| {
                        w.obj(m).electrical.is_some_and(|e| e.role == ElecRole::Consumer)
                    }));
                }
                continue;
            }
            let pol = w.obj(p).electrical.is_some_and(|e| e.polarized);
            if path.contains(&p) || !conducts(w, p) || (pol && pt != Terminal::Cathode) {
                continue;
            }
            path.push(p);
            dfs(w, src, (p, other(pt)), path, out);
            path.pop();
        }
    }
    let mut out = BTreeSet::new();
    for &s in ids {
        let o = w.obj(s);
        if o.electrical.is_some_and(|e| e.role == ElecRole::Source)
            && o.device.as_ref().is_some_and(|d| d.active && !d.broken)
        {
            dfs(w, s, (s, Terminal::Anode), &mut Vec::new(), &mut out);
        }
    }
    out
}

fn circuits(cat: &Arc<Catalog>) -> Check {
    const PARTS: [&str; 8] = [
        "battery", "light bulb", "motor", "buzzer", "wire", "switch", "metal fork", "plastic fork",
    ];
    let k = cat.room_index("workshop").unwrap();
    let mut lit_worlds = 0;
    for seed in 0..CIRCUIT_WORLDS {
        let mut w = World::new(cat.clone(), seed, k, Simplifications::none());
        let room = w.rooms[k];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=CIRCUIT_MAX_PARTS);
        let ids: Vec<ObjId> = (0..n)
            .map(|i| {
                let kind = if i == 0 { "battery" } else { PARTS[rng.random_range(0..PARTS.len())] };
                w.spawn(kind, room).unwrap()
            })
            .collect();
        for &id in &ids {
            if let Some(d) = w.obj_mut(id).device.as_mut() {
                if rng.random_bool(0.3) {
                    d.active = !d.active;
                }
            }
        }
        if rng.random_bool(0.7) {
            // a ring through a shuffled subset, so many worlds close a loop
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
            let ta = rng.random_bool(0.5).then(|| w.terminals(a)[rng.random_range(0..2)]);
            let tb = rng.random_bool(0.5).then(|| w.terminals(b)[rng.random_range(0..2)]);
            let _ = w.connect(a, ta, b, tb);
        }
        electric::update(&mut w);
        let got: BTreeSet<ObjId> = w.powered.keys().copied().collect();
        let want = brute_powered(&w, &ids);
        if got != want {
            return Err(format!("world {seed}: engine {got:?} vs search {want:?}"));
        }
        lit_worlds += usize::from(!got.is_empty());
    }
    Ok(format!("{CIRCUIT_WORLDS} worlds agree ({lit_worlds} with a powered consumer)"))
}

fn genetics() -> Check {
    let g = || {
        Genotype(vec![GenePair {
            trait_name: "flower color".into(),
            alleles: [Allele::Dominant, Allele::Recessive],
        }])
    };
    let mut rng = stream(7, "acceptance cross");
    let mut counts = [0f64; 3];
    for _ in 0..CROSS_DRAWS {
        let c = punnett_cross(&g(), &g(), &mut rng).unwrap();
        let d = c.0[0].alleles.iter().filter(|&&a| a == Allele::Dominant).count();
        counts[2 - d] += 1.0;
    }
    let n = CROSS_DRAWS as f64;
    let chi: f64 = counts
        .iter()
        .zip([0.25, 0.5, 0.25])
        .map(|(o, p)| (o - p * n).powi(2) / (p * n))
        .sum();
    // chi-square with two degrees of freedom has survival exp(-x/2)
    let p = (-chi / 2.0).exp();
    let msg = format!("BB/Bb/bb = {counts:?}, chi2 {chi:.3}, p {p:.3}");
    if p > CHI_SQUARE_P_MIN { Ok(msg) } else { Err(msg) }
}

fn splits(cat: &Arc<Catalog>) -> Check {
    for t in &cat.tasks {
        let n = t.variations.len() as f64;
        let parts = [Split::Train, Split::Dev, Split::Test].map(|s| split::indices(t, s));
        for (p, share) in parts.iter().zip([0.5, 0.25, 0.25]) {
            if (p.len() as f64 - share * n).abs() > SPLIT_TOLERANCE {
                return Err(format!("{}: {} of {n} for share {share}", t.id, p.len()));
            }
        }
        if let Some(&i) = parts[0].iter().find(|&&i| t.variations[i].unseen) {
            return Err(format!("{}: unseen variation {i} in train", t.id));
        }
        let mut all: Vec<usize> = parts.concat();
        all.sort();
        if all != (0..t.variations.len()).collect::<Vec<_>>() {
            return Err(format!("{}: splits do not partition", t.id));
        }
    }
    Ok(format!("{} tasks split 50/25/25 within 1, unseen never in train", cat.tasks.len()))
}

fn export_goldens() -> Check {
    let ts = common::corpus();
    let mut text = Vec::new();
    transcript::write(&mut text, &ts).unwrap();
    common::check_golden("corpus.jsonl", &String::from_utf8(text).unwrap())?;
    let mut n = 0;
    for f in [Format::Bc, Format::Tdt, Format::LmPrompt] {
        let (body, m) = sciworld::dataset::export(&ts, f);
        common::check_golden(&format!("{}.jsonl", f.name()), &body)?;
        common::check_golden(&format!("{}.manifest.json", f.name()), &sciworld::dataset::manifest_text(&m))?;
        n += m.records;
    }
    for t in &ts {
        let r = t.rewards();
        let rtg = returns_to_go(&r);
        for (i, rec) in records(t, Format::Tdt).iter().enumerate().skip(1) {
            let Record::Tdt { prev_rtg, rtg: now, .. } = rec else { unreachable!() };
            if (prev_rtg - now - r[i - 1]).abs() > EPS {
                return Err(format!("{} step {i}: {prev_rtg} - {now} != {}", t.task, r[i - 1]));
            }
        }
        if (rtg[0] - t.final_score).abs() > EPS {
            return Err(format!("{}: first return {} vs score {}", t.task, rtg[0], t.final_score));
        }
    }
    Ok(format!("bc/tdt/lm-prompt ({n} records) byte-match goldens; returns telescope"))
}

fn main() -> ExitCode {
    let cat = Catalog::builtin();
    let checks: Vec<Criterion> = vec![
        ("oracle", Box::new(|| oracle(&cat))),
        ("random-valid", Box::new(|| random_valid(&cat))),
        ("determinism", Box::new(|| determinism(&cat))),
        ("parser round-trip", Box::new(|| parser_round_trip(&cat))),
        ("physics: conduction", Box::new(conduction)),
        ("physics: phases", Box::new(|| phases(&cat))),
        ("physics: circuits", Box::new(|| circuits(&cat))),
        ("genetics", Box::new(genetics)),
        ("splits", Box::new(|| splits(&cat))),
        ("export goldens", Box::new(export_goldens)),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        match f() {
            Ok(m) => println!("PASS {name}: {m}"),
            Err(m) => {
                failed += 1;
                println!("FAIL {name}: {m}");
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
