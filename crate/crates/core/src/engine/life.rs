//! Plant and animal life cycles, pollination and fruiting.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::IndexedRandom;

use crate::catalog::{plant_stage, LifeKind};
use crate::engine::genetics::punnett_cross;
use crate::object::{ObjId, Phase};
use crate::world::World;

/// Needs of a plant in its current spot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Needs {
    pub water: bool,
    pub soil: bool,
    pub temperature: bool,
    pub self_watering: bool,
}

pub fn needs(w: &World, id: ObjId) -> Needs {
    let parent = w.parent(id).expect("living things have parents");
    let s = w.species_of(id).expect("living");
    let t = w.obj(id).temperature;
    let mut water = false;
    let mut soil = false;
    for &c in w.children(parent) {
        if c == id {
            continue;
        }
        let o = w.obj(c);
        let Some(m) = o.material else { continue };
        let name = &w.material(m).name;
        if o.phase == Some(Phase::Liquid) && name == "water" {
            water = true;
        }
        if o.is_substance() && name == "soil" {
            soil = true;
        }
    }
    let self_watering = w.obj(parent).self_watering;
    Needs {
        water: water || self_watering,
        soil,
        temperature: (s.temperature_min..=s.temperature_max).contains(&t),
        self_watering,
    }
}

pub fn tick(w: &mut World) {
    let ids: Vec<ObjId> = w.ids().filter(|&id| w.obj(id).life.is_some()).collect();
    for id in ids {
        if !w.exists(id) {
            continue;
        }
        let l = w.obj(id).life.as_ref().expect("living");
        let s = &w.species[l.species];
        if l.frozen || l.stage >= s.dead_stage() {
            continue;
        }
        match s.kind {
            LifeKind::Animal => {
                let (dur, last) = (s.stage_duration, s.final_living_stage());
                let l = w.obj_mut(id).life.as_mut().expect("living");
                l.ticks_in_stage += 1;
                if l.ticks_in_stage >= dur && l.stage < last {
                    l.stage += 1;
                    l.ticks_in_stage = 0;
                }
            }
            LifeKind::Plant => plant_tick(w, id),
        }
    }
    pollinate(w);
}

fn plant_tick(w: &mut World, id: ObjId) {
    let n = needs(w, id);
    let l = w.obj(id).life.as_ref().expect("living");
    let s = &w.species[l.species];
    if l.stage == plant_stage::SEED && !n.soil {
        return; // dormant
    }
    let (wd, sd, td, di, dur, fd) = (
        s.water_deadline,
        s.soil_deadline,
        s.temperature_deadline,
        s.drink_interval,
        s.stage_duration,
        s.fruit_delay,
    );
    let parent = w.parent(id).expect("parent");
    let mut drink = None;
    {
        let l = w.obj_mut(id).life.as_mut().expect("living");
        l.water_ticks = if n.water { 0 } else { l.water_ticks + 1 };
        l.soil_ticks = if n.soil { 0 } else { l.soil_ticks + 1 };
        l.heat_ticks = if n.temperature { 0 } else { l.heat_ticks + 1 };
        if l.water_ticks > wd || l.soil_ticks > sd || l.heat_ticks > td {
            l.stage = plant_stage::DEAD;
            return;
        }
        l.drink_ticks += 1;
        if l.drink_ticks >= di {
            l.drink_ticks = 0;
            if !n.self_watering {
                drink = Some(());
            }
        }
        if n.water && n.soil && n.temperature {
            l.ticks_in_stage += 1;
            if l.ticks_in_stage >= dur && l.stage < plant_stage::REPRODUCING {
                l.stage += 1;
                l.ticks_in_stage = 0;
            }
        }
    }
    if drink.is_some() {
        let water = w.material_id("water");
        let sip = w.children(parent).iter().copied().find(|&c| {
            c != id && w.obj(c).material == water && w.obj(c).phase == Some(Phase::Liquid)
        });
        if let Some(x) = sip {
            w.remove(x);
        }
    }
    let l = w.obj(id).life.as_ref().expect("living");
    if l.stage == plant_stage::REPRODUCING && l.pollen.is_some() && !l.fruited {
        let timer = l.fruit_timer + 1;
        w.obj_mut(id).life.as_mut().expect("living").fruit_timer = timer;
        if timer >= fd {
            make_fruit(w, id, parent);
        }
    }
}

fn make_fruit(w: &mut World, plant: ObjId, parent: ObjId) {
    let (species, pollen, generation) = {
        let l = w.obj(plant).life.as_ref().expect("living");
        (l.species, l.pollen.clone(), l.generation)
    };
    let fruit_name = w.species[species].fruit.clone();
    let Ok(fruit) = w.spawn("fruit", parent) else {
        return;
    };
    if let Some(n) = fruit_name {
        w.obj_mut(fruit).name = Some(n);
    }
    let seed = w.spawn_living(species, plant_stage::SEED, fruit);
    let mine = w.obj(plant).genotype.clone();
    if let (Some(a), Some(b)) = (mine, pollen) {
        let child = punnett_cross(&a, &b, &mut w.rng).ok();
        w.obj_mut(seed).genotype = child;
    }
    w.obj_mut(seed).life.as_mut().expect("living").generation = generation.saturating_add(1);
    w.obj_mut(plant).life.as_mut().expect("living").fruited = true;
}

/// In each room with an active adult bee, one random pair of same-species
/// flowering plants exchanges pollen.
fn pollinate(w: &mut World) {
    for r in 0..w.rooms.len() {
        let room = w.rooms[r];
        let below = w.descendants(room);
        let bee = below.iter().any(|&id| {
            let o = w.obj(id);
            o.life.as_ref().is_some_and(|l| {
                let s = &w.species[l.species];
                s.name == "bee" && l.stage == s.final_living_stage() && !l.frozen
            }) && w.unenclosed(id)
        });
        if !bee {
            continue;
        }
        let mut by_species: BTreeMap<usize, Vec<ObjId>> = BTreeMap::new();
        for &id in &below {
            let o = w.obj(id);
            let Some(l) = &o.life else { continue };
            if w.species[l.species].kind == LifeKind::Plant
                && l.stage == plant_stage::REPRODUCING
                && l.pollen.is_none()
                && !l.fruited
                && w.unenclosed(id)
            {
                by_species.entry(l.species).or_default().push(id);
            }
        }
        for (_, plants) in by_species {
            if plants.len() < 2 {
                continue;
            }
            let pair: Vec<ObjId> = plants.choose_multiple(&mut w.rng, 2).copied().collect();
            let ga = w.obj(pair[0]).genotype.clone().unwrap_or_default();
            let gb = w.obj(pair[1]).genotype.clone().unwrap_or_default();
            w.obj_mut(pair[0]).life.as_mut().expect("living").pollen = Some(gb);
            w.obj_mut(pair[1]).life.as_mut().expect("living").pollen = Some(ga);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    fn greenhouse(flags: Simplifications) -> (World, ObjId) {
        let c = Catalog::builtin();
        let g = c.room_index("greenhouse").unwrap();
        let w = World::new(c, 5, g, flags);
        let r = w.rooms[g];
        (w, r)
    }

    fn potted_seed(w: &mut World, room: ObjId, species: &str) -> (ObjId, ObjId) {
        let pot = w.spawn("flower pot", room).unwrap();
        let soil = w.material_id("soil").unwrap();
        w.spawn_substance(soil, pot, None);
        let sp = w.species_index(species).unwrap();
        let seed = w.spawn_living(sp, plant_stage::SEED, pot);
        (pot, seed)
    }

    fn stage(w: &World, id: ObjId) -> usize {
        w.obj(id).life.as_ref().unwrap().stage
    }

    #[test]
    fn seed_without_water_dies() {
        let (mut w, r) = greenhouse(Simplifications::none());
        let (_, seed) = potted_seed(&mut w, r, "pea plant");
        for _ in 0..20 {
            tick(&mut w);
        }
        assert_eq!(stage(&w, seed), plant_stage::DEAD);
    }

    #[test]
    fn self_watering_pot_grows_to_reproducing() {
        let (mut w, r) = greenhouse(Simplifications::easy());
        let (_, seed) = potted_seed(&mut w, r, "pea plant");
        for _ in 0..29 {
            tick(&mut w);
        }
        assert_eq!(stage(&w, seed), plant_stage::ADULT);
        tick(&mut w);
        assert_eq!(stage(&w, seed), plant_stage::REPRODUCING);
    }

    #[test]
    fn seed_in_jar_is_dormant() {
        let (mut w, r) = greenhouse(Simplifications::none());
        let jar = w.spawn("seed jar", r).unwrap();
        let sp = w.species_index("pea plant").unwrap();
        let seed = w.spawn_living(sp, plant_stage::SEED, jar);
        for _ in 0..50 {
            tick(&mut w);
        }
        assert_eq!(stage(&w, seed), plant_stage::SEED);
    }

    #[test]
    fn plant_drinks_its_water() {
        let (mut w, r) = greenhouse(Simplifications::none());
        let (pot, _) = potted_seed(&mut w, r, "pea plant");
        let water = w.material_id("water").unwrap();
        w.spawn_substance(water, pot, None);
        assert_eq!(w.children(pot).len(), 3);
        for _ in 0..5 {
            tick(&mut w);
        }
        assert_eq!(w.children(pot).len(), 2);
    }

    #[test]
    fn bees_pollinate_and_plants_fruit() {
        let (mut w, r) = greenhouse(Simplifications::easy());
        let (_, a) = potted_seed(&mut w, r, "apple tree");
        let (_, b) = potted_seed(&mut w, r, "apple tree");
        let bee = w.species_index("bee").unwrap();
        let last = w.species[bee].final_living_stage();
        w.spawn_living(bee, last, r);
        for _ in 0..40 {
            tick(&mut w);
        }
        let fruits: Vec<ObjId> = w.ids().filter(|&i| w.obj(i).kind == "fruit").collect();
        assert_eq!(fruits.len(), 2);
        assert!(w.obj(a).life.as_ref().unwrap().fruited);
        assert!(w.obj(b).life.as_ref().unwrap().fruited);
        let seed = w.children(fruits[0])[0];
        assert_eq!(w.obj(seed).life.as_ref().unwrap().generation, 1);
        assert_eq!(crate::referent::display_name(&w, fruits[0]), "apple");
    }
}
