//! Data-driven definitions: materials, object types, species, traits, recipes,
//! the house map, furniture placement, physics constants, the action grammar and
//! the task catalog. The built-in tables are compiled in; the std companion crate
//! can substitute any of them with files from disk.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::engine::genetics::TraitDef;
use crate::material::{Material, MaterialId};
use crate::object::{Condition, ContainerKind, DeviceKind, ElecRole, UseKind};
use crate::task::goal::{GoalDef, Predicate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{file}: {message}")]
    Parse { file: &'static str, message: String },
    #[error("invalid catalog: {0}")]
    Invalid(String),
}

/// Raw text of every table.
#[derive(Clone, Debug)]
pub struct Sources<'a> {
    pub materials: &'a str,
    pub objects: &'a str,
    pub species: &'a str,
    pub traits: &'a str,
    pub recipes: &'a str,
    pub map: &'a str,
    pub house: &'a str,
    pub physics: &'a str,
    pub grammar: &'a str,
    pub tasks: &'a str,
}

impl Sources<'static> {
    pub fn builtin() -> Self {
        Sources {
            materials: include_str!("../data/materials.toml"),
            objects: include_str!("../data/objects.toml"),
            species: include_str!("../data/species.toml"),
            traits: include_str!("../data/traits.toml"),
            recipes: include_str!("../data/recipes.toml"),
            map: include_str!("../data/map.toml"),
            house: include_str!("../data/house.toml"),
            physics: include_str!("../data/physics.toml"),
            grammar: include_str!("../data/grammar.toml"),
            tasks: include_str!("../data/tasks.toml"),
        }
    }
}

// --- file schemas ------------------------------------------------------------

#[derive(Deserialize)]
struct MaterialFile {
    version: u32,
    material: Vec<MaterialRow>,
}

#[derive(Deserialize)]
struct MaterialRow {
    name: String,
    conduction: f64,
    melting_point: Option<f64>,
    boiling_point: Option<f64>,
    combustion_point: Option<f64>,
    #[serde(default)]
    conductive: bool,
    #[serde(default = "default_friction")]
    friction: f64,
    phase_names: Option<[String; 3]>,
}

fn default_friction() -> f64 {
    0.5
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct DeviceDef {
    pub kind: DeviceKind,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default)]
    pub rate: f64,
    #[serde(default)]
    pub active: bool,
    pub condition: Option<Condition>,
    #[serde(default = "yes")]
    pub agent_activatable: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct ElectricalDef {
    pub polarized: bool,
    pub role: ElecRole,
    #[serde(default)]
    pub renewable: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct ObjectDef {
    pub name: String,
    pub material: Option<String>,
    #[serde(default)]
    pub container: ContainerKind,
    #[serde(default)]
    pub vessel: bool,
    #[serde(default)]
    pub portable: bool,
    #[serde(default)]
    pub edible: bool,
    #[serde(default)]
    pub flushable: bool,
    pub readable: Option<String>,
    #[serde(rename = "use")]
    pub use_kind: Option<UseKind>,
    #[serde(default)]
    pub categories: Vec<String>,
    #[serde(default)]
    pub substance: bool,
    pub device: Option<DeviceDef>,
    pub electrical: Option<ElectricalDef>,
}

#[derive(Deserialize)]
struct ObjectFile {
    version: u32,
    object: Vec<ObjectDef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LifeKind {
    Plant,
    Animal,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct LifeDefaults {
    pub stage_duration: u32,
    pub animal_stage_duration: u32,
    pub water_deadline: u32,
    pub soil_deadline: u32,
    pub temperature_deadline: u32,
    pub drink_interval: u32,
    pub fruit_delay: u32,
    pub temperature_min: f64,
    pub temperature_max: f64,
}

#[derive(Deserialize)]
struct SpeciesRow {
    name: String,
    kind: LifeKind,
    lifespan: f64,
    stages: Vec<String>,
    fruit: Option<String>,
    stage_duration: Option<u32>,
}

#[derive(Deserialize)]
struct SpeciesFile {
    version: u32,
    defaults: LifeDefaults,
    species: Vec<SpeciesRow>,
}

/// A species with its defaults resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Species {
    pub name: String,
    pub kind: LifeKind,
    /// Typical lifespan in years.
    pub lifespan: f64,
    /// Display names, earliest first; the last entry is the dead stage.
    pub stages: Vec<String>,
    pub fruit: Option<String>,
    pub stage_duration: u32,
    pub water_deadline: u32,
    pub soil_deadline: u32,
    pub temperature_deadline: u32,
    pub drink_interval: u32,
    pub fruit_delay: u32,
    pub temperature_min: f64,
    pub temperature_max: f64,
    pub traits: Vec<TraitDef>,
}

impl Species {
    pub fn dead_stage(&self) -> usize {
        self.stages.len() - 1
    }

    /// Last living stage (adult animal, reproducing plant).
    pub fn final_living_stage(&self) -> usize {
        self.stages.len() - 2
    }
}

/// Plant stage ordinals.
pub mod plant_stage {
    pub const SEED: usize = 0;
    pub const SEEDLING: usize = 1;
    pub const ADULT: usize = 2;
    pub const REPRODUCING: usize = 3;
    pub const DEAD: usize = 4;
}

#[derive(Deserialize)]
struct TraitRow {
    species: String,
    name: String,
    symbol: char,
    dominant: String,
    recessive: String,
}

#[derive(Deserialize)]
struct TraitFile {
    version: u32,
    #[serde(rename = "trait")]
    traits: Vec<TraitRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Recipe {
    pub inputs: Vec<String>,
    pub output: String,
}

#[derive(Deserialize)]
struct RecipeFile {
    version: u32,
    recipe: Vec<Recipe>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct RoomDef {
    pub name: String,
    pub ambient: f64,
}

#[derive(Deserialize)]
struct DoorRow {
    between: [String; 2],
}

#[derive(Deserialize)]
struct MapFile {
    version: u32,
    room: Vec<RoomDef>,
    door: Vec<DoorRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Placement {
    pub room: String,
    pub object: String,
    pub inside: Option<String>,
    #[serde(default = "one")]
    pub chance: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
struct HouseFile {
    version: u32,
    place: Vec<Placement>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Physics {
    pub version: u32,
    pub ambient_rate: f64,
    pub plane_speed: f64,
    pub burn_temperature: f64,
    pub burn_duration: u32,
    pub default_temperature: f64,
    pub tap_temperature: f64,
    pub max_steps: u32,
    pub max_invalid_streak: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct ActionDef {
    pub id: String,
    pub forms: Vec<String>,
    pub description: String,
    #[serde(default)]
    pub easy_only: bool,
}

impl ActionDef {
    /// Number of object/location slots in the widest surface form.
    pub fn arity(&self) -> usize {
        self.forms
            .iter()
            .map(|f| f.matches("{obj}").count() + f.matches("{loc}").count())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Deserialize)]
struct GrammarFile {
    version: u32,
    action: Vec<ActionDef>,
}

/// A variation parameter value.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<String>),
    Bool(bool),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct Variation {
    #[serde(default)]
    pub unseen: bool,
    #[serde(flatten)]
    pub params: BTreeMap<String, Param>,
}

impl Variation {
    pub fn text(&self, key: &str) -> Option<&str> {
        match self.params.get(key)? {
            Param::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.params.get(key)? {
            Param::Int(i) => Some(*i as f64),
            Param::Float(f) => Some(*f),
            _ => None,
        }
    }

    pub fn list(&self, key: &str) -> Option<&[String]> {
        match self.params.get(key)? {
            Param::List(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct TaskDef {
    pub id: String,
    pub topic: String,
    pub name: String,
    pub family: String,
    /// Description template; `{name}` placeholders are filled by the generator.
    pub description: String,
    pub required: Vec<GoalDef>,
    #[serde(default)]
    pub optional: Vec<GoalDef>,
    #[serde(default)]
    pub failure: Vec<Predicate>,
    pub variations: Vec<Variation>,
}

#[derive(Deserialize)]
struct TaskFile {
    version: u32,
    task: Vec<TaskDef>,
}

// --- the catalog ---------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub materials: Vec<Material>,
    pub objects: Vec<ObjectDef>,
    pub species: Vec<Species>,
    pub recipes: Vec<Recipe>,
    pub rooms: Vec<RoomDef>,
    pub doors: Vec<(usize, usize)>,
    pub placements: Vec<Placement>,
    pub physics: Physics,
    pub actions: Vec<ActionDef>,
    pub tasks: Vec<TaskDef>,
    pub life_defaults: LifeDefaults,
    material_index: BTreeMap<String, MaterialId>,
    object_index: BTreeMap<String, usize>,
}

fn parse<T: serde::de::DeserializeOwned>(file: &'static str, text: &str) -> Result<T, CatalogError> {
    toml::from_str(text).map_err(|e| CatalogError::Parse {
        file,
        message: e.to_string(),
    })
}

fn check_version(file: &'static str, v: u32) -> Result<(), CatalogError> {
    if v != 1 {
        return Err(CatalogError::Parse {
            file,
            message: format!("unsupported version {v}"),
        });
    }
    Ok(())
}

impl Catalog {
    /// Parses the compiled-in tables. Panics only if the shipped data is broken,
    /// which the test suite rules out.
    pub fn builtin() -> Arc<Catalog> {
        Arc::new(Catalog::from_sources(&Sources::builtin()).expect("built-in catalog is valid"))
    }

    pub fn from_sources(src: &Sources<'_>) -> Result<Catalog, CatalogError> {
        let mf: MaterialFile = parse("materials.toml", src.materials)?;
        check_version("materials.toml", mf.version)?;
        let materials: Vec<Material> = mf
            .material
            .into_iter()
            .map(|r| {
                Material::new(
                    &r.name,
                    r.conduction,
                    r.melting_point,
                    r.boiling_point,
                    r.combustion_point,
                    r.conductive,
                    r.friction,
                    r.phase_names,
                )
            })
            .collect();

        let of: ObjectFile = parse("objects.toml", src.objects)?;
        check_version("objects.toml", of.version)?;

        let sf: SpeciesFile = parse("species.toml", src.species)?;
        check_version("species.toml", sf.version)?;
        let tf: TraitFile = parse("traits.toml", src.traits)?;
        check_version("traits.toml", tf.version)?;
        let d = &sf.defaults;
        let mut species: Vec<Species> = sf
            .species
            .into_iter()
            .map(|r| Species {
                stage_duration: r.stage_duration.unwrap_or(match r.kind {
                    LifeKind::Plant => d.stage_duration,
                    LifeKind::Animal => d.animal_stage_duration,
                }),
                name: r.name,
                kind: r.kind,
                lifespan: r.lifespan,
                stages: r.stages,
                fruit: r.fruit,
                water_deadline: d.water_deadline,
                soil_deadline: d.soil_deadline,
                temperature_deadline: d.temperature_deadline,
                drink_interval: d.drink_interval,
                fruit_delay: d.fruit_delay,
                temperature_min: d.temperature_min,
                temperature_max: d.temperature_max,
                traits: Vec::new(),
            })
            .collect();
        for t in tf.traits {
            let s = species
                .iter_mut()
                .find(|s| s.name == t.species)
                .ok_or_else(|| CatalogError::Invalid(format!("trait for unknown species {}", t.species)))?;
            s.traits.push(TraitDef {
                name: t.name,
                symbol: t.symbol,
                dominant: t.dominant,
                recessive: t.recessive,
            });
        }

        let rf: RecipeFile = parse("recipes.toml", src.recipes)?;
        check_version("recipes.toml", rf.version)?;
        let map: MapFile = parse("map.toml", src.map)?;
        check_version("map.toml", map.version)?;
        let house: HouseFile = parse("house.toml", src.house)?;
        check_version("house.toml", house.version)?;
        let physics: Physics = parse("physics.toml", src.physics)?;
        check_version("physics.toml", physics.version)?;
        let grammar: GrammarFile = parse("grammar.toml", src.grammar)?;
        check_version("grammar.toml", grammar.version)?;
        let tasks: TaskFile = parse("tasks.toml", src.tasks)?;
        check_version("tasks.toml", tasks.version)?;

        let room_idx = |n: &str| map.room.iter().position(|r| r.name == n);
        let mut doors = Vec::new();
        for dr in &map.door {
            let a = room_idx(&dr.between[0])
                .ok_or_else(|| CatalogError::Invalid(format!("door to unknown room {}", dr.between[0])))?;
            let b = room_idx(&dr.between[1])
                .ok_or_else(|| CatalogError::Invalid(format!("door to unknown room {}", dr.between[1])))?;
            doors.push((a, b));
        }

        let material_index = materials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.name.clone(), MaterialId(i as u16)))
            .collect();
        let object_index = of
            .object
            .iter()
            .enumerate()
            .map(|(i, o)| (o.name.clone(), i))
            .collect();

        let cat = Catalog {
            materials,
            objects: of.object,
            species,
            recipes: rf.recipe,
            rooms: map.room,
            doors,
            placements: house.place,
            physics,
            actions: grammar.action,
            tasks: tasks.task,
            life_defaults: sf.defaults,
            material_index,
            object_index,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn material_id(&self, name: &str) -> Option<MaterialId> {
        self.material_index.get(name).copied()
    }

    pub fn material(&self, id: MaterialId) -> &Material {
        &self.materials[id.0 as usize]
    }

    pub fn object(&self, name: &str) -> Option<&ObjectDef> {
        self.object_index.get(name).map(|&i| &self.objects[i])
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s.name == name)
    }

    pub fn room_index(&self, name: &str) -> Option<usize> {
        self.rooms.iter().position(|r| r.name == name)
    }

    pub fn task(&self, id: &str) -> Option<&TaskDef> {
        self.tasks.iter().find(|t| t.id == id)
    }

    pub fn action(&self, id: &str) -> Option<&ActionDef> {
        self.actions.iter().find(|a| a.id == id)
    }

    /// Rooms sharing a door with `room`, in door-table order.
    pub fn neighbors(&self, room: usize) -> Vec<(usize, usize)> {
        self.doors
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, b))| {
                if a == room {
                    Some((i, b))
                } else if b == room {
                    Some((i, a))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Action counts by arity: (two-slot, one-slot, zero-slot).
    pub fn arity_counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for a in &self.actions {
            match a.arity() {
                2 => c.0 += 1,
                1 => c.1 += 1,
                _ => c.2 += 1,
            }
        }
        c
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let bad = |s: String| Err(CatalogError::Invalid(s));
        for m in &self.materials {
            m.validate().map_err(CatalogError::Invalid)?;
        }
        for o in &self.objects {
            if let Some(m) = &o.material {
                if self.material_id(m).is_none() {
                    return bad(format!("object {} uses unknown material {m}", o.name));
                }
            }
        }
        for s in &self.species {
            if s.stages.len() < 3 {
                return bad(format!("species {} needs at least three stages", s.name));
            }
            if s.kind == LifeKind::Plant && s.stages.len() != 5 {
                return bad(format!("plant {} must have five stages", s.name));
            }
        }
        for r in &self.recipes {
            for n in r.inputs.iter().chain(core::iter::once(&r.output)) {
                if self.material_id(n).is_none() {
                    return bad(format!("recipe uses unknown material {n}"));
                }
            }
        }
        if self.rooms.len() != 10 {
            return bad(format!("expected 10 rooms, found {}", self.rooms.len()));
        }
        for p in &self.placements {
            if self.room_index(&p.room).is_none() || self.object(&p.object).is_none() {
                return bad(format!("bad placement {} in {}", p.object, p.room));
            }
        }
        if self.actions.len() != 25 || self.arity_counts() != (5, 16, 4) {
            return bad(format!(
                "grammar must define 25 actions split 5/16/4, found {} split {:?}",
                self.actions.len(),
                self.arity_counts()
            ));
        }
        for t in &self.tasks {
            if t.variations.len() < 10 {
                return bad(format!("task {} has fewer than 10 variations", t.id));
            }
            if !(2..=15).contains(&t.optional.len()) {
                return bad(format!("task {} needs 2-15 optional goals", t.id));
            }
            if !t.required.iter().any(|g| matches!(g.when, Predicate::Focus(_))) {
                return bad(format!("task {} has no focus goal", t.id));
            }
        }
        Ok(())
    }
}

/// Naive action-space size before predicate filtering: two-slot templates over
/// ordered referent pairs plus one-slot templates plus zero-slot templates.
pub fn naive_action_space(referents: u64) -> u64 {
    5 * referents * referents + 16 * referents + 4
}
