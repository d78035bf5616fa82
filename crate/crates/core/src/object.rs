use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::engine::genetics::Genotype;
use crate::material::MaterialId;

/// Unique object identifier. Ids are allocated in increasing order and never reused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Solid,
    Liquid,
    Gas,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Solid, Phase::Liquid, Phase::Gas];

    pub fn index(self) -> usize {
        match self {
            Phase::Solid => 0,
            Phase::Liquid => 1,
            Phase::Gas => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phase::Solid => "solid",
            Phase::Liquid => "liquid",
            Phase::Gas => "gas",
        }
    }

    /// Adjective used in the secondary referent ("solid water").
    pub fn adjective(self) -> &'static str {
        match self {
            Phase::Solid => "solid",
            Phase::Liquid => "liquid",
            Phase::Gas => "gaseous",
        }
    }

    /// Liquids and gases can only rest in vessels.
    pub fn is_fluid(self) -> bool {
        self != Phase::Solid
    }
}

/// One of the two terminals every electrical participant has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Terminal {
    Anode,
    Cathode,
    One,
    Two,
}

impl Terminal {
    pub fn name(self) -> &'static str {
        match self {
            Terminal::Anode => "anode",
            Terminal::Cathode => "cathode",
            Terminal::One => "terminal 1",
            Terminal::Two => "terminal 2",
        }
    }

    /// The other terminal of the same component.
    pub fn partner(self) -> Terminal {
        match self {
            Terminal::Anode => Terminal::Cathode,
            Terminal::Cathode => Terminal::Anode,
            Terminal::One => Terminal::Two,
            Terminal::Two => Terminal::One,
        }
    }

    pub fn pair(polarized: bool) -> [Terminal; 2] {
        if polarized {
            [Terminal::Anode, Terminal::Cathode]
        } else {
            [Terminal::One, Terminal::Two]
        }
    }

    pub fn parse_suffix(text: &str) -> Option<(&str, Terminal)> {
        for t in [Terminal::Anode, Terminal::Cathode, Terminal::One, Terminal::Two] {
            if let Some(base) = text.strip_suffix(t.name()) {
                if let Some(base) = base.strip_suffix(' ') {
                    if !base.is_empty() {
                        return Some((base, t));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContainerKind {
    #[default]
    None,
    Open,
    Closeable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceKind {
    HeatSource,
    HeatSink,
    WaterSource,
    Stopwatch,
    Switch,
    PowerSource,
    Consumer,
}

impl DeviceKind {
    pub fn is_heat(self) -> bool {
        matches!(self, DeviceKind::HeatSource | DeviceKind::HeatSink)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Device {
    pub kind: DeviceKind,
    pub active: bool,
    pub set_temperature: f64,
    pub rate: f64,
    pub condition: Option<Condition>,
    pub agent_activatable: bool,
    /// Ablated by the task generator; activation always fails.
    pub broken: bool,
    /// Tick at which a stopwatch was started.
    pub started_at: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElecRole {
    Source,
    Consumer,
    Conductor,
    Switch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Electrical {
    pub polarized: bool,
    pub role: ElecRole,
    pub renewable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UseKind {
    Thermometer,
    Shovel,
    Stopwatch,
}

/// Stage machine of a plant or animal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LifeState {
    pub species: usize,
    pub stage: usize,
    pub ticks_in_stage: u32,
    /// Ticks since each need was last satisfied.
    pub water_ticks: u32,
    pub soil_ticks: u32,
    pub heat_ticks: u32,
    pub drink_ticks: u32,
    /// Display specimens never change.
    pub frozen: bool,
    pub pollen: Option<Genotype>,
    pub fruit_timer: u32,
    pub fruited: bool,
    pub generation: u8,
}

impl LifeState {
    pub fn new(species: usize, stage: usize) -> Self {
        LifeState {
            species,
            stage,
            ticks_in_stage: 0,
            water_ticks: 0,
            soil_ticks: 0,
            heat_ticks: 0,
            drink_ticks: 0,
            frozen: false,
            pollen: None,
            fruit_timer: 0,
            fruited: false,
            generation: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneState {
    /// Degrees, in (0, 90).
    pub angle: f64,
    pub surface: MaterialId,
    /// Fraction of the way down, in [0, 1].
    pub position: f64,
    pub elapsed: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimObject {
    pub id: ObjId,
    pub kind: String,
    /// Overrides the type name in descriptions ("red wire", "unknown substance B").
    pub name: Option<String>,
    pub material: Option<MaterialId>,
    pub temperature: f64,
    /// `Some` only for substances; other objects have no state of matter.
    pub phase: Option<Phase>,
    pub container: ContainerKind,
    pub open: bool,
    pub vessel: bool,
    pub device: Option<Device>,
    pub electrical: Option<Electrical>,
    pub life: Option<LifeState>,
    pub genotype: Option<Genotype>,
    pub portable: bool,
    pub edible: bool,
    pub flushable: bool,
    pub readable: Option<String>,
    pub use_kind: Option<UseKind>,
    pub categories: Vec<String>,
    pub burning: Option<u32>,
    pub plane: Option<PlaneState>,
    /// Door edge index for door objects.
    pub door: Option<usize>,
    /// Room index for room objects.
    pub room: Option<usize>,
    pub self_watering: bool,
}

impl SimObject {
    pub fn bare(id: ObjId, kind: &str) -> Self {
        SimObject {
            id,
            kind: String::from(kind),
            name: None,
            material: None,
            temperature: 20.0,
            phase: None,
            container: ContainerKind::None,
            open: false,
            vessel: false,
            device: None,
            electrical: None,
            life: None,
            genotype: None,
            portable: false,
            edible: false,
            flushable: false,
            readable: None,
            use_kind: None,
            categories: Vec::new(),
            burning: None,
            plane: None,
            door: None,
            room: None,
            self_watering: false,
        }
    }

    pub fn is_container(&self) -> bool {
        self.container != ContainerKind::None
    }

    /// Contents are reachable: always-open or currently open.
    pub fn is_open_container(&self) -> bool {
        match self.container {
            ContainerKind::None => false,
            ContainerKind::Open => true,
            ContainerKind::Closeable => self.open,
        }
    }

    pub fn is_substance(&self) -> bool {
        self.phase.is_some()
    }

    pub fn is_fluid(&self) -> bool {
        self.phase.is_some_and(Phase::is_fluid)
    }

    pub fn is_room(&self) -> bool {
        self.room.is_some()
    }

    pub fn has_category(&self, c: &str) -> bool {
        self.categories.iter().any(|x| x == c)
    }

    pub fn is_active_heat_device(&self) -> bool {
        self.device
            .as_ref()
            .is_some_and(|d| d.kind.is_heat() && d.active && !d.broken)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_suffixes() {
        assert_eq!(
            Terminal::parse_suffix("battery anode"),
            Some(("battery", Terminal::Anode))
        );
        assert_eq!(
            Terminal::parse_suffix("red wire terminal 2"),
            Some(("red wire", Terminal::Two))
        );
        assert_eq!(Terminal::parse_suffix("anode"), None);
        assert_eq!(Terminal::parse_suffix("battery"), None);
        assert_eq!(Terminal::Anode.partner(), Terminal::Cathode);
    }

    #[test]
    fn container_openness() {
        let mut o = SimObject::bare(ObjId(1), "cupboard");
        o.container = ContainerKind::Closeable;
        assert!(!o.is_open_container());
        o.open = true;
        assert!(o.is_open_container());
        o.container = ContainerKind::Open;
        o.open = false;
        assert!(o.is_open_container());
    }
}
