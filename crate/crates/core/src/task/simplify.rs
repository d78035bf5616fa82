use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// The five environment simplifications. `easy` enables all of them.
///
/// The first three are the ones usually described for this kind of benchmark;
/// `open_doors` and `no_combustion` complete the set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Simplifications {
    pub teleport: bool,
    pub self_watering: bool,
    pub open_containers: bool,
    pub open_doors: bool,
    pub no_combustion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown simplification flag: {0}")]
pub struct UnknownFlag(pub String);

impl Simplifications {
    pub const NAMES: [&'static str; 5] = [
        "teleport",
        "self-watering",
        "open-containers",
        "open-doors",
        "no-combustion",
    ];

    pub fn none() -> Self {
        Self::default()
    }

    pub fn easy() -> Self {
        Simplifications {
            teleport: true,
            self_watering: true,
            open_containers: true,
            open_doors: true,
            no_combustion: true,
        }
    }

    /// Parses a comma-separated flag list; `easy` expands to all five.
    pub fn parse(text: &str) -> Result<Self, UnknownFlag> {
        let mut s = Self::none();
        for f in text.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            match f {
                "easy" => s = Self::easy(),
                "teleport" => s.teleport = true,
                "self-watering" => s.self_watering = true,
                "open-containers" => s.open_containers = true,
                "open-doors" => s.open_doors = true,
                "no-combustion" => s.no_combustion = true,
                other => return Err(UnknownFlag(String::from(other))),
            }
        }
        Ok(s)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let on = [
            self.teleport,
            self.self_watering,
            self.open_containers,
            self.open_doors,
            self.no_combustion,
        ];
        Self::NAMES
            .iter()
            .zip(on)
            .filter(|(_, b)| *b)
            .map(|(n, _)| *n)
            .collect()
    }
}
