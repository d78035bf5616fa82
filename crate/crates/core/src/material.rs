use alloc::format;
use alloc::string::String;

use serde::{Deserialize, Serialize};

use crate::object::Phase;

/// Index into a world's material table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MaterialId(pub u16);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    /// Fraction of a temperature gap closed per tick, in [0, 1].
    pub conduction: f64,
    pub melting_point: Option<f64>,
    pub boiling_point: Option<f64>,
    pub combustion_point: Option<f64>,
    pub conductive: bool,
    /// Surface friction coefficient, in [0, 1].
    pub friction: f64,
    /// Display names for the solid, liquid and gas phases.
    pub phase_names: [String; 3],
}

impl Material {
    /// Builds a material, filling in default phase names when none are given.
    ///
    /// The phase that is stable at room temperature keeps the bare name; the
    /// other two are prefixed with "solid", "liquid" or "gaseous".
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        conduction: f64,
        melting_point: Option<f64>,
        boiling_point: Option<f64>,
        combustion_point: Option<f64>,
        conductive: bool,
        friction: f64,
        phase_names: Option<[String; 3]>,
    ) -> Self {
        let phase_names = phase_names.unwrap_or_else(|| {
            let room = phase_for(20.0, melting_point, boiling_point);
            let label = |p: Phase, prefix: &str| {
                if p == room {
                    String::from(name)
                } else {
                    format!("{prefix} {name}")
                }
            };
            [
                label(Phase::Solid, "solid"),
                label(Phase::Liquid, "liquid"),
                label(Phase::Gas, "gaseous"),
            ]
        });
        Material {
            name: String::from(name),
            conduction,
            melting_point,
            boiling_point,
            combustion_point,
            conductive,
            friction,
            phase_names,
        }
    }

    /// Phase this material takes at `temperature`.
    pub fn phase_at(&self, temperature: f64) -> Phase {
        phase_for(temperature, self.melting_point, self.boiling_point)
    }

    pub fn phase_name(&self, phase: Phase) -> &str {
        &self.phase_names[phase.index()]
    }

    /// Checks the table invariants: ordered thresholds and coefficients in [0, 1].
    pub fn validate(&self) -> Result<(), String> {
        if let (Some(m), Some(b)) = (self.melting_point, self.boiling_point) {
            if m >= b {
                return Err(format!(
                    "material {}: melting point {m} is not below boiling point {b}",
                    self.name
                ));
            }
        }
        if !(0.0..=1.0).contains(&self.conduction) {
            return Err(format!("material {}: conduction out of [0,1]", self.name));
        }
        if !(0.0..=1.0).contains(&self.friction) {
            return Err(format!("material {}: friction out of [0,1]", self.name));
        }
        Ok(())
    }
}

/// Solid below the melting point, liquid in [melting, boiling), gas at or above
/// the boiling point. A missing threshold is never crossed.
pub fn phase_for(temperature: f64, melting: Option<f64>, boiling: Option<f64>) -> Phase {
    if let Some(b) = boiling {
        if temperature >= b {
            return Phase::Gas;
        }
    }
    match melting {
        Some(m) if temperature >= m => Phase::Liquid,
        Some(_) => Phase::Solid,
        None => Phase::Solid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_phase_names_keep_room_phase_bare() {
        let lead = Material::new("lead", 0.8, Some(327.0), Some(1749.0), None, true, 0.3, None);
        assert_eq!(lead.phase_names[0], "lead");
        assert_eq!(lead.phase_names[1], "liquid lead");
        assert_eq!(lead.phase_names[2], "gaseous lead");
        let juice = Material::new("juice", 0.5, Some(-2.0), Some(100.0), None, false, 0.1, None);
        assert_eq!(juice.phase_names[0], "solid juice");
        assert_eq!(juice.phase_names[1], "juice");
    }

    #[test]
    fn thresholds() {
        assert_eq!(phase_for(-0.1, Some(0.0), Some(100.0)), Phase::Solid);
        assert_eq!(phase_for(0.0, Some(0.0), Some(100.0)), Phase::Liquid);
        assert_eq!(phase_for(99.9, Some(0.0), Some(100.0)), Phase::Liquid);
        assert_eq!(phase_for(100.0, Some(0.0), Some(100.0)), Phase::Gas);
        assert_eq!(phase_for(5000.0, None, None), Phase::Solid);
    }

    #[test]
    fn validation_rejects_inverted_thresholds() {
        let bad = Material::new("x", 0.5, Some(10.0), Some(5.0), None, false, 0.1, None);
        assert!(bad.validate().is_err());
        let bad = Material::new("y", 1.5, None, None, None, false, 0.1, None);
        assert!(bad.validate().is_err());
    }
}
