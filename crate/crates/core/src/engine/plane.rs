//! Objects sliding down inclined planes.

use alloc::vec::Vec;

use crate::object::ObjId;
use crate::world::World;

/// Fraction of the plane covered per tick.
pub fn speed(plane_speed: f64, angle_deg: f64, friction: f64) -> f64 {
    plane_speed * libm::sin(angle_deg.to_radians()) * (1.0 - friction)
}

pub fn tick(w: &mut World) {
    let k = w.catalog.physics.plane_speed;
    let planes: Vec<ObjId> = w.ids().filter(|&id| w.obj(id).plane.is_some()).collect();
    for p in planes {
        let load = w.children(p).first().copied();
        let (angle, surface) = {
            let s = w.obj(p).plane.as_ref().expect("plane");
            (s.angle, s.surface)
        };
        let friction = w.material(surface).friction;
        let Some(load) = load else {
            let s = w.obj_mut(p).plane.as_mut().expect("plane");
            s.position = 0.0;
            s.elapsed = 0;
            continue;
        };
        let v = speed(k, angle, friction);
        let s = w.obj_mut(p).plane.as_mut().expect("plane");
        s.position += v;
        s.elapsed += 1;
        if s.position >= 1.0 {
            s.position = 0.0;
            s.elapsed = 0;
            if let Some(parent) = w.parent(p) {
                w.relocate(load, parent);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steeper_and_slicker_is_faster() {
        assert!(speed(0.25, 45.0, 0.5) > speed(0.25, 30.0, 0.5));
        assert!(speed(0.25, 30.0, 0.1) > speed(0.25, 30.0, 0.5));
        assert!((speed(0.25, 90.0, 0.0) - 0.25).abs() < 1e-12);
    }
}
