//! Physical and biological processes. One call to [`tick`] advances the world
//! by one time step; the sub-engines always run in the same order.

pub mod chemistry;
pub mod device;
pub mod electric;
pub mod genetics;
pub mod life;
pub mod plane;
pub mod thermo;

use crate::world::World;

/// Advances the world one tick: devices, electricity, heat, life, planes.
pub fn tick(w: &mut World) {
    device::tick(w);
    electric::update(w);
    thermo::tick(w);
    life::tick(w);
    plane::tick(w);
    w.tick += 1;
}
