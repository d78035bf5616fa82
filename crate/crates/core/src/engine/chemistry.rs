//! Mixing: the substances in a container react when their materials match a
//! recipe exactly.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::WorldError;
use crate::object::ObjId;
use crate::referent::display_name;
use crate::world::World;

/// The recipe output for an unordered set of input material names.
pub fn find_recipe<'a>(w: &'a World, inputs: &[String]) -> Option<&'a str> {
    let mut want: Vec<&str> = inputs.iter().map(String::as_str).collect();
    want.sort_unstable();
    want.dedup();
    w.catalog.recipes.iter().find_map(|r| {
        let mut have: Vec<&str> = r.inputs.iter().map(String::as_str).collect();
        have.sort_unstable();
        (have == want).then_some(r.output.as_str())
    })
}

/// Mixes the contents of `container`; returns the new substance.
pub fn mix(w: &mut World, container: ObjId) -> Result<ObjId, WorldError> {
    let name = display_name(w, container);
    if !w.obj(container).is_container() {
        return Err(WorldError::NotAContainer(name));
    }
    let subs: Vec<ObjId> = w
        .children(container)
        .iter()
        .copied()
        .filter(|&c| w.obj(c).is_substance())
        .collect();
    if subs.len() < 2 {
        return Err(WorldError::NoReaction(name));
    }
    let names: Vec<String> = subs
        .iter()
        .map(|&s| w.material_of(s).expect("substance").name.clone())
        .collect();
    let Some(out) = find_recipe(w, &names).map(String::from) else {
        return Err(WorldError::NoReaction(name));
    };
    let out_id = w
        .material_id(&out)
        .ok_or_else(|| WorldError::NoReaction(name.clone()))?;
    let t = subs.iter().map(|&s| w.obj(s).temperature).sum::<f64>() / subs.len() as f64;
    for s in subs {
        w.remove(s);
    }
    Ok(w.spawn_substance(out_id, container, Some(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::task::simplify::Simplifications;

    #[test]
    fn salt_and_water_make_salt_water() {
        let c = Catalog::builtin();
        let mut w = World::new(c, 1, 0, Simplifications::none());
        let r = w.rooms[0];
        let cup = w.spawn("glass cup", r).unwrap();
        let salt = w.material_id("salt").unwrap();
        let water = w.material_id("water").unwrap();
        w.spawn_substance(salt, cup, None);
        assert!(matches!(mix(&mut w, cup), Err(WorldError::NoReaction(_))));
        w.spawn_substance(water, cup, None);
        let out = mix(&mut w, cup).unwrap();
        assert_eq!(display_name(&w, out), "salt water");
        assert_eq!(w.children(cup), [out]);
    }

    #[test]
    fn extra_ingredients_block_the_reaction() {
        let c = Catalog::builtin();
        let mut w = World::new(c, 1, 0, Simplifications::none());
        let r = w.rooms[0];
        let cup = w.spawn("glass cup", r).unwrap();
        for m in ["red paint", "yellow paint", "blue paint"] {
            let id = w.material_id(m).unwrap();
            w.spawn_substance(id, cup, None);
        }
        assert!(mix(&mut w, cup).is_err());
    }
}
