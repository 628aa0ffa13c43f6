//! Action groupoids: objects are carrier elements, morphisms are
//! (groupoid morphism, source element) pairs.

use crate::fincat::{CategoryError, FiniteGroupoid, MorId, ObjId, RawCategory};

use super::action::GAction;

/// The action groupoid of S: its object k corresponds to the k-th carrier
/// element of S in (object, index) order; `object_elem` records the pairing.
#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    pub groupoid: FiniteGroupoid,
    /// object id -> (base groupoid object, carrier index)
    pub object_elem: Vec<(ObjId, usize)>,
    /// morphism id -> (base groupoid morphism, source carrier index)
    pub morphism_pair: Vec<(MorId, usize)>,
}

impl ActionGroupoid {
    pub fn object_of(&self, e: (ObjId, usize)) -> ObjId {
        self.object_elem.iter().position(|&x| x == e).expect("carrier element")
    }

    pub fn morphism_of(&self, m: MorId, i: usize) -> MorId {
        self.morphism_pair
            .iter()
            .position(|&(mm, ii)| mm == m && ii == i)
            .expect("pair indexes a morphism")
    }
}

pub fn action_groupoid(s: &GAction) -> Result<ActionGroupoid, CategoryError> {
    let g = &s.groupoid;
    let object_elem: Vec<(ObjId, usize)> = s.elements().collect();
    let obj_of = |e: (ObjId, usize)| object_elem.iter().position(|&x| x == e).unwrap();
    let mut morphism_pair = Vec::new();
    for m in g.cat.morphisms() {
        for i in 0..s.carriers[g.cat.src(m)] {
            morphism_pair.push((m, i));
        }
    }
    let mor_of = |m: MorId, i: usize| {
        morphism_pair
            .iter()
            .position(|&(mm, ii)| mm == m && ii == i)
            .unwrap()
    };
    let morphisms: Vec<(ObjId, ObjId)> = morphism_pair
        .iter()
        .map(|&(m, i)| {
            let s_obj = obj_of((g.cat.src(m), i));
            let d_obj = obj_of((g.cat.dst(m), s.act[m][i]));
            (s_obj, d_obj)
        })
        .collect();
    let identity: Vec<MorId> = object_elem
        .iter()
        .map(|&(x, i)| mor_of(g.cat.identity(x), i))
        .collect();
    let mut compose = Vec::new();
    for (g2, &(m2, i2)) in morphism_pair.iter().enumerate() {
        for (g1, &(m1, i1)) in morphism_pair.iter().enumerate() {
            // composable iff dst(g1) = src(g2) elementwise
            if g.cat.dst(m1) == g.cat.src(m2) && s.act[m1][i1] == i2 {
                let m21 = g.cat.compose_unchecked(m2, m1);
                compose.push((g2, g1, mor_of(m21, i1)));
            }
        }
    }
    let raw = RawCategory {
        objects: object_elem.len(),
        morphisms,
        identity,
        compose,
    };
    let inverse: Vec<MorId> = morphism_pair
        .iter()
        .map(|&(m, i)| mor_of(g.inv(m), s.act[m][i]))
        .collect();
    let groupoid = FiniteGroupoid::validate(&raw, inverse)?;
    Ok(ActionGroupoid {
        groupoid,
        object_elem,
        morphism_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;
    use std::collections::HashMap;

    #[test]
    fn trivial_group_on_two_points_gives_discrete_groupoid() {
        let g = presets::groupoid("C1").unwrap();
        let two = GAction::constant(&g, 2);
        let ag = action_groupoid(&two).unwrap();
        assert_eq!(ag.groupoid.object_count(), 2);
        assert_eq!(ag.groupoid.morphism_count(), 2);
    }

    #[test]
    fn c2_on_a_fixed_point_is_bc2_on_the_nose() {
        let g = presets::groupoid("C2").unwrap();
        let point = GAction::terminal(&g);
        let ag = action_groupoid(&point).unwrap();
        // equals a relabeling of the original groupoid
        let omap: HashMap<usize, usize> = [(0, 0)].into();
        let mmap: HashMap<usize, usize> = (0..2).map(|m| (m, ag.morphism_of(m, 0))).collect();
        assert!(g.cat.is_isomorphic_on_the_nose(&ag.groupoid.cat, &omap, &mmap));
    }

    #[test]
    fn c2_regular_gives_indiscrete_two_objects() {
        let g = presets::groupoid("C2").unwrap();
        let r = GAction::regular(&g);
        let ag = action_groupoid(&r).unwrap();
        assert_eq!(ag.groupoid.object_count(), 2);
        assert_eq!(ag.groupoid.morphism_count(), 4);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(ag.groupoid.cat.hom(a, b).len(), 1);
            }
        }
        let comps = ag.groupoid.components();
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.components[0].vertex.order(), 1);
    }
}
