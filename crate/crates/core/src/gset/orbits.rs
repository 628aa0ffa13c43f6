//! Decomposition of an action into connected summands (orbits).

use std::sync::Arc;

use super::action::{ActionRef, GAction, GMap};
use super::colimits::coproduct_many;

/// One connected summand with its inclusion into the original action.
#[derive(Debug, Clone)]
pub struct Summand {
    pub object: ActionRef,
    pub inclusion: GMap,
}

/// The full decomposition: summands plus the isomorphism from their coproduct.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    pub summands: Vec<Summand>,
    /// Isomorphism (coproduct of summands) -> original; absent for the empty
    /// action, whose coproduct has no pieces to assemble.
    pub coproduct_iso: Option<GMap>,
}

/// Splits an action into its orbits. The empty action yields no summands.
pub fn orbit_decomposition(x: &ActionRef) -> OrbitDecomposition {
    let g = &x.groupoid;
    let orbits = x.orbits();
    let mut summands = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        // local indices per object, in orbit-discovery order
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); g.object_count()];
        for &(ox, i) in &orbit.elements {
            members[ox].push(i);
        }
        for v in &mut members {
            v.sort_unstable();
        }
        let local_index = |ox: usize, i: usize| members[ox].iter().position(|&k| k == i).unwrap();
        let carriers: Vec<usize> = members.iter().map(|v| v.len()).collect();
        let act = g
            .cat
            .morphisms()
            .map(|m| {
                let (s, d) = (g.cat.src(m), g.cat.dst(m));
                members[s]
                    .iter()
                    .map(|&i| local_index(d, x.act[m][i]))
                    .collect()
            })
            .collect();
        let object = Arc::new(GAction {
            groupoid: g.clone(),
            carriers,
            act,
        });
        let inclusion = GMap {
            source: object.clone(),
            target: x.clone(),
            components: members,
        };
        debug_assert!(inclusion.check().is_ok());
        summands.push(Summand { object, inclusion });
    }
    let coproduct_iso = if summands.is_empty() {
        None
    } else {
        let parts: Vec<ActionRef> = summands.iter().map(|s| s.object.clone()).collect();
        let cp = coproduct_many(&parts);
        // the universal map out of the coproduct assembled from inclusions
        let mut components: Vec<Vec<usize>> = cp
            .object
            .carriers
            .iter()
            .map(|&c| vec![usize::MAX; c])
            .collect();
        for (k, s) in summands.iter().enumerate() {
            for ox in 0..g.object_count() {
                for i in 0..s.object.carriers[ox] {
                    let in_cp = cp.legs[k].components[ox][i];
                    components[ox][in_cp] = s.inclusion.components[ox][i];
                }
            }
        }
        let iso = GMap {
            source: cp.object.clone(),
            target: x.clone(),
            components,
        };
        debug_assert!(iso.check().is_ok() && iso.is_iso());
        Some(iso)
    };
    OrbitDecomposition {
        summands,
        coproduct_iso,
    }
}

/// True when the action has exactly one orbit (nonempty and indecomposable).
pub fn is_connected(x: &GAction) -> bool {
    x.orbits().len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;
    use crate::gset::limits::{pullback, to_terminal};

    #[test]
    fn s3_natural_action_is_one_orbit() {
        // S3 acting on {1,2,3}: the transitive action on cosets of C2
        let g = presets::groupoid("S3").unwrap();
        let comps = g.components();
        let classes = comps.components[0].vertex.subgroup_classes();
        let c2_class = classes.iter().find(|h| h.len() == 2).unwrap();
        let three = Arc::new(GAction::transitive_on_cosets(&g, 0, c2_class));
        assert_eq!(three.total_size(), 3);
        let d = orbit_decomposition(&three);
        assert_eq!(d.summands.len(), 1);
    }

    #[test]
    fn trivial_two_point_action_has_two_orbits() {
        let g = presets::groupoid("C2").unwrap();
        let two = Arc::new(GAction::constant(&g, 2));
        let d = orbit_decomposition(&two);
        assert_eq!(d.summands.len(), 2);
        assert!(d.coproduct_iso.unwrap().is_iso());
    }

    #[test]
    fn pullback_of_torsor_decomposes_into_regular_orbits() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let f = to_terminal(&r);
        let pb = pullback(&f, &f);
        let d = orbit_decomposition(&pb.object);
        assert_eq!(d.summands.len(), 2);
        for s in &d.summands {
            assert_eq!(s.object.total_size(), 2);
            assert_eq!(s.object.stabilizer((0, 0)).len(), 1); // regular
        }
    }

    #[test]
    fn decomposition_is_idempotent() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let two = Arc::new(GAction::constant(&g, 2));
        let mix = super::super::colimits::coproduct(&r, &two);
        for s in orbit_decomposition(&mix.object).summands {
            assert_eq!(orbit_decomposition(&s.object).summands.len(), 1);
        }
    }

    #[test]
    fn empty_action_decomposes_into_nothing() {
        let g = presets::groupoid("C2").unwrap();
        let zero = Arc::new(GAction::initial(&g));
        let d = orbit_decomposition(&zero);
        assert!(d.summands.is_empty());
    }
}
