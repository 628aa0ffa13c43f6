//! Bounded slice fragments: objects over a base action, one representative per
//! isomorphism class over the base.
//!
//! The fragment scope is a parameter of every verdict computed from it.
//! Representatives are canonical: orbit classes are enumerated in a fixed
//! order (component, subgroup class, minimal pointed map), and objects are
//! non-decreasing multisets of orbit classes.

use std::sync::Arc;

use crate::budget::{Budget, BudgetError};
use super::action::{
    enumerate_gmaps, enumerate_gmaps_core, enumerate_gmaps_filtered, ActionRef, Elem, GAction, GMap,
};
use super::colimits::coproduct_many;

/// An object of the slice over `base`: a total action with its projection.
#[derive(Debug, Clone)]
pub struct SliceObject {
    pub total: ActionRef,
    /// projection total -> base.
    pub projection: GMap,
}

impl SliceObject {
    pub fn size(&self) -> usize {
        self.total.total_size()
    }

    pub fn zero(base: &ActionRef) -> Self {
        let total = Arc::new(GAction::initial(&base.groupoid));
        SliceObject {
            projection: GMap {
                source: total.clone(),
                target: base.clone(),
                components: base.carriers.iter().map(|_| Vec::new()).collect(),
            },
            total,
        }
    }

    pub fn identity_object(base: &ActionRef) -> Self {
        SliceObject {
            total: base.clone(),
            projection: GMap::identity(base),
        }
    }

    /// Flattened projection table, used as a canonical comparison key.
    pub fn key(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        (self.total.carriers.clone(), self.projection.components.clone())
    }
}

/// A bounded fragment of the slice category over `base`.
#[derive(Debug, Clone)]
pub struct SliceFragment {
    pub base: ActionRef,
    pub bound: usize,
    pub objects: Vec<SliceObject>,
}

impl SliceFragment {
    /// Morphisms (E,p) -> (E',p'): equivariant maps with p' . f = p.
    pub fn hom(&self, a: &SliceObject, b: &SliceObject, budget: &Budget) -> Result<Vec<GMap>, BudgetError> {
        slice_hom(a, b, budget)
    }

    pub fn object_index_up_to_iso(&self, candidate: &SliceObject) -> Option<usize> {
        self.objects
            .iter()
            .position(|o| find_isomorphism_over(candidate, o).is_some())
    }
}

/// Morphisms over the base: the triangle condition is imposed per orbit rep,
/// which keeps the search linear in the hom-set size.
pub fn slice_hom(a: &SliceObject, b: &SliceObject, budget: &Budget) -> Result<Vec<GMap>, BudgetError> {
    let pa = &a.projection;
    let pb = &b.projection;
    enumerate_gmaps_core(
        &a.total,
        &b.total,
        budget,
        |rep: Elem, t: usize| pb.components[rep.0][t] == pa.components[rep.0][rep.1],
        |_| true,
    )
}

/// Isomorphisms over the base, by orbit matching (no enumeration).
pub fn find_isomorphism_over(a: &SliceObject, b: &SliceObject) -> Option<GMap> {
    if a.total.carriers != b.total.carriers {
        return None;
    }
    let a_orbits = a.total.orbits();
    let mut b_orbits = b.total.orbits();
    let mut components: Vec<Vec<usize>> = a
        .total
        .carriers
        .iter()
        .map(|&c| vec![usize::MAX; c])
        .collect();
    for orbit in &a_orbits {
        let (x, s) = orbit.rep;
        let stab = a.total.stabilizer((x, s));
        let base_img = a.projection.components[x][s];
        let mut matched = None;
        'search: for (bi, borbit) in b_orbits.iter().enumerate() {
            if borbit.elements.len() != orbit.elements.len() {
                continue;
            }
            for &(y, t) in &borbit.elements {
                if y != x {
                    continue;
                }
                if b.projection.components[y][t] != base_img {
                    continue;
                }
                if b.total.stabilizer((y, t)) == stab {
                    matched = Some((bi, t));
                    break 'search;
                }
            }
        }
        let (bi, t) = matched?;
        for &((y, j), m) in &orbit.transport {
            components[y][j] = b.total.act[m][t];
        }
        b_orbits.remove(bi);
    }
    let gm = GMap {
        source: a.total.clone(),
        target: b.total.clone(),
        components,
    };
    if gm.check().is_ok() && gm.is_iso() && GMap::compose(&b.projection, &gm) == a.projection {
        Some(gm)
    } else {
        None
    }
}

/// All objects over `base` with total carrier size ≤ `bound`, one
/// representative per isomorphism class over the base, plus the empty object.
pub fn slice_fragment(base: &ActionRef, bound: usize, budget: &Budget) -> Result<SliceFragment, BudgetError> {
    let counter = budget.with_context("slice_fragment").counter();
    let g = &base.groupoid;
    let comps = g.components();
    // single-orbit pointed classes: (transitive action, map to base) up to
    // precomposition with automorphisms
    let mut orbit_classes: Vec<SliceObject> = Vec::new();
    for ci in 0..comps.count() {
        for class in comps.components[ci].vertex.subgroup_classes() {
            let t = Arc::new(GAction::transitive_on_cosets(g, ci, &class));
            if t.total_size() == 0 || t.total_size() > bound {
                continue;
            }
            let autos = enumerate_gmaps_filtered(&t, &t, budget, |m| m.is_iso())?;
            let maps = enumerate_gmaps(&t, base, budget)?;
            let mut reps: Vec<GMap> = Vec::new();
            for p in maps {
                counter.spend(1)?;
                let canonical = autos
                    .iter()
                    .map(|phi| GMap::compose(&p, phi).components)
                    .min()
                    .expect("aut group is nonempty");
                if !reps.iter().any(|r| r.components == canonical) {
                    reps.push(GMap {
                        source: t.clone(),
                        target: base.clone(),
                        components: canonical,
                    });
                }
            }
            // deterministic order: by flattened projection table
            reps.sort_by(|a, b| a.components.cmp(&b.components));
            for p in reps {
                orbit_classes.push(SliceObject {
                    total: t.clone(),
                    projection: p,
                });
            }
        }
    }
    // multisets of orbit classes with total size ≤ bound
    let mut objects = vec![SliceObject::zero(base)];
    let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(0, 0, Vec::new())]; // (next class, used size, picks)
    while let Some((from, used, picks)) = stack.pop() {
        for k in from..orbit_classes.len() {
            let size = orbit_classes[k].size();
            if used + size > bound {
                continue;
            }
            counter.spend(1)?;
            let mut chosen = picks.clone();
            chosen.push(k);
            objects.push(assemble(base, &orbit_classes, &chosen));
            stack.push((k, used + size, chosen));
        }
    }
    // deterministic object order: by (total size, carriers, projection table)
    objects.sort_by(|a, b| {
        (a.size(), a.key()).cmp(&(b.size(), b.key()))
    });
    Ok(SliceFragment {
        base: base.clone(),
        bound,
        objects,
    })
}

/// A fragment from explicitly given objects (deduplicated up to iso over the
/// base); used for pullback-closure fragments at Čech levels.
pub fn fragment_from_objects(
    base: &ActionRef,
    bound: usize,
    candidates: Vec<SliceObject>,
) -> SliceFragment {
    let mut objects: Vec<SliceObject> = Vec::new();
    for c in candidates {
        if !objects.iter().any(|o| find_isomorphism_over(&c, o).is_some()) {
            objects.push(c);
        }
    }
    objects.sort_by(|a, b| (a.size(), a.key()).cmp(&(b.size(), b.key())));
    SliceFragment {
        base: base.clone(),
        bound,
        objects,
    }
}

fn assemble(base: &ActionRef, classes: &[SliceObject], picks: &[usize]) -> SliceObject {
    let parts: Vec<ActionRef> = picks.iter().map(|&k| classes[k].total.clone()).collect();
    let cp = coproduct_many(&parts);
    let n = base.groupoid.object_count();
    let mut components: Vec<Vec<usize>> = cp
        .object
        .carriers
        .iter()
        .map(|&c| vec![usize::MAX; c])
        .collect();
    for (leg, &k) in cp.legs.iter().zip(picks) {
        for x in 0..n {
            for i in 0..classes[k].total.carriers[x] {
                components[x][leg.components[x][i]] = classes[k].projection.components[x][i];
            }
        }
    }
    let projection = GMap {
        source: cp.object.clone(),
        target: base.clone(),
        components,
    };
    debug_assert!(projection.check().is_ok());
    SliceObject {
        total: cp.object,
        projection,
    }
}

/// Base change of a slice object along v: W -> base, with the projection back
/// to the original total remembered (elements of the pullback are pairs).
#[derive(Debug, Clone)]
pub struct BaseChange {
    /// The pulled-back object, over the source of v.
    pub object: SliceObject,
    /// First pullback projection: pulled total -> original total.
    pub over_original: GMap,
}

pub fn base_change(obj: &SliceObject, v: &GMap) -> BaseChange {
    debug_assert_eq!(v.target.as_ref(), obj.projection.target.as_ref());
    let pb = super::limits::pullback(&obj.projection, v);
    BaseChange {
        object: SliceObject {
            total: pb.object.clone(),
            projection: pb.legs[1].clone(),
        },
        over_original: pb.legs[0].clone(),
    }
}

/// The induced map between base changes of the source and target of f.
pub fn base_change_map(f: &GMap, src: &BaseChange, dst: &BaseChange) -> GMap {
    let n = f.source.groupoid.object_count();
    let mut components = Vec::with_capacity(n);
    for x in 0..n {
        let mut comp = Vec::with_capacity(src.object.total.carriers[x]);
        for k in 0..src.object.total.carriers[x] {
            let e = src.over_original.components[x][k];
            let w = src.object.projection.components[x][k];
            let fe = f.components[x][e];
            let target_idx = (0..dst.object.total.carriers[x])
                .find(|&k2| {
                    dst.over_original.components[x][k2] == fe
                        && dst.object.projection.components[x][k2] == w
                })
                .expect("image pair is in the target pullback");
            comp.push(target_idx);
        }
        components.push(comp);
    }
    let gm = GMap {
        source: src.object.total.clone(),
        target: dst.object.total.clone(),
        components,
    };
    debug_assert!(gm.check().is_ok());
    gm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn c2_sets_of_size_at_most_two_over_the_point() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let point = Arc::new(GAction::terminal(&g));
        let frag = slice_fragment(&point, 2, &budget).unwrap();
        // 0, point, trivial 2-point, regular
        assert_eq!(frag.objects.len(), 4);
        let sizes: Vec<usize> = frag.objects.iter().map(|o| o.size()).collect();
        assert_eq!(sizes, vec![0, 1, 2, 2]);
    }

    #[test]
    fn slice_over_empty_base_is_just_zero() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let zero = Arc::new(GAction::initial(&g));
        let frag = slice_fragment(&zero, 3, &budget).unwrap();
        assert_eq!(frag.objects.len(), 1);
        assert_eq!(frag.objects[0].size(), 0);
    }

    #[test]
    fn slice_over_regular_c2_bound_two() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let frag = slice_fragment(&r, 2, &budget).unwrap();
        // 0 and the identity-like map
        assert_eq!(frag.objects.len(), 2);
    }
}
