//! The slice/action equivalence: objects over S correspond to actions of the
//! action groupoid of S, via fibers in one direction and total spaces in the
//! other. Verified on bounded fragments with explicit functors.

use std::sync::Arc;

use thiserror::Error;

use crate::budget::{Budget, BudgetError};
use crate::fincat::{
    decide_equivalence, enumerate_natural_transformations, CategoryError, EquivalenceRefutation,
    EquivalenceWitness, FiniteCategory, Functor, NatTransform,
};

use super::action::{find_isomorphism, ActionRef, GAction, GMap};
use super::action_groupoid::{action_groupoid, ActionGroupoid};
use super::slice::{find_isomorphism_over, slice_fragment, SliceFragment, SliceObject};

#[derive(Debug, Error)]
pub enum SliceEquivalenceError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("fragments are not equivalent: {0}")]
    NotEquivalent(EquivalenceRefutation),
    #[error("round trip is not isomorphic to the identity")]
    RoundTripFailed,
}

/// A slice fragment materialized as an explicit finite category.
#[derive(Debug, Clone)]
pub struct MaterializedFragment {
    pub cat: Arc<FiniteCategory>,
    pub fragment: SliceFragment,
    /// (source object index, target object index, underlying map) per morphism id.
    pub mors: Vec<(usize, usize, GMap)>,
}

pub fn materialize_fragment(
    frag: &SliceFragment,
    budget: &Budget,
) -> Result<MaterializedFragment, SliceEquivalenceError> {
    let n = frag.objects.len();
    let mut mors: Vec<(usize, usize, GMap)> = Vec::new();
    let mut identity = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            for f in frag.hom(&frag.objects[i], &frag.objects[j], budget)? {
                if i == j && f == GMap::identity(&frag.objects[i].total) {
                    identity[i] = mors.len();
                }
                mors.push((i, j, f));
            }
        }
    }
    let lookup = |i: usize, j: usize, f: &GMap| {
        mors.iter()
            .position(|(a, b, g)| *a == i && *b == j && g.components == f.components)
            .expect("composite is in the hom enumeration")
    };
    let morphisms: Vec<(usize, usize)> = mors.iter().map(|(i, j, _)| (*i, *j)).collect();
    let mors_for_compose = mors.clone();
    let cat = FiniteCategory::from_parts_checked(n, morphisms, identity, |g_id, f_id| {
        let (fi, _, f) = &mors_for_compose[f_id];
        let (_, gj, g) = &mors_for_compose[g_id];
        lookup(*fi, *gj, &GMap::compose(g, f))
    })?;
    Ok(MaterializedFragment {
        cat: Arc::new(cat),
        fragment: frag.clone(),
        mors,
    })
}

/// Result of verifying the slice/action equivalence on bounded fragments.
#[derive(Debug, Clone)]
pub struct SliceActionEquivalence {
    pub action_groupoid: ActionGroupoid,
    pub fiber_functor: Functor,
    pub quasi_inverse: Functor,
    pub witness: EquivalenceWitness,
    /// iso id => quasi_inverse . fiber on the slice fragment.
    pub unit_iso: NatTransform,
    /// iso fiber . quasi_inverse => id on the action fragment.
    pub counit_iso: NatTransform,
}

/// The fiber of a slice object: the action of the action groupoid whose
/// carrier at (x, s) is the projection fiber over s.
fn fiber_action(ag: &ActionGroupoid, obj: &SliceObject) -> GAction {
    let base_cat = &obj.total.groupoid.cat;
    let s_action = &obj.projection.target;
    let fibers: Vec<Vec<usize>> = ag
        .object_elem
        .iter()
        .map(|&(x, s)| {
            (0..obj.total.carriers[x])
                .filter(|&e| obj.projection.components[x][e] == s)
                .collect()
        })
        .collect();
    let carriers: Vec<usize> = fibers.iter().map(|f| f.len()).collect();
    let act = ag
        .morphism_pair
        .iter()
        .map(|&(m, s)| {
            let src_obj = ag.object_of((base_cat.src(m), s));
            let dst_obj = ag.object_of((base_cat.dst(m), s_action.act[m][s]));
            fibers[src_obj]
                .iter()
                .map(|&e| {
                    let image = obj.total.act[m][e];
                    fibers[dst_obj].iter().position(|&e2| e2 == image).unwrap()
                })
                .collect()
        })
        .collect();
    GAction {
        groupoid: ag.groupoid.clone(),
        carriers,
        act,
    }
}

/// The total space of an action of the action groupoid: an object over S.
fn total_space(ag: &ActionGroupoid, s_action: &ActionRef, b: &GAction) -> SliceObject {
    let base_g = &s_action.groupoid;
    let n = base_g.object_count();
    // elements at x: (s, k) for s in carrier_S(x), k in carrier_B((x,s))
    let index: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|x| {
            let mut v = Vec::new();
            for s in 0..s_action.carriers[x] {
                let ago = ag.object_of((x, s));
                for k in 0..b.carriers[ago] {
                    v.push((s, k));
                }
            }
            v
        })
        .collect();
    let carriers: Vec<usize> = index.iter().map(|v| v.len()).collect();
    let act = base_g
        .cat
        .morphisms()
        .map(|m| {
            let (xs, xd) = (base_g.cat.src(m), base_g.cat.dst(m));
            index[xs]
                .iter()
                .map(|&(s, k)| {
                    let s2 = s_action.act[m][s];
                    let am = ag.morphism_of(m, s);
                    let k2 = b.act[am][k];
                    index[xd].iter().position(|&p| p == (s2, k2)).unwrap()
                })
                .collect()
        })
        .collect();
    let total = Arc::new(GAction {
        groupoid: base_g.clone(),
        carriers,
        act,
    });
    let projection = GMap {
        source: total.clone(),
        target: s_action.clone(),
        components: index
            .iter()
            .map(|v| v.iter().map(|&(s, _)| s).collect())
            .collect(),
    };
    SliceObject { total, projection }
}

/// Verifies slice(S) ≃ (action groupoid of S)-actions on fragments bounded by n.
pub fn slice_action_equivalence(
    s_action: &ActionRef,
    bound: usize,
    budget: &Budget,
) -> Result<SliceActionEquivalence, SliceEquivalenceError> {
    let ag = action_groupoid(s_action)?;
    let slice_frag = slice_fragment(s_action, bound, budget)?;
    let point = Arc::new(GAction::terminal(&ag.groupoid));
    let action_frag = slice_fragment(&point, bound, budget)?;
    let slice_cat = materialize_fragment(&slice_frag, budget)?;
    let action_cat = materialize_fragment(&action_frag, budget)?;

    // fiber functor: slice fragment -> action fragment
    let mut omap = Vec::with_capacity(slice_frag.objects.len());
    let mut iso_to_rep: Vec<GMap> = Vec::new(); // fiber(obj) -> chosen rep
    for obj in &slice_frag.objects {
        let fib = Arc::new(fiber_action(&ag, obj));
        let (idx, iso) = action_frag
            .objects
            .iter()
            .enumerate()
            .find_map(|(k, rep)| find_isomorphism(&fib, &rep.total).map(|i| (k, i)))
            .expect("fiber lands in the bounded action fragment");
        omap.push(idx);
        iso_to_rep.push(iso);
    }
    let mut mmap = Vec::with_capacity(slice_cat.mors.len());
    for (i, j, f) in &slice_cat.mors {
        // induced map on fibers, conjugated into chosen representatives
        let src_fib = iso_to_rep[*i].source.clone();
        let dst_fib = iso_to_rep[*j].source.clone();
        let induced = fiber_map(&ag, &slice_frag.objects[*i], &slice_frag.objects[*j], f, &src_fib, &dst_fib);
        let conj = GMap::compose(
            &iso_to_rep[*j],
            &GMap::compose(&induced, &iso_to_rep[*i].inverse().expect("iso")),
        );
        let id = action_cat
            .mors
            .iter()
            .position(|(a, b, g)| *a == omap[*i] && *b == omap[*j] && g.components == conj.components)
            .expect("image morphism is in the action fragment");
        mmap.push(id);
    }
    let fiber_functor = Functor {
        src: slice_cat.cat.clone(),
        dst: action_cat.cat.clone(),
        omap,
        mmap,
    };
    fiber_functor
        .check_laws()
        .expect("fiber construction is functorial");

    // quasi-inverse: total space construction
    let mut q_omap = Vec::with_capacity(action_frag.objects.len());
    let mut q_iso: Vec<GMap> = Vec::new(); // total(obj).total -> chosen slice rep total (over S)
    for obj in &action_frag.objects {
        let tot = total_space(&ag, s_action, &obj.total);
        let (idx, iso) = slice_frag
            .objects
            .iter()
            .enumerate()
            .find_map(|(k, rep)| find_isomorphism_over(&tot, rep).map(|i| (k, i)))
            .expect("total space lands in the bounded slice fragment");
        q_omap.push(idx);
        q_iso.push(iso);
    }
    let mut q_mmap = Vec::with_capacity(action_cat.mors.len());
    for (i, j, f) in &action_cat.mors {
        let induced = total_map(&ag, s_action, &action_frag.objects[*i], &action_frag.objects[*j], f, &q_iso[*i], &q_iso[*j]);
        let id = slice_cat
            .mors
            .iter()
            .position(|(a, b, g)| *a == q_omap[*i] && *b == q_omap[*j] && g.components == induced.components)
            .expect("image morphism is in the slice fragment");
        q_mmap.push(id);
    }
    let quasi_inverse = Functor {
        src: action_cat.cat.clone(),
        dst: slice_cat.cat.clone(),
        omap: q_omap,
        mmap: q_mmap,
    };
    quasi_inverse
        .check_laws()
        .expect("total-space construction is functorial");

    let witness = decide_equivalence(&fiber_functor).map_err(SliceEquivalenceError::NotEquivalent)?;

    // round trips are naturally isomorphic to the identities
    let round_src = Functor::compose(&quasi_inverse, &fiber_functor);
    let id_src = Functor::identity(&slice_cat.cat);
    let unit_iso = enumerate_natural_transformations(&id_src, &round_src, budget)?
        .into_iter()
        .find(|nt| nt.is_iso(&slice_cat.cat))
        .ok_or(SliceEquivalenceError::RoundTripFailed)?;
    let round_dst = Functor::compose(&fiber_functor, &quasi_inverse);
    let id_dst = Functor::identity(&action_cat.cat);
    let counit_iso = enumerate_natural_transformations(&round_dst, &id_dst, budget)?
        .into_iter()
        .find(|nt| nt.is_iso(&action_cat.cat))
        .ok_or(SliceEquivalenceError::RoundTripFailed)?;

    Ok(SliceActionEquivalence {
        action_groupoid: ag,
        fiber_functor,
        quasi_inverse,
        witness,
        unit_iso,
        counit_iso,
    })
}

/// The action of a slice morphism on fibers.
fn fiber_map(
    ag: &ActionGroupoid,
    src: &SliceObject,
    dst: &SliceObject,
    f: &GMap,
    src_fib: &ActionRef,
    dst_fib: &ActionRef,
) -> GMap {
    let components = ag
        .object_elem
        .iter()
        .enumerate()
        .map(|(k, &(x, s))| {
            let src_fiber: Vec<usize> = (0..src.total.carriers[x])
                .filter(|&e| src.projection.components[x][e] == s)
                .collect();
            let dst_fiber: Vec<usize> = (0..dst.total.carriers[x])
                .filter(|&e| dst.projection.components[x][e] == s)
                .collect();
            debug_assert_eq!(src_fiber.len(), src_fib.carriers[k]);
            src_fiber
                .iter()
                .map(|&e| dst_fiber.iter().position(|&e2| e2 == f.components[x][e]).unwrap())
                .collect()
        })
        .collect();
    GMap {
        source: src_fib.clone(),
        target: dst_fib.clone(),
        components,
    }
}

/// The action of a fragment morphism on total spaces, conjugated into the
/// chosen slice representatives.
fn total_map(
    ag: &ActionGroupoid,
    s_action: &ActionRef,
    src: &SliceObject,
    dst: &SliceObject,
    f: &GMap,
    src_iso: &GMap,
    dst_iso: &GMap,
) -> GMap {
    let src_tot = total_space(ag, s_action, &src.total);
    let dst_tot = total_space(ag, s_action, &dst.total);
    let n = s_action.groupoid.object_count();
    // index tables matching total_space's element order
    let index = |obj: &SliceObject, x: usize| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for s in 0..s_action.carriers[x] {
            let ago = ag.object_of((x, s));
            for k in 0..obj.total.carriers[ago] {
                v.push((s, k));
            }
        }
        v
    };
    let components: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let src_idx = index(src, x);
            let dst_idx = index(dst, x);
            src_idx
                .iter()
                .map(|&(s, k)| {
                    let ago = ag.object_of((x, s));
                    let k2 = f.components[ago][k];
                    dst_idx.iter().position(|&p| p == (s, k2)).unwrap()
                })
                .collect()
        })
        .collect();
    let raw = GMap {
        source: src_tot.total.clone(),
        target: dst_tot.total.clone(),
        components,
    };
    debug_assert!(raw.check().is_ok());
    GMap::compose(dst_iso, &GMap::compose(&raw, &src_iso.inverse().expect("iso")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn slice_over_point_is_gsets_itself() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let point = Arc::new(GAction::terminal(&g));
        let eq = slice_action_equivalence(&point, 2, &budget).unwrap();
        // action groupoid of the point is B C2 again; fragments coincide
        assert_eq!(eq.fiber_functor.src.object_count(), eq.fiber_functor.dst.object_count());
    }

    #[test]
    fn slice_over_regular_c2_is_plain_finite_sets() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let eq = slice_action_equivalence(&r, 2, &budget).unwrap();
        // the action groupoid of the torsor is connected with trivial vertex
        let comps = eq.action_groupoid.groupoid.components();
        assert_eq!(comps.count(), 1);
        assert_eq!(comps.components[0].vertex.order(), 1);
    }

    #[test]
    fn slice_over_mixed_base_splits() {
        let budget = Budget::default();
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let point = Arc::new(GAction::terminal(&g));
        let mixed = super::super::colimits::coproduct(&point, &r).object;
        let eq = slice_action_equivalence(&mixed, 2, &budget).unwrap();
        let comps = eq.action_groupoid.groupoid.components();
        assert_eq!(comps.count(), 2);
        let mut orders: Vec<usize> = comps.components.iter().map(|c| c.vertex.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2]);
    }
}
