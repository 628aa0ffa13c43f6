//! Finite actions of a finite groupoid on finite sets.
//!
//! A `GAction` is a functor from the groupoid to finite sets: one carrier per
//! groupoid object, one bijection per groupoid morphism. Elements are
//! addressed as (object, local index).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetError};
use crate::fincat::{FiniteGroupoid, MorId, ObjId};

pub type Elem = (ObjId, usize);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("malformed action: {0}")]
    Malformed(String),
    #[error("action law violation: {0}")]
    LawViolation(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
}

/// A finite groupoid action: carriers plus one map per morphism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GAction {
    pub groupoid: FiniteGroupoid,
    /// carrier size per groupoid object.
    pub carriers: Vec<usize>,
    /// act[m]: carrier(src m) -> carrier(dst m), as an index table.
    pub act: Vec<Vec<usize>>,
}

pub type ActionRef = Arc<GAction>;

impl GAction {
    pub fn validate(
        groupoid: FiniteGroupoid,
        carriers: Vec<usize>,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, ActionError> {
        let a = GAction {
            groupoid,
            carriers,
            act,
        };
        a.check()?;
        Ok(a)
    }

    pub fn check(&self) -> Result<(), ActionError> {
        let g = &self.groupoid;
        if self.carriers.len() != g.object_count() {
            return Err(ActionError::Malformed(format!(
                "expected {} carriers, got {}",
                g.object_count(),
                self.carriers.len()
            )));
        }
        if self.act.len() != g.morphism_count() {
            return Err(ActionError::Malformed(format!(
                "expected {} action maps, got {}",
                g.morphism_count(),
                self.act.len()
            )));
        }
        for m in g.cat.morphisms() {
            let (s, d) = (g.cat.src(m), g.cat.dst(m));
            if self.act[m].len() != self.carriers[s] {
                return Err(ActionError::Malformed(format!(
                    "act[{m}] has wrong domain size"
                )));
            }
            if self.act[m].iter().any(|&v| v >= self.carriers[d]) {
                return Err(ActionError::Malformed(format!(
                    "act[{m}] maps outside the target carrier"
                )));
            }
        }
        for x in 0..g.object_count() {
            let id = g.cat.identity(x);
            if !self.act[id].iter().enumerate().all(|(i, &v)| i == v) {
                return Err(ActionError::LawViolation(format!(
                    "act(id_{x}) is not the identity"
                )));
            }
        }
        for m2 in g.cat.morphisms() {
            for m1 in g.cat.morphisms() {
                if let Some(m21) = g.cat.compose(m2, m1) {
                    for i in 0..self.carriers[g.cat.src(m1)] {
                        if self.act[m21][i] != self.act[m2][self.act[m1][i]] {
                            return Err(ActionError::LawViolation(format!(
                                "act({m2} . {m1}) != act({m2}) . act({m1}) at element {i}"
                            )));
                        }
                    }
                }
            }
        }
        // bijectivity follows from the inverse law, but check directly too
        for m in g.cat.morphisms() {
            let d = g.cat.dst(m);
            let mut seen = vec![false; self.carriers[d]];
            for &v in &self.act[m] {
                if seen[v] {
                    return Err(ActionError::LawViolation(format!("act[{m}] is not injective")));
                }
                seen[v] = true;
            }
            if self.carriers[g.cat.src(m)] != self.carriers[d] {
                return Err(ActionError::LawViolation(format!(
                    "act[{m}] relates carriers of different sizes"
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, m: MorId, i: usize) -> usize {
        self.act[m][i]
    }

    pub fn total_size(&self) -> usize {
        self.carriers.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_size() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.carriers.len()).flat_map(move |x| (0..self.carriers[x]).map(move |i| (x, i)))
    }

    /// The empty action (initial object).
    pub fn initial(groupoid: &FiniteGroupoid) -> Self {
        GAction {
            groupoid: groupoid.clone(),
            carriers: vec![0; groupoid.object_count()],
            act: groupoid.cat.morphisms().map(|_| Vec::new()).collect(),
        }
    }

    /// Singleton carrier at every object (terminal object).
    pub fn terminal(groupoid: &FiniteGroupoid) -> Self {
        GAction {
            groupoid: groupoid.clone(),
            carriers: vec![1; groupoid.object_count()],
            act: groupoid.cat.morphisms().map(|_| vec![0]).collect(),
        }
    }

    /// k disjoint copies of the terminal object ("k constant points").
    pub fn constant(groupoid: &FiniteGroupoid, k: usize) -> Self {
        GAction {
            groupoid: groupoid.clone(),
            carriers: vec![k; groupoid.object_count()],
            act: groupoid.cat.morphisms().map(|_| (0..k).collect()).collect(),
        }
    }

    /// The representable coproduct: carrier at y is the disjoint union over
    /// all x of Hom(x, y), acting by post-composition. For a one-object
    /// groupoid this is the regular action of the vertex group on itself.
    pub fn regular(groupoid: &FiniteGroupoid) -> Self {
        let cat = &groupoid.cat;
        // carrier element j at object y = the j-th morphism with dst y
        let mut index: Vec<Vec<MorId>> = vec![Vec::new(); cat.object_count()];
        for m in cat.morphisms() {
            index[cat.dst(m)].push(m);
        }
        let position = |y: ObjId, m: MorId| index[y].iter().position(|&k| k == m).unwrap();
        let carriers: Vec<usize> = index.iter().map(|v| v.len()).collect();
        let act = cat
            .morphisms()
            .map(|g| {
                let (s, d) = (cat.src(g), cat.dst(g));
                index[s]
                    .iter()
                    .map(|&m| position(d, cat.compose_unchecked(g, m)))
                    .collect()
            })
            .collect();
        GAction {
            groupoid: groupoid.clone(),
            carriers,
            act,
        }
    }

    /// Transitive action on left cosets of a subgroup of the vertex group of
    /// one component; empty elsewhere. `subgroup` lists vertex-group element
    /// indices of the chosen component.
    pub fn transitive_on_cosets(
        groupoid: &FiniteGroupoid,
        component_index: usize,
        subgroup: &[usize],
    ) -> Self {
        let comps = groupoid.components();
        let comp = &comps.components[component_index];
        let cosets = comp.vertex.left_cosets(subgroup);
        let k = cosets.len();
        let coset_of = |v: usize| cosets.iter().position(|c| c.contains(&v)).unwrap();
        let n = groupoid.object_count();
        let carriers: Vec<usize> = (0..n)
            .map(|x| if comps.assignment[x] == component_index { k } else { 0 })
            .collect();
        let act = groupoid
            .cat
            .morphisms()
            .map(|m| {
                let (s, d) = (groupoid.cat.src(m), groupoid.cat.dst(m));
                if comps.assignment[s] != component_index || comps.assignment[d] != component_index
                {
                    return Vec::new();
                }
                // conjugate back to the base: v = span_d^{-1} . m . span_s
                let v = groupoid.cat.compose_chain(&[
                    groupoid.inv(comp.spanning[d]),
                    m,
                    comp.spanning[s],
                ]);
                let vi = comp.vertex_index(v);
                (0..k)
                    .map(|c| coset_of(comp.vertex.mul(vi, cosets[c][0])))
                    .collect()
            })
            .collect();
        GAction {
            groupoid: groupoid.clone(),
            carriers,
            act,
        }
    }

    /// Orbits with transport data; two elements share an orbit iff some
    /// morphism carries one to the other.
    pub fn orbits(&self) -> Vec<Orbit> {
        let g = &self.groupoid;
        let mut seen: Vec<Vec<bool>> = self.carriers.iter().map(|&c| vec![false; c]).collect();
        let mut out = Vec::new();
        for x in 0..self.carriers.len() {
            for i in 0..self.carriers[x] {
                if seen[x][i] {
                    continue;
                }
                let rep = (x, i);
                seen[x][i] = true;
                let mut elements = vec![rep];
                let mut transport = vec![((x, i), g.cat.identity(x))];
                let mut cursor = 0;
                while cursor < elements.len() {
                    let (y, j) = elements[cursor];
                    let to_here = transport[cursor].1;
                    cursor += 1;
                    for m in g.cat.morphisms() {
                        if g.cat.src(m) != y {
                            continue;
                        }
                        let z = g.cat.dst(m);
                        let v = self.act[m][j];
                        if !seen[z][v] {
                            seen[z][v] = true;
                            elements.push((z, v));
                            transport.push(((z, v), g.cat.compose_unchecked(m, to_here)));
                        }
                    }
                }
                out.push(Orbit {
                    rep,
                    elements,
                    transport,
                });
            }
        }
        out
    }

    /// Stabilizer of an element: endomorphisms of its object fixing it.
    pub fn stabilizer(&self, e: Elem) -> Vec<MorId> {
        self.groupoid
            .cat
            .hom(e.0, e.0)
            .iter()
            .copied()
            .filter(|&m| self.act[m][e.1] == e.1)
            .collect()
    }
}

/// One orbit of an action, with a transport morphism rep -> element for each
/// member.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub rep: Elem,
    pub elements: Vec<Elem>,
    /// (element, morphism g: rep.0 -> element.0 with act(g)(rep.1) = element.1)
    pub transport: Vec<(Elem, MorId)>,
}

impl Orbit {
    pub fn transport_to(&self, e: Elem) -> MorId {
        self.transport
            .iter()
            .find(|(x, _)| *x == e)
            .map(|(_, m)| *m)
            .expect("element in orbit")
    }
}

/// An equivariant map between actions of the same groupoid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GMap {
    pub source: ActionRef,
    pub target: ActionRef,
    /// components[x]: carrier_src(x) -> carrier_tgt(x).
    pub components: Vec<Vec<usize>>,
}

impl GMap {
    pub fn new(source: ActionRef, target: ActionRef, components: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let m = GMap {
            source,
            target,
            components,
        };
        m.check()?;
        Ok(m)
    }

    pub fn identity(a: &ActionRef) -> Self {
        GMap {
            source: a.clone(),
            target: a.clone(),
            components: a.carriers.iter().map(|&c| (0..c).collect()).collect(),
        }
    }

    pub fn check(&self) -> Result<(), ActionError> {
        let g = &self.source.groupoid;
        if g != &self.target.groupoid {
            return Err(ActionError::Malformed("source and target groupoids differ".into()));
        }
        if self.components.len() != g.object_count() {
            return Err(ActionError::Malformed("wrong number of components".into()));
        }
        for x in 0..g.object_count() {
            if self.components[x].len() != self.source.carriers[x] {
                return Err(ActionError::Malformed(format!("component {x} has wrong domain")));
            }
            if self.components[x].iter().any(|&v| v >= self.target.carriers[x]) {
                return Err(ActionError::Malformed(format!(
                    "component {x} maps outside the target carrier"
                )));
            }
        }
        for m in g.cat.morphisms() {
            let (s, d) = (g.cat.src(m), g.cat.dst(m));
            for i in 0..self.source.carriers[s] {
                let via_target = self.target.act[m][self.components[s][i]];
                let via_source = self.components[d][self.source.act[m][i]];
                if via_target != via_source {
                    return Err(ActionError::NotEquivariant(format!(
                        "component square fails at morphism {m}, element {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, e: Elem) -> Elem {
        (e.0, self.components[e.0][e.1])
    }

    pub fn compose(g: &GMap, f: &GMap) -> GMap {
        debug_assert_eq!(f.target.as_ref(), g.source.as_ref());
        GMap {
            source: f.source.clone(),
            target: g.target.clone(),
            components: f
                .components
                .iter()
                .enumerate()
                .map(|(x, comp)| comp.iter().map(|&i| g.components[x][i]).collect())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().enumerate().all(|(x, comp)| {
            let mut seen = vec![false; self.target.carriers[x]];
            comp.iter().all(|&v| {
                if seen[v] {
                    false
                } else {
                    seen[v] = true;
                    true
                }
            })
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().enumerate().all(|(x, comp)| {
            let mut seen = vec![false; self.target.carriers[x]];
            for &v in comp {
                seen[v] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_iso() {
            return None;
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(x, comp)| {
                let mut inv = vec![0usize; self.target.carriers[x]];
                for (i, &v) in comp.iter().enumerate() {
                    inv[v] = i;
                }
                inv
            })
            .collect();
        Some(GMap {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

/// Enumerates all equivariant maps A -> B, orbit by orbit.
pub fn enumerate_gmaps(a: &ActionRef, b: &ActionRef, budget: &Budget) -> Result<Vec<GMap>, BudgetError> {
    enumerate_gmaps_core(a, b, budget, |_, _| true, |_| true)
}

/// Enumerates equivariant maps passing a final filter.
pub fn enumerate_gmaps_filtered(
    a: &ActionRef,
    b: &ActionRef,
    budget: &Budget,
    admit: impl Fn(&GMap) -> bool,
) -> Result<Vec<GMap>, BudgetError> {
    enumerate_gmaps_core(a, b, budget, |_, _| true, admit)
}

/// Core enumeration: an equivariant map is freely determined by an admissible
/// image per orbit rep (any element whose stabilizer contains the rep's
/// stabilizer). `orbit_admit` prunes candidate images per orbit before the
/// cartesian product is taken; `admit` filters assembled maps.
pub fn enumerate_gmaps_core(
    a: &ActionRef,
    b: &ActionRef,
    budget: &Budget,
    orbit_admit: impl Fn(Elem, usize) -> bool,
    admit: impl Fn(&GMap) -> bool,
) -> Result<Vec<GMap>, BudgetError> {
    let counter = budget.with_context("enumerate_gmaps").counter();
    let orbits = a.orbits();
    let mut per_orbit: Vec<Vec<Vec<(Elem, usize)>>> = Vec::new(); // orbit -> choice -> assignments
    for orbit in &orbits {
        let (x, s) = orbit.rep;
        let stab = a.stabilizer((x, s));
        let mut choices = Vec::new();
        for t in 0..b.carriers[x] {
            counter.spend(1)?;
            if stab.iter().any(|&m| b.act[m][t] != t) {
                continue;
            }
            if !orbit_admit((x, s), t) {
                continue;
            }
            // extend along transport
            let assignment: Vec<(Elem, usize)> = orbit
                .transport
                .iter()
                .map(|&((y, j), m)| ((y, j), b.act[m][t]))
                .collect();
            choices.push(assignment);
        }
        per_orbit.push(choices);
    }
    if per_orbit.iter().any(|c| c.is_empty()) && !per_orbit.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_orbit.len()];
    'outer: loop {
        counter.spend(1)?;
        let mut components: Vec<Vec<usize>> =
            a.carriers.iter().map(|&c| vec![usize::MAX; c]).collect();
        for (k, &i) in idx.iter().enumerate() {
            for &((y, j), v) in &per_orbit[k][i] {
                components[y][j] = v;
            }
        }
        let gm = GMap {
            source: a.clone(),
            target: b.clone(),
            components,
        };
        debug_assert!(gm.check().is_ok(), "orbit extension is equivariant");
        if admit(&gm) {
            out.push(gm);
        }
        if idx.is_empty() {
            break;
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < per_orbit[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(out)
}

/// All equivariant isomorphisms A -> B.
pub fn enumerate_giso(a: &ActionRef, b: &ActionRef, budget: &Budget) -> Result<Vec<GMap>, BudgetError> {
    if a.carriers != b.carriers {
        return Ok(Vec::new());
    }
    enumerate_gmaps_filtered(a, b, budget, |m| m.is_iso())
}

/// Searches for one equivariant isomorphism by orbit matching.
pub fn find_isomorphism(a: &ActionRef, b: &ActionRef) -> Option<GMap> {
    if a.carriers != b.carriers {
        return None;
    }
    let a_orbits = a.orbits();
    let mut b_orbits = b.orbits();
    let mut components: Vec<Vec<usize>> = a.carriers.iter().map(|&c| vec![usize::MAX; c]).collect();
    for orbit in &a_orbits {
        let (x, s) = orbit.rep;
        let stab = a.stabilizer((x, s));
        let mut matched = None;
        'search: for (bi, borbit) in b_orbits.iter().enumerate() {
            if borbit.elements.len() != orbit.elements.len() {
                continue;
            }
            // find an element of borbit at object x with the same stabilizer
            for &(y, t) in &borbit.elements {
                if y != x {
                    continue;
                }
                let bstab = b.stabilizer((y, t));
                if bstab == stab {
                    matched = Some((bi, t));
                    break 'search;
                }
            }
        }
        let (bi, t) = matched?;
        for &((y, j), m) in &orbit.transport {
            components[y][j] = b.act[m][t];
        }
        b_orbits.remove(bi);
    }
    let gm = GMap {
        source: a.clone(),
        target: b.clone(),
        components,
    };
    if gm.check().is_ok() && gm.is_iso() {
        Some(gm)
    } else {
        None
    }
}

/// Seeded random action: a random multiset of transitive orbit types.
pub fn random_action(
    groupoid: &FiniteGroupoid,
    max_orbits: usize,
    rng: &mut impl rand::Rng,
) -> GAction {
    use super::colimits::coproduct;
    let comps = groupoid.components();
    let n_orbits = rng.gen_range(0..=max_orbits);
    let mut acc = GAction::initial(groupoid);
    for _ in 0..n_orbits {
        let ci = rng.gen_range(0..comps.count());
        let classes = comps.components[ci].vertex.subgroup_classes();
        let h = &classes[rng.gen_range(0..classes.len())];
        let orbit = GAction::transitive_on_cosets(groupoid, ci, h);
        acc = coproduct(&Arc::new(acc), &Arc::new(orbit)).object.as_ref().clone();
    }
    acc
}

/// Seeded random equivariant map between two actions (None if Hom is empty).
pub fn random_gmap(
    a: &ActionRef,
    b: &ActionRef,
    budget: &Budget,
    rng: &mut impl rand::Rng,
) -> Option<GMap> {
    let orbits = a.orbits();
    let mut components: Vec<Vec<usize>> = a.carriers.iter().map(|&c| vec![usize::MAX; c]).collect();
    let _ = budget;
    for orbit in &orbits {
        let (x, s) = orbit.rep;
        let stab = a.stabilizer((x, s));
        let candidates: Vec<usize> = (0..b.carriers[x])
            .filter(|&t| stab.iter().all(|&m| b.act[m][t] == t))
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let t = candidates[rng.gen_range(0..candidates.len())];
        for &((y, j), m) in &orbit.transport {
            components[y][j] = b.act[m][t];
        }
    }
    let gm = GMap {
        source: a.clone(),
        target: b.clone(),
        components,
    };
    debug_assert!(gm.check().is_ok());
    Some(gm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    fn c2() -> FiniteGroupoid {
        presets::groupoid("C2").unwrap()
    }

    #[test]
    fn regular_c2_is_one_free_orbit() {
        let r = GAction::regular(&c2());
        r.check().unwrap();
        assert_eq!(r.carriers, vec![2]);
        let orbits = r.orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(r.stabilizer((0, 0)).len(), 1);
    }

    #[test]
    fn transitive_on_cosets_matches_regular_and_point() {
        let g = c2();
        let regular = GAction::transitive_on_cosets(&g, 0, &[0]);
        regular.check().unwrap();
        assert_eq!(regular.carriers, vec![2]);
        let point = GAction::transitive_on_cosets(&g, 0, &[0, 1]);
        point.check().unwrap();
        assert_eq!(point.carriers, vec![1]);
    }

    #[test]
    fn gmap_counts_between_small_c2_sets() {
        let budget = Budget::default();
        let g = c2();
        let r = Arc::new(GAction::regular(&g));
        let t = Arc::new(GAction::terminal(&g));
        let two = Arc::new(GAction::constant(&g, 2));
        // maps R -> R: right translations, 2 of them
        assert_eq!(enumerate_gmaps(&r, &r, &budget).unwrap().len(), 2);
        // maps R -> point: 1; point -> R: none (stabilizer obstruction)
        assert_eq!(enumerate_gmaps(&r, &t, &budget).unwrap().len(), 1);
        assert_eq!(enumerate_gmaps(&t, &r, &budget).unwrap().len(), 0);
        // maps 2-point trivial -> 2-point trivial: all functions, 4
        assert_eq!(enumerate_gmaps(&two, &two, &budget).unwrap().len(), 4);
    }

    #[test]
    fn find_isomorphism_matches_orbit_types() {
        let g = c2();
        let r = Arc::new(GAction::regular(&g));
        let r2 = Arc::new(GAction::regular(&g));
        assert!(find_isomorphism(&r, &r2).is_some());
        let t2 = Arc::new(GAction::constant(&g, 2));
        assert!(find_isomorphism(&r, &t2).is_none());
    }

    #[test]
    fn multi_component_regular_action() {
        let g = presets::coproduct(&["C2".into(), "C3".into()]).unwrap();
        let r = GAction::regular(&g);
        r.check().unwrap();
        assert_eq!(r.carriers, vec![2, 3]);
        assert_eq!(r.orbits().len(), 2);
    }
}
