//! Decidable equivalence: fully-faithful + essentially-surjective certificates
//! for explicit functors, and equivalence of finite groupoids by skeleton
//! comparison.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetError};
use super::category::{FiniteCategory, MorId, ObjId};
use super::functor::Functor;
use super::groupoid::FiniteGroupoid;

/// Evidence that a functor is an equivalence of categories.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub forward: Functor,
    /// Per target object: (source object, iso F(source) -> target) exhibiting
    /// essential surjectivity.
    pub essential_surjectivity: Vec<(ObjId, MorId)>,
    /// Per source object pair (a, b): the hom-set bijection as the image list
    /// of Hom(a, b) in Hom(F a, F b), verified bijective.
    pub hom_bijections: Vec<HomBijection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomBijection {
    pub src_pair: (ObjId, ObjId),
    pub images: Vec<MorId>,
}

/// Why a functor fails to be an equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivalenceRefutation {
    NotFaithful {
        pair: (ObjId, ObjId),
        collided: (MorId, MorId),
    },
    NotFull {
        pair: (ObjId, ObjId),
        unhit: MorId,
    },
    NotEssentiallySurjective {
        target: ObjId,
    },
}

impl std::fmt::Display for EquivalenceRefutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquivalenceRefutation::NotFaithful { pair, collided } => write!(
                f,
                "not faithful on hom({},{}): morphisms {} and {} collide",
                pair.0, pair.1, collided.0, collided.1
            ),
            EquivalenceRefutation::NotFull { pair, unhit } => write!(
                f,
                "not full on hom({},{}): morphism {} is not hit",
                pair.0, pair.1, unhit
            ),
            EquivalenceRefutation::NotEssentiallySurjective { target } => {
                write!(f, "no source object maps isomorphically onto target object {target}")
            }
        }
    }
}

pub type EquivalenceVerdict = Result<EquivalenceWitness, EquivalenceRefutation>;

/// Decides whether `f` is an equivalence, producing a witness or a refutation.
pub fn decide_equivalence(f: &Functor) -> EquivalenceVerdict {
    let (c, d) = (f.src.as_ref(), f.dst.as_ref());
    let mut hom_bijections = Vec::new();
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let source_hom = c.hom(a, b);
            let target_hom = d.hom(f.omap[a], f.omap[b]);
            let images: Vec<MorId> = source_hom.iter().map(|&m| f.mmap[m]).collect();
            for i in 0..images.len() {
                for j in (i + 1)..images.len() {
                    if images[i] == images[j] {
                        return Err(EquivalenceRefutation::NotFaithful {
                            pair: (a, b),
                            collided: (source_hom[i], source_hom[j]),
                        });
                    }
                }
            }
            if let Some(&unhit) = target_hom.iter().find(|&&m| !images.contains(&m)) {
                return Err(EquivalenceRefutation::NotFull { pair: (a, b), unhit });
            }
            hom_bijections.push(HomBijection {
                src_pair: (a, b),
                images,
            });
        }
    }
    let mut essential_surjectivity = Vec::new();
    for t in 0..d.object_count() {
        let hit = (0..c.object_count()).find_map(|a| {
            d.hom(f.omap[a], t)
                .iter()
                .copied()
                .find(|&m| d.is_iso(m))
                .map(|m| (a, m))
        });
        match hit {
            Some(pair) => essential_surjectivity.push(pair),
            None => return Err(EquivalenceRefutation::NotEssentiallySurjective { target: t }),
        }
    }
    Ok(EquivalenceWitness {
        forward: f.clone(),
        essential_surjectivity,
        hom_bijections,
    })
}

/// Outcome of comparing two finite groupoids up to equivalence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum GroupoidComparison {
    Equivalent(EquivalenceWitness),
    NotEquivalent(GroupoidRefutation),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupoidRefutation {
    ComponentCountMismatch { left: usize, right: usize },
    /// No bijection of components with isomorphic vertex groups exists.
    NoVertexGroupMatching { unmatched_component: usize },
}

impl std::fmt::Display for GroupoidRefutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupoidRefutation::ComponentCountMismatch { left, right } => {
                write!(f, "component counts differ: {left} vs {right}")
            }
            GroupoidRefutation::NoVertexGroupMatching { unmatched_component } => write!(
                f,
                "no isomorphic vertex group found for component {unmatched_component}"
            ),
        }
    }
}

/// Decides equivalence of finite groupoids: component counts must match under
/// a bijection with isomorphic vertex groups; returns an explicit functor
/// witness (checked by `decide_equivalence`).
pub fn groupoids_equivalent(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    budget: &Budget,
) -> Result<GroupoidComparison, BudgetError> {
    let gc = g.components();
    let hc = h.components();
    if gc.count() != hc.count() {
        return Ok(GroupoidComparison::NotEquivalent(
            GroupoidRefutation::ComponentCountMismatch {
                left: gc.count(),
                right: hc.count(),
            },
        ));
    }
    // Greedy matching with backtracking over vertex-group isomorphism.
    let k = gc.count();
    let mut used = vec![false; k];
    let mut matching: Vec<(usize, Vec<usize>)> = Vec::with_capacity(k);
    fn assign(
        i: usize,
        k: usize,
        gc: &super::groupoid::Components,
        hc: &super::groupoid::Components,
        used: &mut Vec<bool>,
        matching: &mut Vec<(usize, Vec<usize>)>,
        budget: &Budget,
    ) -> Result<Option<usize>, BudgetError> {
        if i == k {
            return Ok(None);
        }
        for j in 0..k {
            if used[j] {
                continue;
            }
            if let Some(iso) = gc.components[i].vertex.isomorphism_to(&hc.components[j].vertex, budget)? {
                used[j] = true;
                matching.push((j, iso));
                match assign(i + 1, k, gc, hc, used, matching, budget)? {
                    None => return Ok(None),
                    Some(fail) => {
                        let _ = fail;
                        used[j] = false;
                        matching.pop();
                    }
                }
            }
        }
        Ok(Some(i))
    }
    if let Some(unmatched) = assign(0, k, &gc, &hc, &mut used, &mut matching, budget)? {
        return Ok(GroupoidComparison::NotEquivalent(
            GroupoidRefutation::NoVertexGroupMatching {
                unmatched_component: unmatched,
            },
        ));
    }
    // Build the explicit functor: each G-component collapses onto the base of
    // its matched H-component via the vertex-group isomorphism.
    let mut omap = vec![0usize; g.object_count()];
    let mut mmap = vec![0usize; g.morphism_count()];
    for (ci, comp) in gc.components.iter().enumerate() {
        let (hj, iso) = &matching[ci];
        let hcomp = &hc.components[*hj];
        for &x in &comp.objects {
            omap[x] = hcomp.base;
        }
        for m in g.cat.morphisms() {
            let (a, b) = (g.cat.src(m), g.cat.dst(m));
            if gc.assignment[a] != ci {
                continue;
            }
            let v = g
                .cat
                .compose_chain(&[g.inv(comp.spanning[b]), m, comp.spanning[a]]);
            let v_idx = comp.vertex_index(v);
            mmap[m] = hcomp.vertex_mors[iso[v_idx]];
        }
    }
    let functor = Functor {
        src: g.cat.clone(),
        dst: h.cat.clone(),
        omap,
        mmap,
    };
    debug_assert!(functor.check_laws().is_ok());
    match decide_equivalence(&functor) {
        Ok(w) => Ok(GroupoidComparison::Equivalent(w)),
        Err(r) => panic!("constructed matching functor should be an equivalence: {r}"),
    }
}

/// Convenience: equivalence check for a functor presented as raw maps between
/// groupoids (used by reconstruction tests).
pub fn functor_between(
    src: &FiniteGroupoid,
    dst: &FiniteGroupoid,
    omap: Vec<ObjId>,
    mmap: Vec<MorId>,
) -> Functor {
    Functor {
        src: src.cat.clone(),
        dst: dst.cat.clone(),
        omap,
        mmap,
    }
}

/// Explicit category handle alias used around the crate.
pub type CatRef = Arc<FiniteCategory>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn identity_is_an_equivalence() {
        let c = presets::groupoid("S3").unwrap().cat;
        let w = decide_equivalence(&Functor::identity(&c)).unwrap();
        assert_eq!(w.essential_surjectivity.len(), 1);
    }

    #[test]
    fn trivial_endofunctor_of_bc2_is_refuted() {
        let c = presets::groupoid("C2").unwrap().cat;
        let triv = Functor {
            src: c.clone(),
            dst: c.clone(),
            omap: vec![0],
            mmap: vec![0, 0],
        };
        match decide_equivalence(&triv) {
            Err(EquivalenceRefutation::NotFaithful { .. }) => {}
            other => panic!("expected NotFaithful, got {other:?}"),
        }
    }

    #[test]
    fn relabeled_coproducts_are_equivalent() {
        let budget = Budget::default();
        let a = presets::coproduct(&["C2".into(), "C2".into()]).unwrap();
        let b = presets::coproduct(&["C2".into(), "C2".into()]).unwrap();
        match groupoids_equivalent(&a, &b, &budget).unwrap() {
            GroupoidComparison::Equivalent(_) => {}
            GroupoidComparison::NotEquivalent(r) => panic!("expected equivalence: {r}"),
        }
    }

    #[test]
    fn c4_vs_klein_four_is_refuted() {
        let budget = Budget::default();
        let c4 = presets::groupoid("C4").unwrap();
        let v4 = presets::groupoid("V4").unwrap();
        match groupoids_equivalent(&c4, &v4, &budget).unwrap() {
            GroupoidComparison::NotEquivalent(GroupoidRefutation::NoVertexGroupMatching { .. }) => {}
            other => panic!("expected vertex group mismatch, got {other:?}"),
        }
    }

    #[test]
    fn component_count_mismatch_is_refuted() {
        let budget = Budget::default();
        let a = presets::groupoid("C2").unwrap();
        let b = presets::coproduct(&["C2".into(), "C2".into()]).unwrap();
        match groupoids_equivalent(&a, &b, &budget).unwrap() {
            GroupoidComparison::NotEquivalent(GroupoidRefutation::ComponentCountMismatch {
                left: 1,
                right: 2,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
