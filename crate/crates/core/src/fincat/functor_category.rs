//! Materialized functor categories Hom(C, D).

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::{Budget, BudgetError};
use super::category::{CategoryError, FiniteCategory, MorId, ObjId};
use super::functor::{enumerate_functors, enumerate_natural_transformations, Functor, NatTransform};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctorCategoryError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Hom(C, D) as an explicit finite category: objects are functors, morphisms
/// are natural transformations, composition is vertical.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: Arc<FiniteCategory>,
    pub functors: Vec<Functor>,
    /// (source functor index, target functor index, transformation) per morphism id.
    pub transformations: Vec<(usize, usize, NatTransform)>,
}

impl FunctorCategory {
    pub fn build(
        c: &Arc<FiniteCategory>,
        d: &Arc<FiniteCategory>,
        budget: &Budget,
    ) -> Result<Self, FunctorCategoryError> {
        let functors = enumerate_functors(c, d, budget)?;
        let mut transformations: Vec<(usize, usize, NatTransform)> = Vec::new();
        let mut identity = Vec::with_capacity(functors.len());
        for (i, f) in functors.iter().enumerate() {
            for (j, g) in functors.iter().enumerate() {
                let nats = enumerate_natural_transformations(f, g, budget)?;
                for nt in nats {
                    if i == j && nt == NatTransform::identity(f) {
                        identity.push(transformations.len());
                    }
                    transformations.push((i, j, nt));
                }
            }
        }
        debug_assert_eq!(identity.len(), functors.len());
        // identity[k] currently records ids in discovery order grouped by (i,j);
        // re-sort to per-object order.
        let mut id_of = vec![usize::MAX; functors.len()];
        for &t in &identity {
            id_of[transformations[t].0] = t;
        }
        let lookup: HashMap<(usize, usize, Vec<MorId>), MorId> = transformations
            .iter()
            .enumerate()
            .map(|(t, (i, j, nt))| ((*i, *j, nt.components.clone()), t))
            .collect();
        let morphisms: Vec<(ObjId, ObjId)> =
            transformations.iter().map(|(i, j, _)| (*i, *j)).collect();
        let target = d.as_ref().clone();
        let trans = transformations.clone();
        let cat = FiniteCategory::from_parts_checked(
            functors.len(),
            morphisms,
            id_of,
            move |g_id, f_id| {
                let (fi, _fj, fnt) = &trans[f_id];
                let (_gi, gj, gnt) = &trans[g_id];
                let v = NatTransform::vertical(&target, gnt, fnt);
                lookup[&(*fi, *gj, v.components.clone())]
            },
        )?;
        Ok(FunctorCategory {
            cat: Arc::new(cat),
            functors,
            transformations,
        })
    }

    /// Finds the object id of a functor (on-the-nose equality).
    pub fn object_of(&self, f: &Functor) -> Option<ObjId> {
        self.functors.iter().position(|g| g == f)
    }

    /// Finds the morphism id of a transformation between two known objects.
    pub fn morphism_of(&self, i: usize, j: usize, nt: &NatTransform) -> Option<MorId> {
        self.transformations
            .iter()
            .position(|(a, b, t)| *a == i && *b == j && t == nt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn hom_bc2_bc2_has_two_objects_four_morphisms() {
        let budget = Budget::default();
        let c = presets::groupoid("C2").unwrap().cat;
        let fc = FunctorCategory::build(&c, &c, &budget).unwrap();
        assert_eq!(fc.cat.object_count(), 2);
        assert_eq!(fc.cat.morphism_count(), 4);
        // 2 endo-transformations on each object, none across
        for (i, j, _) in &fc.transformations {
            assert_eq!(i, j);
        }
    }

    #[test]
    fn hom_bc2_bc3_is_one_object_three_morphisms() {
        let budget = Budget::default();
        let c2 = presets::groupoid("C2").unwrap().cat;
        let c3 = presets::groupoid("C3").unwrap().cat;
        let fc = FunctorCategory::build(&c2, &c3, &budget).unwrap();
        assert_eq!(fc.cat.object_count(), 1);
        assert_eq!(fc.cat.morphism_count(), 3);
    }

    #[test]
    fn hom_terminal_d_is_isomorphic_to_d() {
        // evaluation at the unique object is a bijective relabeling
        let budget = Budget::default();
        let term = Arc::new(FiniteCategory::terminal());
        let d = presets::groupoid("S3").unwrap().cat;
        let fc = FunctorCategory::build(&term, &d, &budget).unwrap();
        assert_eq!(fc.cat.object_count(), d.object_count());
        assert_eq!(fc.cat.morphism_count(), d.morphism_count());
        let omap: HashMap<ObjId, ObjId> = (0..fc.cat.object_count())
            .map(|i| (i, fc.functors[i].omap[0]))
            .collect();
        let mmap: HashMap<MorId, MorId> = fc
            .transformations
            .iter()
            .enumerate()
            .map(|(t, (_, _, nt))| (t, nt.components[0]))
            .collect();
        assert!(fc.cat.is_isomorphic_on_the_nose(&d, &omap, &mmap));
    }

    #[test]
    fn vertical_composition_is_associative() {
        // inherited check via validate() inside build; spot-check composition
        let budget = Budget::default();
        let c = presets::groupoid("C3").unwrap().cat;
        let fc = FunctorCategory::build(&c, &c, &budget).unwrap();
        let m = fc.cat.morphism_count();
        for h in 0..m {
            for g in 0..m {
                if fc.cat.dst(g) != fc.cat.src(h) {
                    continue;
                }
                let hg = fc.cat.compose_unchecked(h, g);
                for f in 0..m {
                    if fc.cat.dst(f) != fc.cat.src(g) {
                        continue;
                    }
                    let gf = fc.cat.compose_unchecked(g, f);
                    assert_eq!(fc.cat.compose(h, gf), fc.cat.compose(hg, f));
                }
            }
        }
    }
}
