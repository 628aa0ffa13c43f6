//! Finite groupoids: categories with an inverse table, plus the connected
//! component / vertex group structure everything downstream leans on.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{CategoryError, FiniteCategory, MorId, ObjId, RawCategory};
use super::group::FiniteGroup;

/// A finite groupoid: a validated category plus a two-sided inverse per morphism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteGroupoid {
    pub cat: Arc<FiniteCategory>,
    pub inverse: Vec<MorId>,
}

impl FiniteGroupoid {
    /// Validates the inverse laws on top of category validation.
    pub fn validate(raw: &RawCategory, inverse: Vec<MorId>) -> Result<Self, CategoryError> {
        let cat = FiniteCategory::validate(raw)?;
        Self::from_category(cat, inverse)
    }

    pub fn from_category(cat: FiniteCategory, inverse: Vec<MorId>) -> Result<Self, CategoryError> {
        let m = cat.morphism_count();
        if inverse.len() != m {
            return Err(CategoryError::MalformedTable(format!(
                "expected {m} inverse entries, got {}",
                inverse.len()
            )));
        }
        for f in 0..m {
            let g = inverse[f];
            if g >= m {
                return Err(CategoryError::MalformedTable(format!(
                    "inverse of morphism {f} is dangling id {g}"
                )));
            }
            let (a, b) = (cat.src(f), cat.dst(f));
            if cat.src(g) != b || cat.dst(g) != a {
                return Err(CategoryError::LawViolation(format!(
                    "inverse of {f} has wrong endpoints"
                )));
            }
            if cat.compose(g, f) != Some(cat.identity(a)) {
                return Err(CategoryError::LawViolation(format!(
                    "identity law at groupoid promotion: inverse({f}) . {f} != id_src"
                )));
            }
            if cat.compose(f, g) != Some(cat.identity(b)) {
                return Err(CategoryError::LawViolation(format!(
                    "identity law at groupoid promotion: {f} . inverse({f}) != id_dst"
                )));
            }
        }
        Ok(FiniteGroupoid {
            cat: Arc::new(cat),
            inverse,
        })
    }

    /// Promotes a category in which every morphism happens to be invertible.
    pub fn promote(cat: FiniteCategory) -> Result<Self, CategoryError> {
        let inverse: Result<Vec<MorId>, CategoryError> = cat
            .morphisms()
            .map(|f| {
                cat.inverse_of(f).ok_or_else(|| {
                    CategoryError::LawViolation(format!("morphism {f} has no two-sided inverse"))
                })
            })
            .collect();
        Self::from_category(cat, inverse?)
    }

    pub fn object_count(&self) -> usize {
        self.cat.object_count()
    }

    pub fn morphism_count(&self) -> usize {
        self.cat.morphism_count()
    }

    pub fn inv(&self, f: MorId) -> MorId {
        self.inverse[f]
    }

    /// One object per group element: the delooping B G.
    pub fn delooping(g: &FiniteGroup) -> Self {
        let n = g.order();
        let raw = RawCategory {
            objects: 1,
            morphisms: vec![(0, 0); n],
            identity: vec![0],
            compose: {
                let mut entries = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        entries.push((a, b, g.mul(a, b)));
                    }
                }
                entries
            },
        };
        let inverse = (0..n).map(|a| g.inv(a)).collect();
        Self::validate(&raw, inverse).expect("delooping of a group is a groupoid")
    }

    /// Disjoint union; objects and morphisms of `b` are shifted after `a`.
    pub fn coproduct(a: &FiniteGroupoid, b: &FiniteGroupoid) -> Self {
        let (na, ma) = (a.object_count(), a.morphism_count());
        let mut morphisms: Vec<(ObjId, ObjId)> = (0..ma).map(|f| (a.cat.src(f), a.cat.dst(f))).collect();
        morphisms.extend((0..b.morphism_count()).map(|f| (b.cat.src(f) + na, b.cat.dst(f) + na)));
        let mut identity: Vec<MorId> = (0..na).map(|x| a.cat.identity(x)).collect();
        identity.extend((0..b.object_count()).map(|x| b.cat.identity(x) + ma));
        let mut compose = Vec::new();
        for g in 0..ma {
            for f in 0..ma {
                if let Some(gf) = a.cat.compose(g, f) {
                    compose.push((g, f, gf));
                }
            }
        }
        for g in 0..b.morphism_count() {
            for f in 0..b.morphism_count() {
                if let Some(gf) = b.cat.compose(g, f) {
                    compose.push((g + ma, f + ma, gf + ma));
                }
            }
        }
        let raw = RawCategory {
            objects: na + b.object_count(),
            morphisms,
            identity,
            compose,
        };
        let mut inverse: Vec<MorId> = a.inverse.clone();
        inverse.extend(b.inverse.iter().map(|&f| f + ma));
        Self::validate(&raw, inverse).expect("coproduct of groupoids is a groupoid")
    }

    /// The groupoid with n objects and only identities.
    pub fn discrete(n: usize) -> Self {
        Self::from_category(FiniteCategory::discrete(n), (0..n).collect()).unwrap()
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// Connected components with skeleton data.
    pub fn components(&self) -> Components {
        let n = self.object_count();
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let idx = components.len();
            // BFS over objects along morphisms, recording a path morphism
            // base -> x for each reached object.
            let mut objects = vec![start];
            let mut path = vec![(start, self.cat.identity(start))];
            comp[start] = idx;
            let mut cursor = 0;
            while cursor < path.len() {
                let (x, to_x) = path[cursor];
                cursor += 1;
                for f in self.cat.morphisms() {
                    let (s, d) = (self.cat.src(f), self.cat.dst(f));
                    let step = if s == x {
                        f
                    } else if d == x {
                        self.inverse[f]
                    } else {
                        continue;
                    };
                    let y = self.cat.dst(step);
                    if comp[y] == usize::MAX {
                        comp[y] = idx;
                        objects.push(y);
                        path.push((y, self.cat.compose_unchecked(step, to_x)));
                    }
                }
            }
            objects.sort_unstable();
            let mut spanning = vec![self.cat.identity(start); n];
            for &(x, m) in &path {
                spanning[x] = m;
            }
            let vertex_mors = reorder_vertex_mors(&self.cat, self.cat.hom(start, start));
            let vertex = vertex_group_table(&self.cat, &vertex_mors);
            components.push(ComponentData {
                base: start,
                objects,
                spanning,
                vertex_mors,
                vertex,
            });
        }
        Components {
            assignment: comp,
            components,
        }
    }
}

/// Skeleton data for one connected component.
#[derive(Debug, Clone)]
pub struct ComponentData {
    /// Chosen base object (smallest id in the component).
    pub base: ObjId,
    /// Objects of the component, ascending.
    pub objects: Vec<ObjId>,
    /// spanning[x] is a morphism base -> x for every x in the component
    /// (identity at the base; unspecified for objects outside).
    pub spanning: Vec<MorId>,
    /// Morphisms base -> base, in the order used by `vertex`.
    pub vertex_mors: Vec<MorId>,
    /// The vertex group Aut(base) as a multiplication table over `vertex_mors` indices.
    pub vertex: FiniteGroup,
}

impl ComponentData {
    /// Index of a base endomorphism in the vertex group table.
    pub fn vertex_index(&self, f: MorId) -> usize {
        self.vertex_mors.iter().position(|&g| g == f).expect("a base endomorphism")
    }
}

/// Partition of objects into connected components.
#[derive(Debug, Clone)]
pub struct Components {
    /// component index per object.
    pub assignment: Vec<usize>,
    pub components: Vec<ComponentData>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// Multiplication table of Aut(base) over an identity-first morphism list.
fn vertex_group_table(cat: &FiniteCategory, mors: &[MorId]) -> FiniteGroup {
    let index_of = |f: MorId| mors.iter().position(|&g| g == f).unwrap();
    let k = mors.len();
    let mut mul = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            mul[a][b] = index_of(cat.compose_unchecked(mors[a], mors[b]));
        }
    }
    FiniteGroup::from_table("vertex", mul).expect("vertex group laws follow from groupoid laws")
}

/// Puts the identity morphism at index 0 so vertex-group element 0 is the identity.
fn reorder_vertex_mors(cat: &FiniteCategory, mors: &[MorId]) -> Vec<MorId> {
    let mut mors = mors.to_vec();
    let id_pos = mors.iter().position(|&f| cat.is_identity(f)).unwrap();
    mors.swap(0, id_pos);
    mors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn discrete_three_objects_three_components() {
        let g = FiniteGroupoid::discrete(3);
        let comps = g.components();
        assert_eq!(comps.count(), 3);
        for c in &comps.components {
            assert_eq!(c.vertex.order(), 1);
        }
    }

    #[test]
    fn coproduct_of_bc2_and_bc3() {
        let g = FiniteGroupoid::coproduct(
            &presets::groupoid("C2").unwrap(),
            &presets::groupoid("C3").unwrap(),
        );
        let comps = g.components();
        assert_eq!(comps.count(), 2);
        let mut orders: Vec<usize> = comps.components.iter().map(|c| c.vertex.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn idempotent_non_identity_fails_groupoid_promotion() {
        // s.s = s with s != e: valid category, invertibility fails.
        let raw = RawCategory {
            objects: 1,
            morphisms: vec![(0, 0), (0, 0)],
            identity: vec![0],
            compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        };
        let cat = FiniteCategory::validate(&raw).unwrap();
        assert!(matches!(
            FiniteGroupoid::promote(cat.clone()),
            Err(CategoryError::LawViolation(_))
        ));
        // Explicit inverse table s^-1 = s names the broken identity law.
        assert!(matches!(
            FiniteGroupoid::from_category(cat, vec![0, 1]),
            Err(CategoryError::LawViolation(m)) if m.contains("identity law")
        ));
    }

    #[test]
    fn spanning_paths_reach_every_object() {
        let g = presets::groupoid("S3").unwrap();
        let pair = FiniteGroupoid::coproduct(&g, &FiniteGroupoid::discrete(2));
        let comps = pair.components();
        for c in &comps.components {
            for &x in &c.objects {
                let m = c.spanning[x];
                assert_eq!(pair.cat.src(m), c.base);
                assert_eq!(pair.cat.dst(m), x);
            }
        }
    }
}
