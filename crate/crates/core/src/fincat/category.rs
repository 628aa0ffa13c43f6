//! Finite categories as explicit composition tables.
//!
//! Objects and morphisms are dense integer ids. The composition table is a
//! total m×m array with a sentinel for non-composable pairs, so exhaustive law
//! checking is a linear scan of the table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type ObjId = usize;
pub type MorId = usize;

const NONE: u32 = u32::MAX;

/// Hard cap on morphism count for the dense m×m table (16M entries).
pub const DENSE_MORPHISM_CAP: usize = 4096;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("law violation: {0}")]
    LawViolation(String),
    #[error("category too large for dense tables: {morphisms} morphisms (cap {cap})")]
    TooLarge { morphisms: usize, cap: usize },
}

/// Raw description of a category, as read from files or built by hand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: usize,
    /// (src, dst) per morphism id.
    pub morphisms: Vec<(ObjId, ObjId)>,
    /// identity morphism id per object.
    pub identity: Vec<MorId>,
    /// composition entries as (g, f, g_after_f) triples.
    pub compose: Vec<(MorId, MorId, MorId)>,
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
    objects: usize,
    mor_src: Vec<ObjId>,
    mor_dst: Vec<ObjId>,
    identity: Vec<MorId>,
    table: Vec<u32>,
    /// hom[a*objects+b] lists morphisms a -> b.
    hom: Vec<Vec<MorId>>,
}

impl FiniteCategory {
    /// Validates a raw description: ids in range, composition defined exactly
    /// on composable pairs, identity and associativity laws.
    pub fn validate(raw: &RawCategory) -> Result<Self, CategoryError> {
        let n = raw.objects;
        let m = raw.morphisms.len();
        if m > DENSE_MORPHISM_CAP {
            return Err(CategoryError::TooLarge {
                morphisms: m,
                cap: DENSE_MORPHISM_CAP,
            });
        }
        if raw.identity.len() != n {
            return Err(CategoryError::MalformedTable(format!(
                "expected {n} identity entries, got {}",
                raw.identity.len()
            )));
        }
        for (i, &(s, d)) in raw.morphisms.iter().enumerate() {
            if s >= n || d >= n {
                return Err(CategoryError::MalformedTable(format!(
                    "morphism {i} has dangling object id ({s} -> {d}, {n} objects)"
                )));
            }
        }
        for (x, &e) in raw.identity.iter().enumerate() {
            if e >= m {
                return Err(CategoryError::MalformedTable(format!(
                    "identity of object {x} is dangling morphism id {e}"
                )));
            }
            if raw.morphisms[e] != (x, x) {
                return Err(CategoryError::MalformedTable(format!(
                    "identity of object {x} is not an endomorphism of {x}"
                )));
            }
        }
        let mut table = vec![NONE; m * m];
        for &(g, f, gf) in &raw.compose {
            if g >= m || f >= m || gf >= m {
                return Err(CategoryError::MalformedTable(format!(
                    "composition entry ({g},{f},{gf}) has dangling morphism id"
                )));
            }
            if table[g * m + f] != NONE && table[g * m + f] != gf as u32 {
                return Err(CategoryError::MalformedTable(format!(
                    "composition of ({g},{f}) defined twice with different values"
                )));
            }
            table[g * m + f] = gf as u32;
        }
        let mor_src: Vec<ObjId> = raw.morphisms.iter().map(|&(s, _)| s).collect();
        let mor_dst: Vec<ObjId> = raw.morphisms.iter().map(|&(_, d)| d).collect();
        // compose(g, f) defined iff dst(f) = src(g); then src/dst line up.
        for g in 0..m {
            for f in 0..m {
                let entry = table[g * m + f];
                if mor_dst[f] == mor_src[g] {
                    if entry == NONE {
                        return Err(CategoryError::LawViolation(format!(
                            "missing composite: ({g},{f}) is composable but undefined"
                        )));
                    }
                    let gf = entry as usize;
                    if mor_src[gf] != mor_src[f] || mor_dst[gf] != mor_dst[g] {
                        return Err(CategoryError::LawViolation(format!(
                            "composite of ({g},{f}) has wrong endpoints"
                        )));
                    }
                } else if entry != NONE {
                    return Err(CategoryError::LawViolation(format!(
                        "composition of ({g},{f}) defined on a non-composable pair"
                    )));
                }
            }
        }
        let cat = FiniteCategory {
            objects: n,
            mor_src,
            mor_dst,
            identity: raw.identity.clone(),
            table,
            hom: Vec::new(),
        };
        for f in 0..m {
            let left = cat.table[cat.identity[cat.mor_dst[f]] * m + f] as usize;
            let right = cat.table[f * m + cat.identity[cat.mor_src[f]]] as usize;
            if left != f {
                return Err(CategoryError::LawViolation(format!(
                    "identity law: id_dst . {f} = {left}, expected {f}"
                )));
            }
            if right != f {
                return Err(CategoryError::LawViolation(format!(
                    "identity law: {f} . id_src = {right}, expected {f}"
                )));
            }
        }
        // associativity over all composable triples
        for h in 0..m {
            for g in 0..m {
                if cat.mor_dst[g] != cat.mor_src[h] {
                    continue;
                }
                let hg = cat.table[h * m + g] as usize;
                for f in 0..m {
                    if cat.mor_dst[f] != cat.mor_src[g] {
                        continue;
                    }
                    let gf = cat.table[g * m + f] as usize;
                    if cat.table[h * m + gf] != cat.table[hg * m + f] {
                        return Err(CategoryError::LawViolation(format!(
                            "associativity fails at triple ({h},{g},{f})"
                        )));
                    }
                }
            }
        }
        Ok(cat.with_hom_index())
    }

    /// Builds from parts that are correct by construction, then re-validates.
    /// Used by internal constructors (functor categories, action groupoids).
    pub(crate) fn from_parts_checked(
        objects: usize,
        morphisms: Vec<(ObjId, ObjId)>,
        identity: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> MorId,
    ) -> Result<Self, CategoryError> {
        let m = morphisms.len();
        if m > DENSE_MORPHISM_CAP {
            return Err(CategoryError::TooLarge {
                morphisms: m,
                cap: DENSE_MORPHISM_CAP,
            });
        }
        let mut entries = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].1 == morphisms[g].0 {
                    entries.push((g, f, compose(g, f)));
                }
            }
        }
        Self::validate(&RawCategory {
            objects,
            morphisms,
            identity,
            compose: entries,
        })
    }

    fn with_hom_index(mut self) -> Self {
        let n = self.objects;
        let mut hom = vec![Vec::new(); n * n];
        for f in 0..self.mor_src.len() {
            hom[self.mor_src[f] * n + self.mor_dst[f]].push(f);
        }
        self.hom = hom;
        self
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.mor_src.len()
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.mor_src[f]
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.mor_dst[f]
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identity[x]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.mor_src[f]] == f
    }

    /// g . f when dst(f) = src(g).
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let m = self.mor_src.len();
        let v = self.table[g * m + f];
        if v == NONE {
            None
        } else {
            Some(v as usize)
        }
    }

    /// g . f, panicking on non-composable pairs (internal call sites
    /// guarantee composability).
    pub fn compose_unchecked(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).expect("composable pair")
    }

    /// Composes a chain last-applied-first: chain([h, g, f]) = h . g . f.
    pub fn compose_chain(&self, chain: &[MorId]) -> MorId {
        let mut it = chain.iter().rev();
        let mut acc = *it.next().expect("nonempty chain");
        for &g in it {
            acc = self.compose_unchecked(g, acc);
        }
        acc
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a * self.objects + b]
    }

    /// Two-sided inverse, if one exists.
    pub fn inverse_of(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.mor_src[f], self.mor_dst[f]);
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(self.identity[a]) && self.compose(f, g) == Some(self.identity[b]))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse_of(f).is_some()
    }

    /// All morphisms, grouped as (src, dst, id) triples.
    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        0..self.mor_src.len()
    }

    pub fn raw(&self) -> RawCategory {
        let m = self.mor_src.len();
        let mut compose = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(gf) = self.compose(g, f) {
                    compose.push((g, f, gf));
                }
            }
        }
        RawCategory {
            objects: self.objects,
            morphisms: (0..m).map(|f| (self.mor_src[f], self.mor_dst[f])).collect(),
            identity: self.identity.clone(),
            compose,
        }
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> Self {
        Self::validate(&RawCategory {
            objects: 1,
            morphisms: vec![(0, 0)],
            identity: vec![0],
            compose: vec![(0, 0, 0)],
        })
        .unwrap()
    }

    /// n objects, identity morphisms only.
    pub fn discrete(n: usize) -> Self {
        Self::validate(&RawCategory {
            objects: n,
            morphisms: (0..n).map(|x| (x, x)).collect(),
            identity: (0..n).collect(),
            compose: (0..n).map(|x| (x, x, x)).collect(),
        })
        .unwrap()
    }

    /// Structural isomorphism helper: a bijective relabeling check used by
    /// "isomorphic, not merely equivalent" invariants.
    pub fn is_isomorphic_on_the_nose(
        &self,
        other: &FiniteCategory,
        omap: &HashMap<ObjId, ObjId>,
        mmap: &HashMap<MorId, MorId>,
    ) -> bool {
        if self.objects != other.objects || self.mor_src.len() != other.mor_src.len() {
            return false;
        }
        if omap.len() != self.objects || mmap.len() != self.mor_src.len() {
            return false;
        }
        for f in 0..self.mor_src.len() {
            let g = mmap[&f];
            if other.src(g) != omap[&self.src(f)] || other.dst(g) != omap[&self.dst(f)] {
                return false;
            }
        }
        for x in 0..self.objects {
            if other.identity(omap[&x]) != mmap[&self.identity(x)] {
                return false;
            }
        }
        for g in 0..self.mor_src.len() {
            for f in 0..self.mor_src.len() {
                match (self.compose(g, f), other.compose(mmap[&g], mmap[&f])) {
                    (Some(gf), Some(gf2)) if mmap[&gf] == gf2 => {}
                    (None, None) => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// B C2: one object, morphisms {e, s} with s.s = e.
    pub(crate) fn b_c2_raw() -> RawCategory {
        RawCategory {
            objects: 1,
            morphisms: vec![(0, 0), (0, 0)],
            identity: vec![0],
            compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)],
        }
    }

    #[test]
    fn terminal_category_is_valid() {
        let c = FiniteCategory::terminal();
        assert_eq!(c.object_count(), 1);
        assert_eq!(c.morphism_count(), 1);
    }

    #[test]
    fn b_c2_is_valid() {
        // Hand oracle: all 8 composition triples of {e,s} against the C2 table.
        let c = FiniteCategory::validate(&b_c2_raw()).unwrap();
        for g in 0..2 {
            for f in 0..2 {
                assert_eq!(c.compose(g, f), Some((g + f) % 2));
            }
        }
        assert!(c.is_iso(1));
    }

    #[test]
    fn idempotent_non_identity_is_a_valid_category() {
        // s.s = s is a lawful category (it fails only at groupoid promotion).
        let raw = RawCategory {
            objects: 1,
            morphisms: vec![(0, 0), (0, 0)],
            identity: vec![0],
            compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
        };
        assert!(FiniteCategory::validate(&raw).is_ok());
    }

    #[test]
    fn missing_composite_is_a_law_violation() {
        let mut raw = b_c2_raw();
        raw.compose.pop();
        match FiniteCategory::validate(&raw) {
            Err(CategoryError::LawViolation(msg)) => assert!(msg.contains("missing composite")),
            other => panic!("expected law violation, got {other:?}"),
        }
    }

    #[test]
    fn dangling_ids_are_malformed() {
        let raw = RawCategory {
            objects: 1,
            morphisms: vec![(0, 2)],
            identity: vec![0],
            compose: vec![],
        };
        assert!(matches!(
            FiniteCategory::validate(&raw),
            Err(CategoryError::MalformedTable(_))
        ));
    }

    #[test]
    fn broken_associativity_is_caught() {
        // Objects 0; morphisms e,a,b with a.a=b, a.b=e, b.a=e, b.b=a would be C3;
        // corrupt one entry to break associativity.
        let raw = RawCategory {
            objects: 1,
            morphisms: vec![(0, 0), (0, 0), (0, 0)],
            identity: vec![0],
            compose: vec![
                (0, 0, 0),
                (0, 1, 1),
                (0, 2, 2),
                (1, 0, 1),
                (2, 0, 2),
                (1, 1, 2),
                (1, 2, 0),
                (2, 1, 0),
                (2, 2, 0), // should be 1
            ],
        };
        assert!(matches!(
            FiniteCategory::validate(&raw),
            Err(CategoryError::LawViolation(m)) if m.contains("associativity")
        ));
    }
}
