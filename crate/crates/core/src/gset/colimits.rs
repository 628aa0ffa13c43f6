//! Finite colimits of groupoid actions: disjoint unions pointwise, and
//! coequalizers by union-find closure of the equivariant relation.

use std::sync::Arc;

use super::action::{ActionRef, GAction, GMap};
use crate::fincat::FiniteGroupoid;

/// A colimit object together with its injection legs.
#[derive(Debug, Clone)]
pub struct ColimitResult {
    pub object: ActionRef,
    pub legs: Vec<GMap>,
}

pub fn initial(groupoid: &FiniteGroupoid) -> ColimitResult {
    ColimitResult {
        object: Arc::new(GAction::initial(groupoid)),
        legs: Vec::new(),
    }
}

pub fn coproduct(a: &ActionRef, b: &ActionRef) -> ColimitResult {
    coproduct_many(&[a.clone(), b.clone()])
}

/// n-ary coproduct; carrier of piece k at object x sits at offset
/// sum of earlier pieces' carriers.
pub fn coproduct_many(parts: &[ActionRef]) -> ColimitResult {
    assert!(!parts.is_empty(), "coproduct_many needs the groupoid from its parts");
    let g = parts[0].groupoid.clone();
    let n = g.object_count();
    let carriers: Vec<usize> = (0..n)
        .map(|x| parts.iter().map(|p| p.carriers[x]).sum())
        .collect();
    let offsets: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut off = Vec::with_capacity(parts.len());
            let mut acc = 0;
            for p in parts {
                off.push(acc);
                acc += p.carriers[x];
            }
            off
        })
        .collect();
    let act = g
        .cat
        .morphisms()
        .map(|m| {
            let (s, d) = (g.cat.src(m), g.cat.dst(m));
            let mut table = Vec::with_capacity(carriers[s]);
            for (k, p) in parts.iter().enumerate() {
                table.extend(p.act[m].iter().map(|&v| offsets[d][k] + v));
            }
            let _ = s;
            table
        })
        .collect();
    let object = Arc::new(GAction {
        groupoid: g.clone(),
        carriers,
        act,
    });
    let legs = parts
        .iter()
        .enumerate()
        .map(|(k, p)| GMap {
            source: p.clone(),
            target: object.clone(),
            components: (0..n)
                .map(|x| (0..p.carriers[x]).map(|i| offsets[x][k] + i).collect())
                .collect(),
        })
        .collect();
    ColimitResult { object, legs }
}

/// Coequalizer of parallel maps f, g: A -> B: the quotient of B by the
/// equivariant closure of f(a) ~ g(a).
pub fn coequalizer(f: &GMap, g: &GMap) -> ColimitResult {
    debug_assert_eq!(f.source.as_ref(), g.source.as_ref());
    debug_assert_eq!(f.target.as_ref(), g.target.as_ref());
    let b = &f.target;
    let grp = &b.groupoid;
    let n = grp.object_count();
    let offsets: Vec<usize> = {
        let mut off = Vec::with_capacity(n);
        let mut acc = 0;
        for x in 0..n {
            off.push(acc);
            acc += b.carriers[x];
        }
        off
    };
    let global = |x: usize, i: usize| offsets[x] + i;
    let total: usize = b.total_size();
    let mut uf = UnionFind::new(total);
    // seed and propagate: the relation must be a congruence for the action
    let mut stack: Vec<(usize, usize, usize)> = Vec::new(); // (object, i, j)
    for x in 0..n {
        for a_i in 0..f.source.carriers[x] {
            stack.push((x, f.components[x][a_i], g.components[x][a_i]));
        }
    }
    while let Some((x, i, j)) = stack.pop() {
        if !uf.union(global(x, i), global(x, j)) {
            continue;
        }
        for m in grp.cat.morphisms() {
            if grp.cat.src(m) == x {
                stack.push((grp.cat.dst(m), b.act[m][i], b.act[m][j]));
            }
        }
    }
    // classes per object, in order of first appearance
    let mut class_index: Vec<Option<usize>> = vec![None; total];
    let mut carriers = vec![0usize; n];
    let mut class_rep: Vec<Vec<usize>> = vec![Vec::new(); n]; // local rep per class
    let mut resolved = vec![0usize; total];
    for x in 0..n {
        for i in 0..b.carriers[x] {
            let root = uf.find(global(x, i));
            if class_index[root].is_none() {
                class_index[root] = Some(carriers[x]);
                carriers[x] += 1;
                class_rep[x].push(i);
            }
            resolved[global(x, i)] = class_index[root].unwrap();
        }
    }
    let class_of = |x: usize, i: usize| resolved[global(x, i)];
    let act: Vec<Vec<usize>> = grp
        .cat
        .morphisms()
        .map(|m| {
            let (s, d) = (grp.cat.src(m), grp.cat.dst(m));
            (0..carriers[s])
                .map(|c| class_of(d, b.act[m][class_rep[s][c]]))
                .collect()
        })
        .collect();
    let object = Arc::new(GAction {
        groupoid: grp.clone(),
        carriers,
        act,
    });
    debug_assert!(object.check().is_ok(), "quotient action is well defined");
    let quotient = GMap {
        source: b.clone(),
        target: object.clone(),
        components: (0..n)
            .map(|x| (0..b.carriers[x]).map(|i| class_of(x, i)).collect())
            .collect(),
    };
    ColimitResult {
        object,
        legs: vec![quotient],
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when it actually merged two classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;
    use crate::gset::limits::{pullback, to_terminal};

    #[test]
    fn coproduct_of_regular_with_itself() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let c = coproduct(&r, &r);
        assert_eq!(c.object.total_size(), 4);
        assert_eq!(c.object.orbits().len(), 2);
        c.legs[0].check().unwrap();
        c.legs[1].check().unwrap();
    }

    #[test]
    fn coequalizer_of_identity_pair_is_the_object_itself() {
        let g = presets::groupoid("C3").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let id = GMap::identity(&r);
        let c = coequalizer(&id, &id);
        assert_eq!(c.object.carriers, r.carriers);
        assert!(c.legs[0].is_iso());
    }

    #[test]
    fn coequalizer_of_cech_projections_of_a_torsor_is_the_point() {
        // the two pullback projections C2 x C2 => C2 (regular) coequalize to
        // the terminal object
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let f = to_terminal(&r);
        let pb = pullback(&f, &f);
        let c = coequalizer(&pb.legs[0], &pb.legs[1]);
        assert_eq!(c.object.carriers, vec![1]);
    }
}
