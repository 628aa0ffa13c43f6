//! Finite limits of groupoid actions, computed pointwise on carriers.

use std::sync::Arc;

use super::action::{ActionRef, GAction, GMap};
use crate::fincat::FiniteGroupoid;

/// A limit object together with its projection legs.
#[derive(Debug, Clone)]
pub struct LimitResult {
    pub object: ActionRef,
    pub legs: Vec<GMap>,
}

pub fn terminal(groupoid: &FiniteGroupoid) -> LimitResult {
    LimitResult {
        object: Arc::new(GAction::terminal(groupoid)),
        legs: Vec::new(),
    }
}

/// Binary product: pairs pointwise, componentwise action.
pub fn product(a: &ActionRef, b: &ActionRef) -> LimitResult {
    let g = &a.groupoid;
    let carriers: Vec<usize> = a
        .carriers
        .iter()
        .zip(&b.carriers)
        .map(|(&ca, &cb)| ca * cb)
        .collect();
    let encode = |x: usize, i: usize, j: usize| i * b.carriers[x] + j;
    let act = g
        .cat
        .morphisms()
        .map(|m| {
            let (s, d) = (g.cat.src(m), g.cat.dst(m));
            let mut table = Vec::with_capacity(carriers[s]);
            for i in 0..a.carriers[s] {
                for j in 0..b.carriers[s] {
                    table.push(encode(d, a.act[m][i], b.act[m][j]));
                }
            }
            table
        })
        .collect();
    let object = Arc::new(GAction {
        groupoid: g.clone(),
        carriers,
        act,
    });
    let p1 = GMap {
        source: object.clone(),
        target: a.clone(),
        components: (0..g.object_count())
            .map(|x| {
                (0..a.carriers[x])
                    .flat_map(|i| std::iter::repeat(i).take(b.carriers[x]))
                    .collect()
            })
            .collect(),
    };
    let p2 = GMap {
        source: object.clone(),
        target: b.clone(),
        components: (0..g.object_count())
            .map(|x| (0..a.carriers[x]).flat_map(|_| 0..b.carriers[x]).collect())
            .collect(),
    };
    LimitResult {
        object,
        legs: vec![p1, p2],
    }
}

/// Pullback of f: A -> C and g: B -> C: pairs agreeing in C.
pub fn pullback(f: &GMap, g: &GMap) -> LimitResult {
    debug_assert_eq!(f.target.as_ref(), g.target.as_ref());
    let a = &f.source;
    let b = &g.source;
    let grp = &a.groupoid;
    // pairs[x] lists (i, j) with f(i) = g(j), in lexicographic order
    let pairs: Vec<Vec<(usize, usize)>> = (0..grp.object_count())
        .map(|x| {
            let mut v = Vec::new();
            for i in 0..a.carriers[x] {
                for j in 0..b.carriers[x] {
                    if f.components[x][i] == g.components[x][j] {
                        v.push((i, j));
                    }
                }
            }
            v
        })
        .collect();
    let index_of = |x: usize, pair: (usize, usize)| pairs[x].iter().position(|&p| p == pair).unwrap();
    let carriers: Vec<usize> = pairs.iter().map(|v| v.len()).collect();
    let act = grp
        .cat
        .morphisms()
        .map(|m| {
            let (s, d) = (grp.cat.src(m), grp.cat.dst(m));
            pairs[s]
                .iter()
                .map(|&(i, j)| index_of(d, (a.act[m][i], b.act[m][j])))
                .collect()
        })
        .collect();
    let object = Arc::new(GAction {
        groupoid: grp.clone(),
        carriers,
        act,
    });
    let p1 = GMap {
        source: object.clone(),
        target: a.clone(),
        components: pairs.iter().map(|v| v.iter().map(|&(i, _)| i).collect()).collect(),
    };
    let p2 = GMap {
        source: object.clone(),
        target: b.clone(),
        components: pairs.iter().map(|v| v.iter().map(|&(_, j)| j).collect()).collect(),
    };
    LimitResult {
        object,
        legs: vec![p1, p2],
    }
}

/// Equalizer of parallel maps f, g: A -> B: the fixed locus {s : f(s) = g(s)}.
pub fn equalizer(f: &GMap, g: &GMap) -> LimitResult {
    debug_assert_eq!(f.source.as_ref(), g.source.as_ref());
    debug_assert_eq!(f.target.as_ref(), g.target.as_ref());
    let a = &f.source;
    let grp = &a.groupoid;
    let kept: Vec<Vec<usize>> = (0..grp.object_count())
        .map(|x| {
            (0..a.carriers[x])
                .filter(|&i| f.components[x][i] == g.components[x][i])
                .collect()
        })
        .collect();
    let index_of = |x: usize, i: usize| kept[x].iter().position(|&k| k == i).unwrap();
    let carriers: Vec<usize> = kept.iter().map(|v| v.len()).collect();
    let act = grp
        .cat
        .morphisms()
        .map(|m| {
            let (s, d) = (grp.cat.src(m), grp.cat.dst(m));
            kept[s].iter().map(|&i| index_of(d, a.act[m][i])).collect()
        })
        .collect();
    let object = Arc::new(GAction {
        groupoid: grp.clone(),
        carriers,
        act,
    });
    let inclusion = GMap {
        source: object.clone(),
        target: a.clone(),
        components: kept,
    };
    LimitResult {
        object,
        legs: vec![inclusion],
    }
}

/// The unique map into the terminal object.
pub fn to_terminal(a: &ActionRef) -> GMap {
    let t = Arc::new(GAction::terminal(&a.groupoid));
    GMap {
        source: a.clone(),
        target: t,
        components: a.carriers.iter().map(|&c| vec![0; c]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn pullback_of_regular_over_point_splits_into_two_regular_orbits() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let f = to_terminal(&r);
        let pb = pullback(&f, &f);
        assert_eq!(pb.object.total_size(), 4);
        assert_eq!(pb.object.orbits().len(), 2);
        for o in pb.object.orbits() {
            assert_eq!(o.elements.len(), 2); // each orbit regular
        }
        pb.object.check().unwrap();
        pb.legs[0].check().unwrap();
        pb.legs[1].check().unwrap();
    }

    #[test]
    fn equalizer_of_id_and_swap_on_trivial_two_point_is_empty() {
        let g = presets::groupoid("C2").unwrap();
        let two = Arc::new(GAction::constant(&g, 2));
        let id = GMap::identity(&two);
        let swap = GMap {
            source: two.clone(),
            target: two.clone(),
            components: vec![vec![1, 0]],
        };
        swap.check().unwrap();
        let eq = equalizer(&id, &swap);
        assert!(eq.object.is_empty());
    }

    #[test]
    fn terminal_is_singleton_everywhere() {
        let g = presets::coproduct(&["C2".into(), "C3".into()]).unwrap();
        let t = terminal(&g);
        assert_eq!(t.object.carriers, vec![1, 1]);
    }
}
