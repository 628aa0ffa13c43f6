//! Finite groups as multiplication tables.
//!
//! These show up as vertex groups of groupoid components and as the named
//! presets (C1..C4, V4, S3). Everything here is desk scale: orders up to a
//! couple dozen, brute force throughout.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, BudgetError};

/// A finite group given by its full multiplication table.
///
/// Element 0 is always the identity. `mul[a][b]` is the product a*b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub name: String,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Builds a group from a multiplication table, checking the group laws.
    pub fn from_table(name: &str, mul: Vec<Vec<usize>>) -> Result<Self, String> {
        let n = mul.len();
        for row in &mul {
            if row.len() != n {
                return Err(format!("{name}: ragged multiplication table"));
            }
            for &v in row {
                if v >= n {
                    return Err(format!("{name}: entry {v} out of range"));
                }
            }
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(format!("{name}: element 0 is not an identity"));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a][b] == 0 && mul[b][a] == 0 {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(format!("{name}: element {a} has no two-sided inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(format!("{name}: associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            mul,
            inv,
            name: name.to_string(),
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            mul: vec![vec![0]],
            inv: vec![0],
            name: "C1".into(),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup {
            mul,
            inv,
            name: format!("C{n}"),
        }
    }

    /// Direct product; elements are a*|B|+b over pairs (a, b).
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut mul = vec![vec![0usize; n]; n];
        let mut inv = vec![0usize; n];
        for x in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            inv[x] = a.inv(xa) * nb + b.inv(xb);
            for y in 0..n {
                let (ya, yb) = (y / nb, y % nb);
                mul[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        FiniteGroup {
            mul,
            inv,
            name: format!("{}x{}", a.name, b.name),
        }
    }

    pub fn klein_four() -> Self {
        let mut g = Self::product(&Self::cyclic(2), &Self::cyclic(2));
        g.name = "V4".into();
        g
    }

    /// S3 as permutations of {0,1,2}; element 0 is the identity permutation.
    pub fn symmetric_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let n = perms.len();
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let mut mul = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let pq = compose(&perms[a], &perms[b]);
                mul[a][b] = perms.iter().position(|p| *p == pq).unwrap();
            }
        }
        let mut g = Self::from_table("S3", mul).expect("S3 table is a group");
        g.name = "S3".into();
        g
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn order_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Closure of a subset under multiplication and inverses.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut stack: Vec<usize> = gens.to_vec();
        while let Some(g) = stack.pop() {
            if seen[g] {
                continue;
            }
            seen[g] = true;
            out.push(g);
            let snapshot = out.clone();
            for &h in &snapshot {
                for prod in [self.mul(g, h), self.mul(h, g), self.inv(g)] {
                    if !seen[prod] {
                        stack.push(prod);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set, greedily picked by descending element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut generated = self.closure(&[]);
        let mut order: Vec<usize> = (0..self.order()).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        for a in order {
            if generated.len() == self.order() {
                break;
            }
            if !generated.contains(&a) {
                gens.push(a);
                generated = self.closure(&gens);
            }
        }
        gens
    }

    /// All subgroups, each as a sorted element list.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = vec![self.closure(&[])];
        let mut frontier = found.clone();
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if !found.contains(&k) {
                    found.push(k.clone());
                    frontier.push(k);
                }
            }
        }
        found.sort_by_key(|h| (h.len(), h.clone()));
        found
    }

    fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = h
            .iter()
            .map(|&x| self.mul(self.mul(g, x), self.inv(g)))
            .collect();
        out.sort_unstable();
        out
    }

    /// One representative per conjugacy class of subgroups, sorted by order.
    pub fn subgroup_classes(&self) -> Vec<Vec<usize>> {
        let subs = self.subgroups();
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for h in subs {
            let conjugate_seen = reps
                .iter()
                .any(|r| (0..self.order()).any(|g| self.conjugate_subgroup(r, g) == h));
            if !conjugate_seen {
                reps.push(h);
            }
        }
        reps
    }

    /// Left cosets of a subgroup, each sorted; coset 0 contains the identity.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.order()];
        for a in 0..self.order() {
            if assigned[a] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(a, x)).collect();
            c.sort_unstable();
            for &e in &c {
                assigned[e] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Searches for an isomorphism to `other`; returns the image table of each element.
    ///
    /// Brute force over generator images with element-order pruning.
    pub fn isomorphism_to(
        &self,
        other: &FiniteGroup,
        budget: &Budget,
    ) -> Result<Option<Vec<usize>>, BudgetError> {
        if self.order() != other.order() {
            return Ok(None);
        }
        if self.order_multiset() != other.order_multiset() {
            return Ok(None);
        }
        let gens = self.generating_set();
        if gens.is_empty() {
            return Ok(Some(vec![0]));
        }
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for &g in &gens {
            let ord = self.element_order(g);
            candidates.push(
                (0..other.order())
                    .filter(|&h| other.element_order(h) == ord)
                    .collect(),
            );
        }
        let mut choice = vec![0usize; gens.len()];
        let counter = budget.counter();
        'outer: loop {
            counter.spend(1)?;
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(map) = self.extend_hom(&gens, &images, other) {
                let mut hit = vec![false; other.order()];
                for &v in &map {
                    hit[v] = true;
                }
                if hit.iter().all(|&b| b) {
                    return Ok(Some(map));
                }
            }
            for k in 0..gens.len() {
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    continue 'outer;
                }
                choice[k] = 0;
            }
            return Ok(None);
        }
    }

    /// Extends generator images to a homomorphism table, or detects inconsistency.
    fn extend_hom(
        &self,
        gens: &[usize],
        images: &[usize],
        other: &FiniteGroup,
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[0] = 0;
        let mut frontier = vec![0usize];
        while let Some(a) = frontier.pop() {
            for (k, &g) in gens.iter().enumerate() {
                let b = self.mul(g, a);
                let img = other.mul(images[k], map[a]);
                if map[b] == usize::MAX {
                    map[b] = img;
                    frontier.push(b);
                } else if map[b] != img {
                    return None;
                }
            }
        }
        if map.iter().any(|&v| v == usize::MAX) {
            return None; // gens did not generate
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All homomorphisms self -> other, as image tables.
    pub fn homomorphisms_to(
        &self,
        other: &FiniteGroup,
        budget: &Budget,
    ) -> Result<Vec<Vec<usize>>, BudgetError> {
        let gens = self.generating_set();
        if gens.is_empty() {
            return Ok(vec![vec![0]]);
        }
        let counter = budget.counter();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        'outer: loop {
            counter.spend(1)?;
            let images: Vec<usize> = choice.iter().map(|&i| i).collect();
            if let Some(map) = self.extend_hom(&gens, &images, other) {
                out.push(map);
            }
            for k in 0..gens.len() {
                choice[k] += 1;
                if choice[k] < other.order() {
                    continue 'outer;
                }
                choice[k] = 0;
            }
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_klein_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(4),
            FiniteGroup::klein_four(),
            FiniteGroup::symmetric_3(),
        ] {
            FiniteGroup::from_table(&g.name, g.mul.clone()).unwrap();
        }
    }

    #[test]
    fn s3_subgroup_classes_match_hand_enumeration() {
        // Independent oracle: filter all subsets of S3 for closure.
        let g = FiniteGroup::symmetric_3();
        let n = g.order();
        let mut oracle = 0usize;
        let mut class_reps: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed = set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
                && set.iter().all(|&a| set.contains(&g.inv(a)));
            if closed {
                oracle += 1;
                let conj_seen = class_reps
                    .iter()
                    .any(|r| (0..n).any(|x| g.conjugate_subgroup(r, x) == set));
                if !conj_seen {
                    class_reps.push(set);
                }
            }
        }
        assert_eq!(oracle, 6); // 1, three C2's, A3, S3
        assert_eq!(class_reps.len(), 4);
        assert_eq!(g.subgroups().len(), 6);
        assert_eq!(g.subgroup_classes().len(), 4);
    }

    #[test]
    fn c4_and_v4_not_isomorphic() {
        let budget = Budget::default();
        let c4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::klein_four();
        assert!(c4.isomorphism_to(&v4, &budget).unwrap().is_none());
        assert!(c4.isomorphism_to(&FiniteGroup::cyclic(4), &budget).unwrap().is_some());
    }

    #[test]
    fn hom_counts_c2() {
        let budget = Budget::default();
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        assert_eq!(c2.homomorphisms_to(&c2, &budget).unwrap().len(), 2);
        assert_eq!(c2.homomorphisms_to(&c3, &budget).unwrap().len(), 1);
        let s3 = FiniteGroup::symmetric_3();
        assert_eq!(s3.homomorphisms_to(&s3, &budget).unwrap().len(), 10);
    }
}
