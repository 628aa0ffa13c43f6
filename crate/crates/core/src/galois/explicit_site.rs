//! Explicit category fragments with tabulated fiber functors. (Co)limits are
//! found by exhaustive universal-property search inside the fragment, so a
//! fragment that is not closed reports exactly that. Exists mainly for
//! negative tests and hand-built counterexamples.

use std::sync::Arc;

use crate::budget::Budget;
use crate::fincat::{FiniteCategory, MorId, ObjId};

use super::site::{Factorization, Site, SiteError};

/// A functor to finite sets given by tables.
#[derive(Debug, Clone)]
pub struct SetValuedFunctor {
    /// |F(x)| per object.
    pub sizes: Vec<usize>,
    /// F(f) per morphism, as an index table.
    pub maps: Vec<Vec<usize>>,
}

impl SetValuedFunctor {
    /// The constant singleton functor (a canonical axiom violator).
    pub fn constant_singleton(cat: &FiniteCategory) -> Self {
        SetValuedFunctor {
            sizes: vec![1; cat.object_count()],
            maps: cat.morphisms().map(|_| vec![0]).collect(),
        }
    }

    pub fn check_functorial(&self, cat: &FiniteCategory) -> Result<(), String> {
        for x in 0..cat.object_count() {
            let id = cat.identity(x);
            if self.maps[id].len() != self.sizes[x] || !self.maps[id].iter().enumerate().all(|(i, &v)| i == v) {
                return Err(format!("F(id_{x}) is not the identity"));
            }
        }
        for g in cat.morphisms() {
            for f in cat.morphisms() {
                if let Some(gf) = cat.compose(g, f) {
                    for i in 0..self.maps[f].len() {
                        if self.maps[gf][i] != self.maps[g][self.maps[f][i]] {
                            return Err(format!("F({g} . {f}) mismatch at {i}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub struct ExplicitSite {
    pub cat: Arc<FiniteCategory>,
    pub fibers: Vec<SetValuedFunctor>,
    pub witness: Vec<usize>,
}

impl ExplicitSite {
    pub fn new(cat: Arc<FiniteCategory>, fibers: Vec<SetValuedFunctor>, witness: Vec<usize>) -> Self {
        ExplicitSite {
            cat,
            fibers,
            witness,
        }
    }

    /// Searches the fragment for an object with the universal property of the
    /// product of a and b.
    fn search_product(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        let cat = self.cat.as_ref();
        for p in 0..cat.object_count() {
            for &p1 in cat.hom(p, a) {
                for &p2 in cat.hom(p, b) {
                    let mut universal = true;
                    'test: for t in 0..cat.object_count() {
                        for &f in cat.hom(t, a) {
                            for &g in cat.hom(t, b) {
                                let mediators = cat
                                    .hom(t, p)
                                    .iter()
                                    .filter(|&&m| {
                                        cat.compose(p1, m) == Some(f) && cat.compose(p2, m) == Some(g)
                                    })
                                    .count();
                                if mediators != 1 {
                                    universal = false;
                                    break 'test;
                                }
                            }
                        }
                    }
                    if universal {
                        return Some((p, p1, p2));
                    }
                }
            }
        }
        None
    }

    fn search_coproduct(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        let cat = self.cat.as_ref();
        for c in 0..cat.object_count() {
            for &i1 in cat.hom(a, c) {
                for &i2 in cat.hom(b, c) {
                    let mut universal = true;
                    'test: for t in 0..cat.object_count() {
                        for &f in cat.hom(a, t) {
                            for &g in cat.hom(b, t) {
                                let mediators = cat
                                    .hom(c, t)
                                    .iter()
                                    .filter(|&&m| {
                                        cat.compose(m, i1) == Some(f) && cat.compose(m, i2) == Some(g)
                                    })
                                    .count();
                                if mediators != 1 {
                                    universal = false;
                                    break 'test;
                                }
                            }
                        }
                    }
                    if universal {
                        return Some((c, i1, i2));
                    }
                }
            }
        }
        None
    }
}

impl Site for ExplicitSite {
    type Obj = ObjId;
    type Mor = MorId;

    fn obj_eq(&self, a: &ObjId, b: &ObjId) -> bool {
        a == b
    }

    fn mor_eq(&self, f: &MorId, g: &MorId) -> bool {
        f == g
    }

    fn src(&self, f: &MorId) -> ObjId {
        self.cat.src(*f)
    }

    fn dst(&self, f: &MorId) -> ObjId {
        self.cat.dst(*f)
    }

    fn identity(&self, x: &ObjId) -> MorId {
        self.cat.identity(*x)
    }

    fn compose(&self, g: &MorId, f: &MorId) -> MorId {
        self.cat.compose_unchecked(*g, *f)
    }

    fn hom(&self, a: &ObjId, b: &ObjId, _budget: &Budget) -> Result<Vec<MorId>, SiteError> {
        Ok(self.cat.hom(*a, *b).to_vec())
    }

    fn is_iso(&self, f: &MorId) -> bool {
        self.cat.is_iso(*f)
    }

    fn initial(&self) -> Result<ObjId, SiteError> {
        (0..self.cat.object_count())
            .find(|&x| {
                (0..self.cat.object_count()).all(|t| self.cat.hom(x, t).len() == 1)
            })
            .ok_or_else(|| SiteError::FragmentNotClosed("no initial object in fragment".into()))
    }

    fn terminal(&self) -> Result<ObjId, SiteError> {
        (0..self.cat.object_count())
            .find(|&x| {
                (0..self.cat.object_count()).all(|t| self.cat.hom(t, x).len() == 1)
            })
            .ok_or_else(|| SiteError::FragmentNotClosed("no terminal object in fragment".into()))
    }

    fn product(&self, a: &ObjId, b: &ObjId) -> Result<(ObjId, MorId, MorId), SiteError> {
        self.search_product(*a, *b).ok_or_else(|| {
            SiteError::FragmentNotClosed(format!("product of {a} and {b} escapes the fragment"))
        })
    }

    fn pullback(&self, f: &MorId, g: &MorId) -> Result<(ObjId, MorId, MorId), SiteError> {
        let cat = self.cat.as_ref();
        let (a, b) = (cat.src(*f), cat.src(*g));
        for p in 0..cat.object_count() {
            for &p1 in cat.hom(p, a) {
                for &p2 in cat.hom(p, b) {
                    if cat.compose(*f, p1) != cat.compose(*g, p2) {
                        continue;
                    }
                    let mut universal = true;
                    'test: for t in 0..cat.object_count() {
                        for &u in cat.hom(t, a) {
                            for &v in cat.hom(t, b) {
                                if cat.compose(*f, u) != cat.compose(*g, v) {
                                    continue;
                                }
                                let mediators = cat
                                    .hom(t, p)
                                    .iter()
                                    .filter(|&&m| {
                                        cat.compose(p1, m) == Some(u) && cat.compose(p2, m) == Some(v)
                                    })
                                    .count();
                                if mediators != 1 {
                                    universal = false;
                                    break 'test;
                                }
                            }
                        }
                    }
                    if universal {
                        return Ok((p, p1, p2));
                    }
                }
            }
        }
        Err(SiteError::FragmentNotClosed(format!(
            "pullback of ({f},{g}) escapes the fragment"
        )))
    }

    fn equalizer(&self, f: &MorId, g: &MorId) -> Result<(ObjId, MorId), SiteError> {
        let cat = self.cat.as_ref();
        let a = cat.src(*f);
        for e in 0..cat.object_count() {
            for &inc in cat.hom(e, a) {
                if cat.compose(*f, inc) != cat.compose(*g, inc) {
                    continue;
                }
                let mut universal = true;
                'test: for t in 0..cat.object_count() {
                    for &u in cat.hom(t, a) {
                        if cat.compose(*f, u) != cat.compose(*g, u) {
                            continue;
                        }
                        let mediators = cat
                            .hom(t, e)
                            .iter()
                            .filter(|&&m| cat.compose(inc, m) == Some(u))
                            .count();
                        if mediators != 1 {
                            universal = false;
                            break 'test;
                        }
                    }
                }
                if universal {
                    return Ok((e, inc));
                }
            }
        }
        Err(SiteError::FragmentNotClosed(format!(
            "equalizer of ({f},{g}) escapes the fragment"
        )))
    }

    fn coproduct(&self, a: &ObjId, b: &ObjId) -> Result<(ObjId, MorId, MorId), SiteError> {
        self.search_coproduct(*a, *b).ok_or_else(|| {
            SiteError::FragmentNotClosed(format!("coproduct of {a} and {b} escapes the fragment"))
        })
    }

    fn coequalizer(&self, f: &MorId, g: &MorId) -> Result<(ObjId, MorId), SiteError> {
        let cat = self.cat.as_ref();
        let b = cat.dst(*f);
        for c in 0..cat.object_count() {
            for &q in cat.hom(b, c) {
                if cat.compose(q, *f) != cat.compose(q, *g) {
                    continue;
                }
                let mut universal = true;
                'test: for t in 0..cat.object_count() {
                    for &u in cat.hom(b, t) {
                        if cat.compose(u, *f) != cat.compose(u, *g) {
                            continue;
                        }
                        let mediators = cat
                            .hom(c, t)
                            .iter()
                            .filter(|&&m| cat.compose(m, q) == Some(u))
                            .count();
                        if mediators != 1 {
                            universal = false;
                            break 'test;
                        }
                    }
                }
                if universal {
                    return Ok((c, q));
                }
            }
        }
        Err(SiteError::FragmentNotClosed(format!(
            "coequalizer of ({f},{g}) escapes the fragment"
        )))
    }

    fn factorize(&self, u: &MorId) -> Result<Factorization<Self>, SiteError> {
        // search for image: a mono m and epi e with u = m . e, plus complement
        let cat = self.cat.as_ref();
        let (a, b) = (cat.src(*u), cat.dst(*u));
        for img in 0..cat.object_count() {
            for &e in cat.hom(a, img) {
                for &m in cat.hom(img, b) {
                    if cat.compose(m, e) != Some(*u) {
                        continue;
                    }
                    // fiber criterion on the witness set
                    let epi_ok = self
                        .witness
                        .iter()
                        .all(|&j| is_surjection(&self.fibers[j].maps[e], self.fibers[j].sizes[img]));
                    let mono_ok = self.witness.iter().all(|&j| is_injection(&self.fibers[j].maps[m]));
                    if !epi_ok || !mono_ok {
                        continue;
                    }
                    for comp in 0..cat.object_count() {
                        if let Some((cp, i1, _i2)) = self.search_coproduct(img, comp) {
                            for &v in cat.hom(cp, b) {
                                if self.is_iso(&v) && cat.compose(v, i1) == Some(m) {
                                    return Ok(Factorization {
                                        epi: e,
                                        mono: m,
                                        image: img,
                                        complement: comp,
                                        iso: v,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Err(SiteError::FragmentNotClosed(format!(
            "no epi-mono factorization of {u} inside the fragment"
        )))
    }

    fn decompose(&self, x: &ObjId) -> Result<Vec<(ObjId, MorId)>, SiteError> {
        // binary coproduct search, recursively; connectedness judged by fibers
        if super::site::fibers_all_empty(self, x) {
            return Ok(Vec::new());
        }
        for a in 0..self.cat.object_count() {
            for b in 0..self.cat.object_count() {
                if super::site::fibers_all_empty(self, &a) || super::site::fibers_all_empty(self, &b) {
                    continue;
                }
                if let Some((c, i1, i2)) = self.search_coproduct(a, b) {
                    if c == *x {
                        let mut out = Vec::new();
                        for (y, inc) in [(a, i1), (b, i2)] {
                            for (z, zin) in self.decompose(&y)? {
                                out.push((z, self.compose(&inc, &zin)));
                            }
                        }
                        return Ok(out);
                    }
                }
            }
        }
        Ok(vec![(*x, self.identity(x))])
    }

    fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    fn witness_set(&self) -> Vec<usize> {
        self.witness.clone()
    }

    fn fiber_obj(&self, j: usize, x: &ObjId) -> usize {
        self.fibers[j].sizes[*x]
    }

    fn fiber_mor(&self, j: usize, f: &MorId) -> Vec<usize> {
        self.fibers[j].maps[*f].clone()
    }

    fn fragment_objects(&self) -> Vec<ObjId> {
        (0..self.cat.object_count()).collect()
    }

    fn connected_fragment_objects(&self) -> Vec<ObjId> {
        (0..self.cat.object_count())
            .filter(|x| {
                !super::site::fibers_all_empty(self, x)
                    && self
                        .decompose(x)
                        .map(|d| d.len() == 1)
                        .unwrap_or(true)
            })
            .collect()
    }

    fn describe_obj(&self, x: &ObjId) -> String {
        format!("object {x}")
    }
}

fn is_injection(map: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    map.iter().all(|&v| seen.insert(v))
}

fn is_surjection(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &v in map {
        hit[v] = true;
    }
    hit.into_iter().all(|b| b)
}
