//! The intensional G-set site: objects are arbitrary actions of a fixed
//! groupoid, computed pointwise on demand; the enumerated fragment is the
//! generating one (transitive actions per vertex-subgroup conjugacy class,
//! plus pairwise products). Fibers are evaluations at component base objects.

use std::sync::Arc;

use crate::budget::Budget;
use crate::fincat::{Components, FiniteGroupoid};
use crate::gset::{
    self, enumerate_gmaps, epi_mono_factorize, orbit_decomposition, ActionRef, GAction, GMap,
};

use super::site::{Factorization, Site, SiteError};

pub struct GSetSite {
    pub groupoid: FiniteGroupoid,
    pub bound: usize,
    pub components: Components,
    fragment: Vec<ActionRef>,
    connected: Vec<ActionRef>,
}

impl GSetSite {
    /// Generating fragment: every transitive action up to the carrier bound
    /// (one per vertex-subgroup conjugacy class per component) plus their
    /// pairwise products; the empty action is included for coproduct checks.
    pub fn new(groupoid: &FiniteGroupoid, bound: usize) -> Self {
        let components = groupoid.components();
        let mut connected: Vec<ActionRef> = Vec::new();
        for ci in 0..components.count() {
            for class in components.components[ci].vertex.subgroup_classes() {
                let t = Arc::new(GAction::transitive_on_cosets(groupoid, ci, &class));
                if t.total_size() > 0 && t.total_size() <= bound {
                    connected.push(t);
                }
            }
        }
        // deterministic: sort transitives by (size, tables)
        connected.sort_by(|a, b| {
            (a.total_size(), &a.carriers, &a.act).cmp(&(b.total_size(), &b.carriers, &b.act))
        });
        let mut fragment: Vec<ActionRef> = vec![Arc::new(GAction::initial(groupoid))];
        fragment.extend(connected.iter().cloned());
        for i in 0..connected.len() {
            for j in i..connected.len() {
                let p = gset::product(&connected[i], &connected[j]);
                fragment.push(p.object.clone());
            }
        }
        GSetSite {
            groupoid: groupoid.clone(),
            bound,
            components,
            fragment,
            connected,
        }
    }
}

impl Site for GSetSite {
    type Obj = ActionRef;
    type Mor = GMap;

    fn obj_eq(&self, a: &ActionRef, b: &ActionRef) -> bool {
        a.carriers == b.carriers && a.act == b.act
    }

    fn mor_eq(&self, f: &GMap, g: &GMap) -> bool {
        f.components == g.components
            && self.obj_eq(&f.source, &g.source)
            && self.obj_eq(&f.target, &g.target)
    }

    fn src(&self, f: &GMap) -> ActionRef {
        f.source.clone()
    }

    fn dst(&self, f: &GMap) -> ActionRef {
        f.target.clone()
    }

    fn identity(&self, x: &ActionRef) -> GMap {
        GMap::identity(x)
    }

    fn compose(&self, g: &GMap, f: &GMap) -> GMap {
        GMap::compose(g, f)
    }

    fn hom(&self, a: &ActionRef, b: &ActionRef, budget: &Budget) -> Result<Vec<GMap>, SiteError> {
        Ok(enumerate_gmaps(a, b, budget)?)
    }

    fn is_iso(&self, f: &GMap) -> bool {
        f.is_iso()
    }

    fn initial(&self) -> Result<ActionRef, SiteError> {
        Ok(Arc::new(GAction::initial(&self.groupoid)))
    }

    fn terminal(&self) -> Result<ActionRef, SiteError> {
        Ok(Arc::new(GAction::terminal(&self.groupoid)))
    }

    fn product(&self, a: &ActionRef, b: &ActionRef) -> Result<(ActionRef, GMap, GMap), SiteError> {
        let r = gset::product(a, b);
        Ok((r.object, r.legs[0].clone(), r.legs[1].clone()))
    }

    fn pullback(&self, f: &GMap, g: &GMap) -> Result<(ActionRef, GMap, GMap), SiteError> {
        let r = gset::pullback(f, g);
        Ok((r.object, r.legs[0].clone(), r.legs[1].clone()))
    }

    fn equalizer(&self, f: &GMap, g: &GMap) -> Result<(ActionRef, GMap), SiteError> {
        let r = gset::equalizer(f, g);
        Ok((r.object, r.legs[0].clone()))
    }

    fn coproduct(&self, a: &ActionRef, b: &ActionRef) -> Result<(ActionRef, GMap, GMap), SiteError> {
        let r = gset::coproduct(a, b);
        Ok((r.object, r.legs[0].clone(), r.legs[1].clone()))
    }

    fn coequalizer(&self, f: &GMap, g: &GMap) -> Result<(ActionRef, GMap), SiteError> {
        let r = gset::coequalizer(f, g);
        Ok((r.object, r.legs[0].clone()))
    }

    fn factorize(&self, u: &GMap) -> Result<Factorization<Self>, SiteError> {
        let r = epi_mono_factorize(u);
        Ok(Factorization {
            epi: r.epi,
            mono: r.mono,
            image: r.image,
            complement: r.complement,
            iso: r.iso,
        })
    }

    fn decompose(&self, x: &ActionRef) -> Result<Vec<(ActionRef, GMap)>, SiteError> {
        Ok(orbit_decomposition(x)
            .summands
            .into_iter()
            .map(|s| (s.object, s.inclusion))
            .collect())
    }

    fn fiber_count(&self) -> usize {
        self.components.count()
    }

    fn witness_set(&self) -> Vec<usize> {
        (0..self.components.count()).collect()
    }

    fn fiber_obj(&self, j: usize, x: &ActionRef) -> usize {
        x.carriers[self.components.components[j].base]
    }

    fn fiber_mor(&self, j: usize, f: &GMap) -> Vec<usize> {
        f.components[self.components.components[j].base].clone()
    }

    fn fragment_objects(&self) -> Vec<ActionRef> {
        self.fragment.clone()
    }

    fn connected_fragment_objects(&self) -> Vec<ActionRef> {
        self.connected.clone()
    }

    fn describe_obj(&self, x: &ActionRef) -> String {
        format!("action with carriers {:?}", x.carriers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;

    #[test]
    fn s3_generating_fragment_has_four_transitives() {
        let g = presets::groupoid("S3").unwrap();
        let site = GSetSite::new(&g, 6);
        // stabilizers 1, C2, C3, S3 up to conjugacy
        assert_eq!(site.connected_fragment_objects().len(), 4);
        let sizes: Vec<usize> = site
            .connected_fragment_objects()
            .iter()
            .map(|t| t.total_size())
            .collect();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
        // 0 + 4 transitives + 10 products
        assert_eq!(site.fragment_objects().len(), 15);
    }

    #[test]
    fn coproduct_fragment_splits_across_components() {
        let g = presets::coproduct(&["C2".into(), "C3".into()]).unwrap();
        let site = GSetSite::new(&g, 6);
        // C2 side: subgroup classes 1, C2; C3 side: 1, C3
        assert_eq!(site.connected_fragment_objects().len(), 4);
        assert_eq!(site.fiber_count(), 2);
    }
}
