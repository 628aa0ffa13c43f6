//! Strict-epi / mono factorization with complement.
//!
//! u: Y -> X factors as Y ->> X' >-> X with X' the pointwise image; the
//! pointwise set difference X'' is again an action because all action maps
//! are bijections, and X' ⊔ X'' ≅ X.

use std::sync::Arc;

use super::action::{ActionRef, GAction, GMap};
use super::colimits::coproduct;

#[derive(Debug, Clone)]
pub struct FactorizationResult {
    /// Strict-epi part Y -> X'.
    pub epi: GMap,
    /// Mono part X' -> X.
    pub mono: GMap,
    pub image: ActionRef,
    /// The complement X'' with X' ⊔ X'' ≅ X.
    pub complement: ActionRef,
    /// Isomorphism X' ⊔ X'' -> X restricting to `mono` on the first leg.
    pub iso: GMap,
    /// The standard inclusion X' -> X' ⊔ X'' (so iso . inclusion = mono).
    pub inclusion: GMap,
}

pub fn epi_mono_factorize(u: &GMap) -> FactorizationResult {
    let y = &u.source;
    let x = &u.target;
    let g = &y.groupoid;
    let n = g.object_count();
    let mut in_image: Vec<Vec<bool>> = x.carriers.iter().map(|&c| vec![false; c]).collect();
    for ox in 0..n {
        for &v in &u.components[ox] {
            in_image[ox][v] = true;
        }
    }
    let image_members: Vec<Vec<usize>> = (0..n)
        .map(|ox| (0..x.carriers[ox]).filter(|&i| in_image[ox][i]).collect())
        .collect();
    let complement_members: Vec<Vec<usize>> = (0..n)
        .map(|ox| (0..x.carriers[ox]).filter(|&i| !in_image[ox][i]).collect())
        .collect();
    let restrict = |members: &Vec<Vec<usize>>| -> ActionRef {
        let local = |ox: usize, i: usize| members[ox].iter().position(|&k| k == i).unwrap();
        let carriers: Vec<usize> = members.iter().map(|v| v.len()).collect();
        let act = g
            .cat
            .morphisms()
            .map(|m| {
                let (s, d) = (g.cat.src(m), g.cat.dst(m));
                members[s].iter().map(|&i| local(d, x.act[m][i])).collect()
            })
            .collect();
        Arc::new(GAction {
            groupoid: g.clone(),
            carriers,
            act,
        })
    };
    let image = restrict(&image_members);
    let complement = restrict(&complement_members);
    debug_assert!(image.check().is_ok() && complement.check().is_ok());
    let image_local = |ox: usize, i: usize| image_members[ox].iter().position(|&k| k == i).unwrap();
    let epi = GMap {
        source: y.clone(),
        target: image.clone(),
        components: (0..n)
            .map(|ox| u.components[ox].iter().map(|&v| image_local(ox, v)).collect())
            .collect(),
    };
    let mono = GMap {
        source: image.clone(),
        target: x.clone(),
        components: image_members.clone(),
    };
    let cp = coproduct(&image, &complement);
    let mut components: Vec<Vec<usize>> = cp.object.carriers.iter().map(|&c| vec![usize::MAX; c]).collect();
    for ox in 0..n {
        for (i, &orig) in image_members[ox].iter().enumerate() {
            components[ox][cp.legs[0].components[ox][i]] = orig;
        }
        for (i, &orig) in complement_members[ox].iter().enumerate() {
            components[ox][cp.legs[1].components[ox][i]] = orig;
        }
    }
    let iso = GMap {
        source: cp.object.clone(),
        target: x.clone(),
        components,
    };
    debug_assert!(epi.check().is_ok() && mono.check().is_ok() && iso.check().is_ok());
    debug_assert!(epi.is_surjective() && mono.is_injective() && iso.is_iso());
    FactorizationResult {
        epi,
        mono,
        image,
        complement,
        iso,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::presets;
    use crate::gset::action::GMap;
    use crate::gset::limits::to_terminal;

    #[test]
    fn identity_factorizes_trivially() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let f = epi_mono_factorize(&GMap::identity(&r));
        assert!(f.complement.is_empty());
        assert!(f.epi.is_iso() && f.mono.is_iso());
    }

    #[test]
    fn regular_into_two_points_hits_one() {
        let g = presets::groupoid("C2").unwrap();
        let r = Arc::new(GAction::regular(&g));
        let two = Arc::new(GAction::constant(&g, 2));
        // regular -> point ⊔ point hitting the first point
        let u = GMap {
            source: r.clone(),
            target: two.clone(),
            components: vec![vec![0, 0]],
        };
        u.check().unwrap();
        let f = epi_mono_factorize(&u);
        assert_eq!(f.image.total_size(), 1);
        assert_eq!(f.complement.total_size(), 1);
        assert_eq!(GMap::compose(&f.mono, &f.epi), u);
    }

    #[test]
    fn from_empty_everything_is_complement() {
        let g = presets::groupoid("C2").unwrap();
        let zero = Arc::new(GAction::initial(&g));
        let r = Arc::new(GAction::regular(&g));
        let u = GMap {
            source: zero.clone(),
            target: r.clone(),
            components: vec![vec![]],
        };
        let f = epi_mono_factorize(&u);
        assert!(f.image.is_empty());
        assert_eq!(f.complement.carriers, r.carriers);
        let _ = to_terminal(&r);
    }
}
