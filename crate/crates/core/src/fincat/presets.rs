//! Named presets used by scenarios and tests.

use super::group::FiniteGroup;
use super::groupoid::FiniteGroupoid;

/// Groups addressable by name: C1, C2, C3, C4, V4, S3.
pub fn group(name: &str) -> Option<FiniteGroup> {
    match name {
        "C1" => Some(FiniteGroup::trivial()),
        "C2" => Some(FiniteGroup::cyclic(2)),
        "C3" => Some(FiniteGroup::cyclic(3)),
        "C4" => Some(FiniteGroup::cyclic(4)),
        "V4" => Some(FiniteGroup::klein_four()),
        "S3" => Some(FiniteGroup::symmetric_3()),
        _ => None,
    }
}

/// The delooping B G of a named group.
pub fn groupoid(name: &str) -> Option<FiniteGroupoid> {
    group(name).map(|g| FiniteGroupoid::delooping(&g))
}

/// Coproduct of named deloopings, e.g. ["C2", "C3"].
pub fn coproduct(names: &[String]) -> Option<FiniteGroupoid> {
    let mut parts = names.iter().map(|n| groupoid(n));
    let mut acc = parts.next()??;
    for p in parts {
        acc = FiniteGroupoid::coproduct(&acc, &p?);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_resolve() {
        for name in ["C1", "C2", "C3", "C4", "V4", "S3"] {
            let g = groupoid(name).unwrap();
            assert_eq!(g.object_count(), 1);
        }
        assert!(group("C5").is_none());
        let g = coproduct(&["C2".into(), "C3".into()]).unwrap();
        assert_eq!(g.object_count(), 2);
        assert_eq!(g.morphism_count(), 5);
    }
}
