//! Finite categories, groupoids, functors, natural transformations and
//! decidable equivalence.

pub mod category;
pub mod equivalence;
pub mod functor;
pub mod functor_category;
pub mod group;
pub mod groupoid;
pub mod presets;

pub use category::{CategoryError, FiniteCategory, MorId, ObjId, RawCategory};
pub use equivalence::{
    decide_equivalence, groupoids_equivalent, EquivalenceRefutation, EquivalenceVerdict,
    EquivalenceWitness, GroupoidComparison, GroupoidRefutation, HomBijection,
};
pub use functor::{enumerate_functors, enumerate_natural_transformations, Functor, NatTransform};
pub use functor_category::{FunctorCategory, FunctorCategoryError};
pub use group::FiniteGroup;
pub use groupoid::{ComponentData, Components, FiniteGroupoid};
