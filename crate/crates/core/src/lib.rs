//! Finite groupoids acting on finite sets, Galois-style presentations with
//! fiber functors, descent data over coverings, and Seifert-van Kampen
//! verification against finite test categories.
//!
//! The crate is organized bottom-up:
//!
//! - [`fincat`]: finite categories/groupoids, functors, natural
//!   transformations, decidable equivalence.
//! - [`gset`]: finite actions of a finite groupoid, limits/colimits,
//!   factorization, orbits, action groupoids, slice fragments.
//! - [`galois`]: presentations with fiber functors, axiom checking, connected
//!   decomposition, fundamental groupoid reconstruction.
//! - [`descent`]: Čech diagrams, descent data, gluing, the stack verifier.
//! - [`vankampen`]: cocones into a candidate 2-colimit, the canonical
//!   comparison into descent data of Hom-diagrams, and the combined verifier.

pub mod budget;
pub mod fincat;
pub mod gset;
pub mod galois;
pub mod descent;
pub mod vankampen;

pub use budget::{Budget, BudgetError};
pub use fincat::{
    decide_equivalence, groupoids_equivalent, EquivalenceRefutation, EquivalenceWitness,
    FiniteCategory, FiniteGroup, FiniteGroupoid, Functor, NatTransform,
};
pub use gset::{GAction, GMap};
