//! Finite actions of a finite groupoid on finite sets: limits, colimits,
//! factorization, orbit decomposition, action groupoids and slice fragments.

pub mod action;
pub mod action_groupoid;
pub mod colimits;
pub mod factorize;
pub mod limits;
pub mod orbits;
pub mod slice;
pub mod slice_equivalence;

pub use action::{
    enumerate_gmaps, enumerate_gmaps_core, enumerate_gmaps_filtered, enumerate_giso,
    find_isomorphism, random_action, random_gmap, ActionError, ActionRef, Elem, GAction, GMap,
};
pub use action_groupoid::{action_groupoid, ActionGroupoid};
pub use colimits::{coequalizer, coproduct, coproduct_many, initial, ColimitResult};
pub use factorize::{epi_mono_factorize, FactorizationResult};
pub use limits::{equalizer, product, pullback, terminal, to_terminal, LimitResult};
pub use orbits::{is_connected, orbit_decomposition, OrbitDecomposition, Summand};
pub use slice::{
    base_change, base_change_map, find_isomorphism_over, fragment_from_objects, slice_fragment,
    slice_hom, BaseChange, SliceFragment, SliceObject,
};
pub use slice_equivalence::{slice_action_equivalence, MaterializedFragment, SliceActionEquivalence};
