//! The site interface: a category fragment with finite (co)limits,
//! factorization, and set-valued fiber functors.
//!
//! Implementors: intensional G-set fragments, explicit category fragments,
//! and descent categories. The fragment scopes quantifiers; constructions are
//! free to produce values outside the enumerated fragment where the model is
//! intensional.

use thiserror::Error;

use crate::budget::{Budget, BudgetError};

#[derive(Debug, Error)]
pub enum SiteError {
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("fragment is not closed under the requested construction: {0}")]
    FragmentNotClosed(String),
    #[error("operation unsupported by this site: {0}")]
    Unsupported(String),
}

/// Factorization data: u = mono . epi with a complement.
pub struct Factorization<S: Site + ?Sized> {
    pub epi: S::Mor,
    pub mono: S::Mor,
    pub image: S::Obj,
    pub complement: S::Obj,
    /// iso image ⊔ complement -> target of u.
    pub iso: S::Mor,
}

pub trait Site {
    type Obj: Clone;
    type Mor: Clone;

    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    fn src(&self, f: &Self::Mor) -> Self::Obj;
    fn dst(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj, budget: &Budget) -> Result<Vec<Self::Mor>, SiteError>;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    fn initial(&self) -> Result<Self::Obj, SiteError>;
    fn terminal(&self) -> Result<Self::Obj, SiteError>;
    /// (product, projection to a, projection to b)
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<(Self::Obj, Self::Mor, Self::Mor), SiteError>;
    /// (pullback of f: A -> C, g: B -> C, leg to A, leg to B)
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor, Self::Mor), SiteError>;
    /// (equalizer object, inclusion)
    fn equalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor), SiteError>;
    /// (coproduct, injection from a, injection from b)
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj) -> Result<(Self::Obj, Self::Mor, Self::Mor), SiteError>;
    /// (coequalizer object, quotient map)
    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor), SiteError>;
    fn factorize(&self, u: &Self::Mor) -> Result<Factorization<Self>, SiteError>;
    /// Connected summands with their inclusions; empty for the initial object.
    fn decompose(&self, x: &Self::Obj) -> Result<Vec<(Self::Obj, Self::Mor)>, SiteError>;

    /// Number of fiber functors (the index set J).
    fn fiber_count(&self) -> usize;
    /// Indices of the finite witness subset I ⊆ J.
    fn witness_set(&self) -> Vec<usize>;
    fn fiber_obj(&self, j: usize, x: &Self::Obj) -> usize;
    /// The function F_j(f), as an index table domain -> codomain.
    fn fiber_mor(&self, j: usize, f: &Self::Mor) -> Vec<usize>;

    /// The enumerated fragment (scope of quantified checks).
    fn fragment_objects(&self) -> Vec<Self::Obj>;
    /// Connected fragment objects (for generating fragments).
    fn connected_fragment_objects(&self) -> Vec<Self::Obj>;

    fn describe_obj(&self, x: &Self::Obj) -> String;
}

/// Searches the hom-set for an isomorphism.
pub fn find_iso<S: Site>(
    site: &S,
    a: &S::Obj,
    b: &S::Obj,
    budget: &Budget,
) -> Result<Option<S::Mor>, SiteError> {
    Ok(site.hom(a, b, budget)?.into_iter().find(|m| site.is_iso(m)))
}

/// An object is initial/terminal precisely when all witness fibers are
/// empty/singletons.
pub fn fibers_all_empty<S: Site>(site: &S, x: &S::Obj) -> bool {
    site.witness_set().iter().all(|&j| site.fiber_obj(j, x) == 0)
}

pub fn fibers_all_singleton<S: Site>(site: &S, x: &S::Obj) -> bool {
    site.witness_set().iter().all(|&j| site.fiber_obj(j, x) == 1)
}
