//! Finite realizations of finitely presented rotation groups.

mod coset;
mod group;
mod presentation;

pub use coset::{
    coset_limit_from_env, enumerate_cosets, CosetTable, COSET_LIMIT_ENV, DEFAULT_COSET_LIMIT,
};
pub use group::{
    hom_graph_extends, normal_closure, subgroup_closure, subgroup_intersection, ConcreteGroup,
    Element, HomGraph, Subgroup,
};
pub use presentation::Presentation;

/// Realizes `p` as a concrete group acting regularly on its elements.
pub fn realize(p: &Presentation, limit: usize) -> crate::Result<ConcreteGroup> {
    ConcreteGroup::realize(p, limit)
}
