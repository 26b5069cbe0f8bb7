//! Constructing and classifying self-dual chiral polytopes through their
//! rotation groups.
//!
//! The crate works with finite quotients of the universal rotation group
//! `W+ = <s1, ..., s(n-1) | (s_i ... s_j)^2>`. Presentations are realized
//! by coset enumeration ([`engine`]), wrapped as [`RotationSystem`]s and
//! classified ([`rotation`]). The [`mixer`] builds mixes and comixes of
//! rotation groups, in particular of a polytope with its dual, and
//! evaluates the polytopality and chirality criteria for them. The
//! [`oracle`] module rebuilds the face poset from cosets and checks the
//! polytope axioms combinatorially.

pub mod catalog;
pub mod engine;
mod error;
pub mod mixer;
pub mod oracle;
pub mod par;
pub mod reproduce;
pub mod rotation;
pub mod words;

pub use catalog::SchlafliType;
pub use engine::{ConcreteGroup, Element, Presentation, Subgroup};
pub use error::{Error, Result};
pub use rotation::{ClassificationReport, RotationSystem};
pub use words::{Letter, Word};
