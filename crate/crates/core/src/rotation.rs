//! Classification of a realized rotation group as polytope data: type,
//! standard subgroups, intersection property, direct regularity versus
//! chirality, coverings and self-duality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{
    hom_graph_extends, subgroup_closure, subgroup_intersection, ConcreteGroup, Element,
    Presentation, Subgroup,
};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::words::Word;

pub use crate::catalog::SchlafliType;

/// A finite rotation group with distinguished generators `s1..s(n-1)`,
/// i.e. a finite quotient of the universal rotation group of rank `n`.
#[derive(Clone, Debug)]
pub struct RotationSystem {
    group: ConcreteGroup,
    source: Option<Presentation>,
    label: String,
}

impl RotationSystem {
    /// Realizes `p`. The implicit relators hold by construction.
    pub fn from_presentation(p: &Presentation, limit: usize) -> Result<Self> {
        let group = ConcreteGroup::realize(p, limit)?;
        Ok(RotationSystem {
            group,
            source: Some(p.clone()),
            label: p.label().to_string(),
        })
    }

    /// Wraps a concrete group, checking the implicit relators.
    pub fn from_group(group: ConcreteGroup, label: impl Into<String>) -> Result<Self> {
        let implicit = Presentation::new(group.rank(), Vec::new(), "")?;
        if !group.satisfies(&implicit)? {
            return Err(Error::Invalid(
                "generators do not satisfy (s_i ... s_j)^2 = 1".into(),
            ));
        }
        Ok(RotationSystem {
            group,
            source: None,
            label: label.into(),
        })
    }

    pub fn group(&self) -> &ConcreteGroup {
        &self.group
    }

    pub fn source(&self) -> Option<&Presentation> {
        self.source.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn evaluate(&self, w: &Word) -> Result<Element> {
        self.group.evaluate(w)
    }

    fn relabelled(&self, images: Vec<Word>, label: String, source: Option<Presentation>) -> Self {
        let group = self
            .group
            .relabel(&images)
            .expect("images of an automorphism of W+ generate the group");
        RotationSystem {
            group,
            source,
            label,
        }
    }

    /// Rotation group of the dual: `s_i' = s_(n-i)^-1` in the same group.
    pub fn dual(&self) -> Self {
        let n = self.rank();
        let images = (1..n)
            .map(|i| Word::generator(i, n).expect("in range").dual())
            .collect();
        let source = self.source.as_ref().map(Presentation::dual);
        self.relabelled(images, format!("dual({})", self.label), source)
    }

    /// Rotation group of the mirror image: `s1^-1, s1^2 s2, s3, ...`.
    pub fn mirror(&self) -> Self {
        let n = self.rank();
        let images = (1..n)
            .map(|i| Word::generator(i, n).expect("in range").enantiomorph())
            .collect();
        let source = self.source.as_ref().map(Presentation::mirror);
        self.relabelled(images, format!("mirror({})", self.label), source)
    }

    /// `<s1, ..., s(n-2)>` as a rotation system of rank `n-1`.
    pub fn facet(&self) -> Result<Self> {
        self.section((1..self.rank() - 1).collect(), "facet")
    }

    /// `<s2, ..., s(n-1)>` as a rotation system of rank `n-1`.
    pub fn vertex_figure(&self) -> Result<Self> {
        self.section((2..self.rank()).collect(), "vertex-figure")
    }

    fn section(&self, indices: Vec<usize>, what: &str) -> Result<Self> {
        if self.rank() < 3 {
            return Err(Error::InvalidRank(self.rank() - 1));
        }
        let gens: Vec<Element> = indices.iter().map(|&i| self.group.generator(i)).collect();
        let group = self.group.regenerate(&gens)?;
        RotationSystem::from_group(group, format!("{what}({})", self.label))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Subset of `{0, ..., n-1}` as a bit mask.
fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn vec_to_mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Type `{p1, ..., p(n-1)}` with `p_i` the order of `s_i`.
pub fn schlafli_type(r: &RotationSystem) -> SchlafliType {
    let entries = r
        .group
        .generators()
        .into_iter()
        .map(|g| r.group.element_order(g) as u64)
        .collect();
    // generators of order 1 give entry 1; keep them visible rather than panic
    SchlafliType::new(entries).unwrap_or_else(|_| {
        let entries = r
            .group
            .generators()
            .into_iter()
            .map(|g| r.group.element_order(g).max(2) as u64)
            .collect();
        SchlafliType::new(entries).expect("entries are at least 2")
    })
}

/// Words `tau(i, j)` with `i <= j`, `i-1 in set`, `j in set`.
pub fn standard_generators(rank: usize, set: &[usize]) -> Vec<Word> {
    let mut out = Vec::new();
    for &a in set {
        for &j in set {
            let i = a + 1;
            if i <= j && j < rank {
                out.push(Word::tau(i, j, rank).expect("valid pair"));
            }
        }
    }
    out
}

/// `Γ⁺_I = <tau(i, j) | i <= j, i-1 in I, j in I>`.
pub fn standard_subgroup(r: &RotationSystem, set: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = set.iter().find(|&&i| i >= r.rank()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            rank: r.rank(),
        });
    }
    let gens = standard_generators(r.rank(), set)
        .iter()
        .map(|w| r.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(subgroup_closure(&r.group, &gens))
}

/// All `2^n` standard subgroups, indexed by bit mask.
pub fn all_standard_subgroups(r: &RotationSystem, exec: Execution) -> Vec<Subgroup> {
    let masks: Vec<u64> = (0..1u64 << r.rank()).collect();
    par::map(exec, &masks, |&m| {
        standard_subgroup(r, &mask_to_vec(m)).expect("indices in range")
    })
}

/// A pair `(I, J)` with `Γ⁺_I ∩ Γ⁺_J != Γ⁺_(I∩J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

impl fmt::Display for IntersectionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I = {:?}, J = {:?}", self.i, self.j)
    }
}

/// Outcome of the intersection-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionCheck {
    pub holds: bool,
    pub witness: Option<IntersectionWitness>,
}

/// Checks `Γ⁺_I ∩ Γ⁺_J = Γ⁺_(I∩J)` over all pairs of subsets.
///
/// Pairs are visited with `I < J` as bit masks (bit `k` for index `k`),
/// skipping nested pairs, and the first violation in that order is
/// reported. Containment `Γ⁺_(I∩J) <= Γ⁺_I ∩ Γ⁺_J` always holds, so only
/// orders are compared.
pub fn check_intersection_property(r: &RotationSystem) -> IntersectionCheck {
    check_intersection_property_with(r, Execution::default())
}

pub fn check_intersection_property_with(r: &RotationSystem, exec: Execution) -> IntersectionCheck {
    let subgroups = all_standard_subgroups(r, exec);
    let full = (1u64 << r.rank()) - 1;
    let mut pairs = Vec::new();
    for a in 0..=full {
        for b in a + 1..=full {
            if a & b == a || a & b == b {
                continue;
            }
            pairs.push((a, b));
        }
    }
    let violates = |&(a, b): &(u64, u64)| {
        let sa = &subgroups[a as usize];
        let sb = &subgroups[b as usize];
        let meet = &subgroups[(a & b) as usize];
        let inter = subgroup_intersection(sa, sb).expect("same parent");
        inter.order() != meet.order()
    };
    match par::position_first(exec, &pairs, violates) {
        None => IntersectionCheck {
            holds: true,
            witness: None,
        },
        Some(k) => {
            let (a, b) = pairs[k];
            IntersectionCheck {
                holds: false,
                witness: Some(IntersectionWitness {
                    i: mask_to_vec(a),
                    j: mask_to_vec(b),
                }),
            }
        }
    }
}

/// Images `s1^-1, s1^2 s2, s3, ..., s(n-1)` of the mirror assignment.
fn mirror_images(r: &RotationSystem) -> Vec<Element> {
    let n = r.rank();
    (1..n)
        .map(|i| {
            let w = Word::generator(i, n).expect("in range").enantiomorph();
            r.evaluate(&w).expect("same rank")
        })
        .collect()
}

/// True iff `s1 -> s1^-1, s2 -> s1^2 s2, s_j -> s_j (j >= 3)` extends to an
/// automorphism of the group. Such a map is onto because the images
/// generate, so extending to a homomorphism is enough.
pub fn is_directly_regular(r: &RotationSystem) -> bool {
    hom_graph_extends(&r.group, &mirror_images(r), &r.group)
        .expect("image count matches rank")
        .extends
}

/// True iff `s_i -> s_i'` extends to a homomorphism `p -> q`.
pub fn covers(p: &RotationSystem, q: &RotationSystem) -> Result<bool> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: q.rank(),
        });
    }
    Ok(hom_graph_extends(&p.group, &q.group.generators(), &q.group)?.extends)
}

/// Chirality of a rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    DirectlyRegular,
    Chiral,
}

/// Self-duality of a rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfDuality {
    NotSelfDual,
    ProperlySelfDual,
    ImproperlySelfDual,
}

/// Polytopality verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polytopality {
    Yes,
    No,
    Unknown,
}

/// Images of the generators under `w -> dual(w)`.
fn dual_images(r: &RotationSystem) -> Vec<Element> {
    let n = r.rank();
    (1..n)
        .map(|i| {
            r.evaluate(&Word::generator(i, n).expect("in range").dual())
                .expect("same rank")
        })
        .collect()
}

/// Images of the generators under `w -> dual(enantiomorph(w))`.
fn dual_mirror_images(r: &RotationSystem) -> Vec<Element> {
    let n = r.rank();
    (1..n)
        .map(|i| {
            let w = Word::generator(i, n)
                .expect("in range")
                .enantiomorph()
                .dual();
            r.evaluate(&w).expect("same rank")
        })
        .collect()
}

/// Properly self-dual iff the dual assignment `s_i -> s_(n-i)^-1` is an
/// automorphism (the dual has an identical presentation). Improperly
/// self-dual iff instead `s_i -> dual(mirror(s_i))` is one (mirror and dual
/// have identical presentations). A directly regular system that is
/// improperly self-dual is reported as properly self-dual.
pub fn classify_self_duality(r: &RotationSystem) -> SelfDuality {
    let g = &r.group;
    if hom_graph_extends(g, &dual_images(r), g)
        .expect("rank")
        .extends
    {
        return SelfDuality::ProperlySelfDual;
    }
    if hom_graph_extends(g, &dual_mirror_images(r), g)
        .expect("rank")
        .extends
    {
        if is_directly_regular(r) {
            return SelfDuality::ProperlySelfDual;
        }
        return SelfDuality::ImproperlySelfDual;
    }
    SelfDuality::NotSelfDual
}

/// The same classification computed from presentations: realize `p`, its
/// dual and its mirror, and compare them under the identity assignment on
/// generators.
pub fn classify_self_duality_presented(p: &Presentation, limit: usize) -> Result<SelfDuality> {
    let primal = ConcreteGroup::realize(p, limit)?;
    let dual = ConcreteGroup::realize(&p.dual(), limit)?;
    let isomorphic = |a: &ConcreteGroup, b: &ConcreteGroup| -> Result<bool> {
        Ok(a.order() == b.order() && hom_graph_extends(a, &b.generators(), b)?.extends)
    };
    if isomorphic(&primal, &dual)? {
        return Ok(SelfDuality::ProperlySelfDual);
    }
    let mirror = ConcreteGroup::realize(&p.mirror(), limit)?;
    if isomorphic(&mirror, &dual)? {
        let r = RotationSystem::from_presentation(p, limit)?;
        if is_directly_regular(&r) {
            return Ok(SelfDuality::ProperlySelfDual);
        }
        return Ok(SelfDuality::ImproperlySelfDual);
    }
    Ok(SelfDuality::NotSelfDual)
}

/// Evidence for a polytopality verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Pair(IntersectionWitness),
    Criterion(String),
}

/// Summary of everything known about a rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    #[serde(rename = "type")]
    pub schlafli: SchlafliType,
    pub polytopal: Polytopality,
    pub witness: Option<Witness>,
    pub regularity: Regularity,
    pub self_duality: SelfDuality,
    pub criteria_fired: Vec<String>,
}

/// Tags recorded in [`ClassificationReport::criteria_fired`] by [`classify`].
pub mod tags {
    pub const INTERSECTION_PROPERTY: &str = "intersection_property";
    pub const MIRROR_AUTOMORPHISM: &str = "mirror_automorphism";
    pub const DUALITY_AUTOMORPHISM: &str = "duality_automorphism";
    pub const MIRROR_DUALITY_AUTOMORPHISM: &str = "mirror_duality_automorphism";
}

/// Fills every report field by direct computation.
pub fn classify(r: &RotationSystem) -> ClassificationReport {
    classify_with(r, Execution::default())
}

pub fn classify_with(r: &RotationSystem, exec: Execution) -> ClassificationReport {
    let (ip, (directly_regular, self_duality)) = par::join(
        exec,
        || check_intersection_property_with(r, exec),
        || par::join(exec, || is_directly_regular(r), || classify_self_duality(r)),
    );
    let mut criteria = vec![tags::INTERSECTION_PROPERTY.to_string()];
    if directly_regular {
        criteria.push(tags::MIRROR_AUTOMORPHISM.to_string());
    }
    match self_duality {
        SelfDuality::ProperlySelfDual => criteria.push(tags::DUALITY_AUTOMORPHISM.to_string()),
        SelfDuality::ImproperlySelfDual => {
            criteria.push(tags::MIRROR_DUALITY_AUTOMORPHISM.to_string())
        }
        SelfDuality::NotSelfDual => {}
    }
    ClassificationReport {
        order: r.order(),
        schlafli: schlafli_type(r),
        polytopal: if ip.holds {
            Polytopality::Yes
        } else {
            Polytopality::No
        },
        witness: ip.witness.map(Witness::Pair),
        regularity: if directly_regular {
            Regularity::DirectlyRegular
        } else {
            Regularity::Chiral
        },
        self_duality,
        criteria_fired: criteria,
    }
}

/// Helper used by tests and the mixer: `I` as a mask-free sorted list.
pub fn subset(indices: &[usize]) -> Vec<usize> {
    mask_to_vec(vec_to_mask(indices))
}
