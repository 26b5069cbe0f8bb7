//! Mixing and comixing of rotation groups.
//!
//! The mix of two rotation systems is the subgroup of the direct product
//! generated by the pairs `(s_i, s_i')`; the comix is the group presented by
//! both relator lists at once. Their orders multiply to `|P| |Q|`.

mod criteria;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::SchlafliType;
use crate::engine::{normal_closure, ConcreteGroup, Element, Presentation};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::rotation::{
    self, check_intersection_property_with, classify_with, schlafli_type, standard_subgroup,
    ClassificationReport, IntersectionWitness, Polytopality, RotationSystem,
};
use crate::words::Word;

pub use criteria::{
    chirality_criteria, chirality_criteria_with, ChiralityReport, CriterionOutcome,
};

/// A mix together with its factors and the order of their comix.
#[derive(Clone, Debug)]
pub struct MixResult {
    pub system: RotationSystem,
    pub factors: (RotationSystem, RotationSystem),
    pub comix_order: usize,
    /// Factor elements `(x, y)` for each mix element, in element order.
    pub pairs: Vec<(Element, Element)>,
}

impl MixResult {
    pub fn order(&self) -> usize {
        self.system.order()
    }
}

fn same_rank(p: &RotationSystem, q: &RotationSystem) -> Result<()> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            left: p.rank(),
            right: q.rank(),
        });
    }
    Ok(())
}

/// The subgroup of `P x Q` generated by `(s_i, s_i')`, built as its own
/// Cayley graph. `limit` bounds its order.
pub fn mix(p: &RotationSystem, q: &RotationSystem, limit: usize) -> Result<MixResult> {
    same_rank(p, q)?;
    let (gp, gq) = (p.group(), q.group());
    let (group, pairs) = ConcreteGroup::from_action(
        p.rank(),
        (gp.identity(), gq.identity()),
        |&(x, y), l| (gp.act(x, l), gq.act(y, l)),
        limit,
    )?;
    let system = RotationSystem::from_group(group, format!("{} ◊ {}", p.label(), q.label()))?;
    let comix_order = comix_order_concrete(p, q)?;
    Ok(MixResult {
        system,
        factors: (p.clone(), q.clone()),
        comix_order,
        pairs,
    })
}

/// Presentation with both relator lists, and the order of the group it
/// presents.
pub fn comix(p: &Presentation, q: &Presentation, limit: usize) -> Result<(Presentation, usize)> {
    let joint = p.comix(q)?;
    let order = ConcreteGroup::realize(&joint, limit)?.order();
    Ok((joint, order))
}

/// Relators whose normal closure in the free group is the kernel onto `r`:
/// the source relators when known, otherwise Schreier relators.
fn defining_relators(r: &RotationSystem) -> Vec<Word> {
    match r.source() {
        Some(p) => p.relators().to_vec(),
        None => r.group().schreier_relators(),
    }
}

/// Comix order as `|P| / |N|`, where `N` is the normal closure in `P` of
/// the relators of `Q`. Works for systems without a presentation and never
/// enumerates anything larger than `P`.
pub fn comix_order_concrete(p: &RotationSystem, q: &RotationSystem) -> Result<usize> {
    same_rank(p, q)?;
    let (small, other) = if p.order() <= q.order() {
        (p, q)
    } else {
        (q, p)
    };
    let images = defining_relators(other)
        .iter()
        .map(|w| small.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    let n = normal_closure(small.group(), &images);
    Ok(small.order() / n.order())
}

/// Comix order, through coset enumeration when both systems carry a
/// presentation and through [`comix_order_concrete`] otherwise.
pub fn comix_order(p: &RotationSystem, q: &RotationSystem, limit: usize) -> Result<usize> {
    match (p.source(), q.source()) {
        (Some(a), Some(b)) => Ok(comix(a, b, limit)?.1),
        _ => comix_order_concrete(p, q),
    }
}

/// Outcome of [`verify_size_identity`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeIdentity {
    pub p_order: usize,
    pub q_order: usize,
    pub mix_order: usize,
    pub comix_order: usize,
    /// `|mix| |comix| = |P| |Q|`.
    pub holds: bool,
    /// When the comix is trivial, whether the mix is the full direct product.
    pub direct_product: Option<bool>,
}

/// Computes mix and comix independently and compares
/// `|mix| |comix|` with `|P| |Q|`.
pub fn verify_size_identity(
    p: &RotationSystem,
    q: &RotationSystem,
    limit: usize,
) -> Result<SizeIdentity> {
    let m = mix(p, q, limit)?;
    let comix_order = comix_order(p, q, limit)?;
    let product = p.order() * q.order();
    Ok(SizeIdentity {
        p_order: p.order(),
        q_order: q.order(),
        mix_order: m.order(),
        comix_order,
        holds: m.order() * comix_order == product && m.comix_order == comix_order,
        direct_product: (comix_order == 1).then_some(m.order() == product),
    })
}

/// Which self-dual mix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `P ◊ Pδ`.
    Proper,
    /// `P ◊ (P̄)δ`.
    Improper,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proper" => Ok(Variant::Proper),
            "improper" => Ok(Variant::Improper),
            _ => Err(Error::Invalid(format!("unknown variant {s:?}"))),
        }
    }
}

/// `P ◊ Pδ` or `P ◊ (P̄)δ`.
pub fn self_dual_mix(p: &RotationSystem, variant: Variant, limit: usize) -> Result<MixResult> {
    let other = match variant {
        Variant::Proper => p.dual(),
        Variant::Improper => p.dual().mirror(),
    };
    mix(p, &other, limit)
}

/// Rule that decided a polytopality verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolytopalityRule {
    /// Every rank-3 mix is a polyhedron.
    #[serde(rename = "Cor3.7")]
    Polyhedron,
    /// Coprime types give a polytope whose group is the direct product.
    #[serde(rename = "Prop3.5")]
    CoprimeTypes,
    /// Direct intersection-property check on the mix.
    #[serde(rename = "intersection_property")]
    Direct,
}

impl PolytopalityRule {
    pub fn tag(self) -> &'static str {
        match self {
            PolytopalityRule::Polyhedron => "Cor3.7",
            PolytopalityRule::CoprimeTypes => "Prop3.5",
            PolytopalityRule::Direct => rotation::tags::INTERSECTION_PROPERTY,
        }
    }
}

impl fmt::Display for PolytopalityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Polytopality verdict for a mix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixPolytopality {
    pub verdict: Polytopality,
    pub rule: PolytopalityRule,
    pub witness: Option<IntersectionWitness>,
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Decides polytopality of a mix of two polytopes, trying the cheap rules
/// first: rank 3, then coprime types, then the direct check.
pub fn mix_polytopality(m: &MixResult) -> MixPolytopality {
    mix_polytopality_with(m, Execution::default())
}

pub fn mix_polytopality_with(m: &MixResult, exec: Execution) -> MixPolytopality {
    let (p, q) = &m.factors;
    if m.system.rank() == 3 {
        return MixPolytopality {
            verdict: Polytopality::Yes,
            rule: PolytopalityRule::Polyhedron,
            witness: None,
        };
    }
    let (tp, tq) = (schlafli_type(p), schlafli_type(q));
    let coprime = tp
        .entries()
        .iter()
        .zip(tq.entries())
        .all(|(&a, &b)| gcd(a, b) == 1);
    if coprime {
        return MixPolytopality {
            verdict: Polytopality::Yes,
            rule: PolytopalityRule::CoprimeTypes,
            witness: None,
        };
    }
    let check = check_intersection_property_with(&m.system, exec);
    MixPolytopality {
        verdict: if check.holds {
            Polytopality::Yes
        } else {
            Polytopality::No
        },
        rule: PolytopalityRule::Direct,
        witness: check.witness,
    }
}

/// Report for a mix: polytopality from [`mix_polytopality`], the rest from
/// [`rotation::classify`].
pub fn classify_mix(m: &MixResult) -> ClassificationReport {
    classify_mix_with(m, Execution::default())
}

pub fn classify_mix_with(m: &MixResult, exec: Execution) -> ClassificationReport {
    let mut report = classify_with(&m.system, exec);
    let verdict = mix_polytopality_with(m, exec);
    if verdict.rule != PolytopalityRule::Direct {
        report
            .criteria_fired
            .insert(0, verdict.rule.tag().to_string());
    }
    report
}

/// Even-rank obstruction on a type: `n` even, `gcd(p_(m-1), p_(m+1)) = 1`
/// and `p_m >= 3` with `m = n/2`. When it holds, `P ◊ Pδ` is not a polytope.
pub fn even_rank_obstruction_for_type(t: &SchlafliType) -> bool {
    let n = t.rank();
    if !n.is_multiple_of(2) || n < 4 {
        return false;
    }
    let m = n / 2;
    let p = |i: usize| t.entries()[i - 1];
    gcd(p(m - 1), p(m + 1)) == 1 && p(m) >= 3
}

pub fn even_rank_obstruction(p: &RotationSystem) -> bool {
    even_rank_obstruction_for_type(&schlafli_type(p))
}

/// Verdict of [`four_polytopality_criterion`]. The criterion only ever
/// proves polytopality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourPolytopality {
    Polytopal,
    Inconclusive,
}

/// Outcome of [`four_polytopality_criterion`] with the numbers used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourPolytopalityReport {
    pub q: u64,
    pub facet_mix_order: usize,
    pub verdict: FourPolytopality,
}

pub(crate) fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// For a rank-4 polytope of type `{p, q, r}` with facets `K` and
/// vertex-figures `L`: if `q` is prime and `q^2` does not divide
/// `|Γ⁺(K) ◊ Γ⁺(Lδ)|`, then `P ◊ Pδ` is polytopal. Here `q` is the last
/// entry of the facet type, which must be the first entry of the
/// vertex-figure type.
pub fn four_polytopality_criterion(
    facet: &RotationSystem,
    vertex_figure: &RotationSystem,
    limit: usize,
) -> Result<FourPolytopalityReport> {
    if facet.rank() != 3 || vertex_figure.rank() != 3 {
        return Err(Error::InvalidRank(
            facet.rank().max(vertex_figure.rank()) + 1,
        ));
    }
    let q = schlafli_type(facet).entries()[1];
    let q_vertex = schlafli_type(vertex_figure).entries()[0];
    if q != q_vertex {
        return Err(Error::Invalid(format!(
            "facet type ends in {q} but vertex-figure type starts with {q_vertex}"
        )));
    }
    let facet_mix_order = mix(facet, &vertex_figure.dual(), limit)?.order();
    let divisible = (facet_mix_order as u64).is_multiple_of(q * q);
    Ok(FourPolytopalityReport {
        q,
        facet_mix_order,
        verdict: if is_prime(q) && !divisible {
            FourPolytopality::Polytopal
        } else {
            FourPolytopality::Inconclusive
        },
    })
}

/// The same criterion applied to a rank-4 system through its sections.
pub fn four_polytopality_of(p: &RotationSystem, limit: usize) -> Result<FourPolytopalityReport> {
    if p.rank() != 4 {
        return Err(Error::InvalidRank(p.rank()));
    }
    four_polytopality_criterion(&p.facet()?, &p.vertex_figure()?, limit)
}

/// Face counts per rank `0..n-1` and the flag count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceVector {
    pub faces: Vec<usize>,
    pub flags: usize,
}

impl FaceVector {
    /// Alternating sum `f0 - f1 + f2 - ...`.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// `i`-faces are the cosets of the stabilizer `Γ⁺_I` with
/// `I = {0, ..., n-1} \ {i}`; there are `2 |Γ⁺|` flags.
pub fn face_vector(r: &RotationSystem) -> FaceVector {
    let n = r.rank();
    let faces = (0..n)
        .map(|i| {
            let set: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            r.order() / standard_subgroup(r, &set).expect("in range").order()
        })
        .collect();
    FaceVector {
        faces,
        flags: 2 * r.order(),
    }
}

/// `lcm` of the entries of a type, used by the criteria.
pub(crate) fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, lcm)
}
