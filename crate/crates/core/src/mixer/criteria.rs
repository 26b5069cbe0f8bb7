//! Sufficient conditions for `P ◊ Pδ` to be chiral, checked against the
//! direct mirror-automorphism test on the mix.

use serde::{Deserialize, Serialize};

use super::{comix_order_concrete, gcd, lcm, lcm_all, mix};
use crate::catalog::universal_rotation;
use crate::engine::ConcreteGroup;
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rotation::{covers, is_directly_regular, schlafli_type, RotationSystem};

/// Smallest cap used when enumerating the universal comix.
const UNIVERSAL_COMIX_FLOOR: usize = 50_000;

/// One evaluated criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub tag: String,
    /// False when the criterion's hypotheses on the type do not hold.
    pub applicable: bool,
    pub fired: bool,
}

/// Everything computed by [`chirality_criteria`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiralityReport {
    pub order: usize,
    /// `|Γ⁺(P) □ Γ⁺(Pδ)|`.
    pub comix_dual: usize,
    /// `|Γ⁺(P) □ Γ⁺(P̄)|`.
    pub comix_mirror: usize,
    /// `|Γ⁺(P) ◊ Γ⁺(Pδ)|`.
    pub mix_dual_order: usize,
    /// `|Γ⁺(P) ◊ Γ⁺(P̄)|`.
    pub mix_mirror_order: usize,
    pub ell: u64,
    /// Comix of the universal groups of the type and its reverse; `None` when
    /// it is too large for the Cor5.5 bound.
    pub universal_comix: Option<usize>,
    /// `|(P ◊ P̄) □ (Pδ ◊ (P̄)δ)|`.
    pub double_comix: usize,
    /// Sorted by tag.
    pub outcomes: Vec<CriterionOutcome>,
    pub criteria_fired: Vec<String>,
    /// Direct test on `P ◊ Pδ`.
    pub mix_directly_regular: bool,
    /// No criterion fired on a directly regular mix.
    pub consistent: bool,
}

pub fn chirality_criteria(p: &RotationSystem, limit: usize) -> Result<ChiralityReport> {
    chirality_criteria_with(p, limit, Execution::default())
}

/// Evaluates every chirality criterion for `P ◊ Pδ` and the direct test.
///
/// Fails with [`Error::NotChiral`] when `p` is directly regular.
pub fn chirality_criteria_with(
    p: &RotationSystem,
    limit: usize,
    exec: Execution,
) -> Result<ChiralityReport> {
    if is_directly_regular(p) {
        return Err(Error::NotChiral);
    }
    let n = p.rank();
    let t = schlafli_type(p);
    let entries = t.entries();
    let pi = |i: usize| entries[i - 1];
    let (dual, mirror) = (p.dual(), p.mirror());

    let ((comix_dual, comix_mirror), (mix_dual, mix_mirror)) = par::join(
        exec,
        || {
            par::join(
                exec,
                || comix_order_concrete(p, &dual),
                || comix_order_concrete(p, &mirror),
            )
        },
        || par::join(exec, || mix(p, &dual, limit), || mix(p, &mirror, limit)),
    );
    let (comix_dual, comix_mirror) = (comix_dual?, comix_mirror?);
    let (mix_dual, mix_mirror) = (mix_dual?, mix_mirror?);

    let order = p.order() as u128;
    let mm = mix_mirror.order() as u128;
    let (cd, cm) = (comix_dual as u128, comix_mirror as u128);

    let ells: Vec<u64> = (1..n).map(|i| lcm(pi(i), pi(n - i))).collect();
    let ell = lcm_all((1..n).map(|i| ells[i - 1] / pi(i)));

    // Cor5.5 fires iff mm^2 > U |P|^2, so a comix beyond that bound
    // can be abandoned.
    let bound = mm * mm / (order * order);
    let cap = usize::try_from(bound + 1)
        .unwrap_or(usize::MAX)
        .max(UNIVERSAL_COMIX_FLOOR)
        .min(limit);
    let universal = universal_rotation(&t).comix(&universal_rotation(&t.reversed()))?;
    let universal_comix = match ConcreteGroup::realize(&universal, cap) {
        Ok(g) => Some(g.order()),
        Err(e) if e.is_overflow() => None,
        Err(e) => return Err(e),
    };

    let double_dual = mix_mirror.system.dual();
    let (double_comix, (covers_mirror_mix, mix_directly_regular)) = par::join(
        exec,
        || comix_order_concrete(&mix_mirror.system, &double_dual),
        || {
            par::join(
                exec,
                || covers(&mix_dual.system, &mix_mirror.system),
                || is_directly_regular(&mix_dual.system),
            )
        },
    );
    let double_comix = double_comix?;
    let covers_mirror_mix = covers_mirror_mix?;

    let odd_coprime = n % 2 == 1 && (1..n).all(|i| gcd(pi(i), pi(n - i)) == 1);
    let mut outcomes = vec![
        CriterionOutcome {
            tag: "Cor5.5".into(),
            applicable: true,
            fired: universal_comix.is_some_and(|u| mm * mm > u as u128 * order * order),
        },
        CriterionOutcome {
            tag: "Prop5.1".into(),
            applicable: true,
            fired: !covers_mirror_mix,
        },
        CriterionOutcome {
            tag: "Prop5.2".into(),
            applicable: true,
            fired: cd > cm,
        },
        CriterionOutcome {
            tag: "Thm5.3".into(),
            applicable: true,
            fired: cm < u128::from(ell) * cd,
        },
        CriterionOutcome {
            tag: "Thm5.4".into(),
            applicable: true,
            fired: mm * mm > double_comix as u128 * order * order,
        },
        CriterionOutcome {
            tag: "Thm5.6".into(),
            applicable: n == 3,
            fired: n == 3 && {
                let l1 = u128::from(ells[0]);
                cm * u128::from(pi(1) * pi(2)) < l1 * l1 * cd
            },
        },
        CriterionOutcome {
            tag: "Thm5.7".into(),
            applicable: odd_coprime,
            fired: odd_coprime && cm < u128::from(lcm_all(entries.iter().copied())),
        },
    ];
    outcomes.sort_by(|a, b| a.tag.cmp(&b.tag));
    let criteria_fired: Vec<String> = outcomes
        .iter()
        .filter(|o| o.fired)
        .map(|o| o.tag.clone())
        .collect();
    Ok(ChiralityReport {
        order: p.order(),
        comix_dual,
        comix_mirror,
        mix_dual_order: mix_dual.order(),
        mix_mirror_order: mix_mirror.order(),
        ell,
        universal_comix,
        double_comix,
        consistent: criteria_fired.is_empty() || !mix_directly_regular,
        outcomes,
        criteria_fired,
        mix_directly_regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn system(name: &str) -> RotationSystem {
        RotationSystem::from_presentation(&lookup(name).unwrap(), 1_000_000).unwrap()
    }

    #[test]
    fn torus_map_criteria() {
        let r = chirality_criteria(&system("{3,6}(1,2)"), 1_000_000).unwrap();
        assert_eq!(
            (r.comix_dual, r.mix_dual_order, r.mix_mirror_order),
            (3, 588, 294)
        );
        assert_eq!(r.universal_comix, Some(12));
        assert!(r.criteria_fired.contains(&"Cor5.5".to_string()));
        assert!(!r.mix_directly_regular);
        assert!(r.consistent);
    }

    #[test]
    fn directly_regular_input_is_rejected() {
        assert!(matches!(
            chirality_criteria(&system("[3,3]+"), 1_000_000),
            Err(Error::NotChiral)
        ));
    }
}
