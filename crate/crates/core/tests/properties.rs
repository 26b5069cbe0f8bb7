//! Invariants of the word, engine, catalog and rotation layers.

mod common;

use std::sync::OnceLock;

use common::*;
use polymix_core::catalog::{lookup, TorusKind, TorusMapParams};
use polymix_core::engine::{enumerate_cosets, hom_graph_extends, subgroup_closure};
use polymix_core::rotation::{
    check_intersection_property, classify, classify_self_duality, covers, is_directly_regular,
    Polytopality, Regularity,
};
use polymix_core::{Letter, Presentation, RotationSystem, Word};
use proptest::prelude::*;

/// Finite systems from the catalog, with the rotation groups of a few
/// torus maps that cover one another.
const POOL: &[&str] = &[
    "[3,3]+",
    "[3,4]+",
    "[4,3]+",
    "[3,5]+",
    "[5,3]+",
    "{3,6}(1,1)",
    "{3,6}(1,2)",
    "{3,6}(2,1)",
    "{6,3}(1,2)",
    "{3,6}(1,3)",
    "{3,6}(2,2)",
    "{3,6}(2,4)",
    "{4,4}(1,2)",
    "{4,4}(1,3)",
    "{4,4}(2,2)",
    "[3,3,3]+",
    "[4,3,3]+",
    "[3,3,4]+",
    "[2,4,2]+",
];

fn pool() -> &'static Vec<RotationSystem> {
    static POOL_SYSTEMS: OnceLock<Vec<RotationSystem>> = OnceLock::new();
    POOL_SYSTEMS.get_or_init(|| POOL.iter().map(|n| system(n)).collect())
}

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..rank, any::<bool>()), 0..max_len).prop_map(move |letters| {
        Word::from_letters(
            letters.into_iter().map(|(i, inv)| Letter::new(i, inv)),
            rank,
        )
        .unwrap()
    })
}

fn ranked_word() -> impl Strategy<Value = Word> {
    (3usize..7).prop_flat_map(|rank| word_strategy(rank, 40))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn enantiomorph_is_an_involution(w in ranked_word()) {
        prop_assert_eq!(w.enantiomorph().enantiomorph(), w);
    }

    #[test]
    fn dual_is_an_involution(w in ranked_word()) {
        prop_assert_eq!(w.dual().dual(), w);
    }

    #[test]
    fn normalize_is_idempotent(
        raw in prop::collection::vec((1usize..5, -3i64..=3), 0..30),
    ) {
        let w = Word::normalize(raw, 5).unwrap();
        prop_assert_eq!(w.normalized(), w.clone());
        prop_assert_eq!(Word::from_letters(w.letters().iter().copied(), 5).unwrap(), w);
    }

    #[test]
    fn inverse_cancels(w in ranked_word()) {
        prop_assert!(w.mul(&w.inverse()).unwrap().is_empty());
    }
}

/// Systems of several ranks in which the conjugation identity is checked.
fn realizations() -> Vec<&'static RotationSystem> {
    ["[3,3]+", "{3,6}(1,2)", "{4,4}(1,3)", "[3,3,3]+", "[4,3,3]+"]
        .iter()
        .map(|n| &pool()[POOL.iter().position(|p| p == n).unwrap()])
        .collect()
}

fn dual_of_mirror_identity(r: &RotationSystem, w: &Word) -> bool {
    let f = Word::full_product(r.rank()).unwrap();
    let lhs = r.evaluate(&w.enantiomorph().dual()).unwrap();
    let rhs = f
        .mul(&w.dual().enantiomorph())
        .unwrap()
        .mul(&f.inverse())
        .unwrap();
    lhs == r.evaluate(&rhs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dual_of_mirror_is_conjugate_mirror_of_dual(
        which in 0usize..5,
        seed in prop::collection::vec((1usize..4, any::<bool>()), 0..30),
    ) {
        let r = realizations()[which];
        let rank = r.rank();
        let w = Word::from_letters(
            seed.into_iter().map(|(i, inv)| Letter::new(1 + (i - 1) % (rank - 1), inv)),
            rank,
        )
        .unwrap();
        prop_assert!(dual_of_mirror_identity(r, &w));
    }
}

#[test]
fn realized_order_is_coset_count() {
    for name in POOL {
        let p = lookup(name).unwrap();
        let table = enumerate_cosets(&p, &[], LIMIT).unwrap();
        assert_eq!(system(name).order(), table.index(), "{name}");
    }
}

#[test]
fn implicit_relators_hold_in_every_realization() {
    for r in pool() {
        for w in Presentation::implicit_relators(r.rank()) {
            assert_eq!(
                r.evaluate(&w).unwrap(),
                r.group().identity(),
                "{}",
                r.label()
            );
        }
    }
}

#[test]
fn identity_assignment_extends() {
    for r in pool() {
        let g = r.group();
        let h = hom_graph_extends(g, &g.generators(), g).unwrap();
        assert!(h.extends);
        assert_eq!(h.image_order, g.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subgroup_orders_divide_group_order(
        which in 0..POOL.len(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3),
    ) {
        let g = pool()[which].group();
        let elements: Vec<_> = g.elements().collect();
        let gens: Vec<_> = picks.iter().map(|i| *i.get(&elements)).collect();
        let h = subgroup_closure(g, &gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &x in h.elements() {
            for &y in &gens {
                prop_assert!(h.contains(g.mul(x, y)));
                prop_assert!(h.contains(g.inverse(x)));
            }
        }
    }
}

#[test]
fn triangular_torus_orders() {
    for (b, c) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
        let m = b * b + b * c + c * c;
        let r = system(&format!("{{3,6}}({b},{c})"));
        assert_eq!(r.order() as u64, 6 * m);
        assert_eq!(
            TorusMapParams::new(TorusKind::Triangular, b, c)
                .unwrap()
                .rotation_group_order(),
            6 * m
        );
    }
}

#[test]
fn dual_and_mirror_presentations_keep_the_order() {
    for name in POOL {
        let p = lookup(name).unwrap();
        let order = system(name).order();
        for q in [p.dual(), p.mirror(), p.dual().mirror()] {
            let r = RotationSystem::from_presentation(&q, LIMIT).unwrap();
            assert_eq!(r.order(), order, "{}", q.label());
        }
    }
    for (b, c) in [(1, 2), (1, 3), (2, 3)] {
        let name = format!("{{4,4}}({b},{c})");
        let r = system(&name);
        assert_eq!(r.order() as u64, 4 * (b * b + c * c));
        assert_eq!(system(&format!("mirror:{name}")).order(), r.order());
    }
}

#[test]
fn catalog_systems_are_polytopal() {
    for r in pool() {
        let check = check_intersection_property(r);
        assert!(check.holds, "{} {:?}", r.label(), check.witness);
    }
}

#[test]
fn regularity_is_mirror_invariant() {
    for r in pool() {
        assert_eq!(
            is_directly_regular(r),
            is_directly_regular(&r.mirror()),
            "{}",
            r.label()
        );
    }
}

#[test]
fn covering_is_reflexive() {
    for r in pool() {
        assert!(covers(r, r).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn covering_is_transitive(
        a in 0..POOL.len(),
        b in 0..POOL.len(),
        c in 0..POOL.len(),
    ) {
        let (a, b, c) = (&pool()[a], &pool()[b], &pool()[c]);
        prop_assume!(a.rank() == b.rank() && b.rank() == c.rank());
        if covers(a, b).unwrap() && covers(b, c).unwrap() {
            prop_assert!(covers(a, c).unwrap());
        }
    }
}

#[test]
fn torus_chain_covers() {
    let names = ["{3,6}(2,4)", "{3,6}(1,2)"];
    assert!(covers(&system(names[0]), &system(names[1])).unwrap());
    assert!(!covers(&system(names[1]), &system(names[0])).unwrap());
    assert!(covers(&system("{4,4}(2,2)"), &system("{4,4}(1,1)")).unwrap());
}

#[test]
fn self_duality_is_dual_invariant() {
    for r in pool() {
        assert_eq!(
            classify_self_duality(&r.dual()),
            classify_self_duality(r),
            "{}",
            r.label()
        );
    }
}

#[test]
fn chiral_means_the_mirror_assignment_fails() {
    for r in pool() {
        let g = r.group();
        let images: Vec<_> = (1..r.rank())
            .map(|i| {
                r.evaluate(&Word::generator(i, r.rank()).unwrap().enantiomorph())
                    .unwrap()
            })
            .collect();
        let extends = hom_graph_extends(g, &images, g).unwrap().extends;
        let report = classify(r);
        assert_eq!(
            report.regularity == Regularity::Chiral,
            !extends,
            "{}",
            r.label()
        );
        if report.polytopal == Polytopality::No {
            assert!(report.witness.is_some());
        }
    }
}

#[test]
fn lattice_models_of_the_pool() {
    // the torus entries of the pool also match their lattice models
    for name in ["{3,6}(2,4)", "{4,4}(2,2)", "{3,6}(2,2)"] {
        let pres = lookup(name).unwrap();
        let kind = if name.starts_with("{4,4}") {
            TorusKind::Square
        } else {
            TorusKind::Triangular
        };
        let (b, c) = name[6..name.len() - 1].split_once(',').unwrap();
        let p = TorusMapParams::new(kind, b.parse().unwrap(), c.parse().unwrap()).unwrap();
        let model = LatticeTorus::new(p).rotation_group();
        let r = RotationSystem::from_presentation(&pres, LIMIT).unwrap();
        assert!(isomorphic(&model, &r), "{name}");
    }
}
