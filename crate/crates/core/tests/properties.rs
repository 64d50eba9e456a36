//! Property tests over randomized arrangements, complexes and maps.

use std::collections::BTreeSet;

use proptest::prelude::*;

use chambers::arrangement::{Arrangement, Sign};
use chambers::homology::homology_groups;
use chambers::rational::int;
use chambers::simplicial::{barycentric_subdivision, Complex};
use chambers::social::{check_iia, enumerate_iia_self_maps, profile_distance};
use chambers::Budget;

fn arb_arrangement() -> impl Strategy<Value = Arrangement> {
    (1usize..=4)
        .prop_flat_map(|dim| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, dim), 1..=5)
        })
        .prop_filter_map("normals must be nonzero and pairwise independent", |rows| {
            let dim = rows[0].len();
            let rationals = rows
                .iter()
                .map(|row| row.iter().map(|&c| int(c)).collect())
                .collect();
            Arrangement::new(dim, rationals).ok()
        })
}

fn arb_complex() -> impl Strategy<Value = Complex<u32>> {
    proptest::collection::vec(proptest::collection::vec(0u32..6, 1..=4), 1..=6)
        .prop_map(|simplices| Complex::from_maximal(simplices).expect("nonempty simplices"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_are_sound_and_chambers_antipodal(arr in arb_arrangement()) {
        let chambers = arr.chambers();
        prop_assert!(!chambers.is_empty());
        for chamber in chambers.iter() {
            for (h, hyperplane) in arr.hyperplanes().iter().enumerate() {
                let value = hyperplane.eval(chamber.witness());
                prop_assert_eq!(Sign::of(&value), chamber.sign(h));
            }
            prop_assert!(chambers.contains(&chamber.signs().antipode()));
        }
    }

    #[test]
    fn pruned_enumeration_matches_exhaustive_testing(arr in arb_arrangement()) {
        let chambers = arr.chambers();
        let n = arr.len();
        let mut exhaustive = Vec::new();
        for mask in 0u64..1 << n {
            let partial: std::collections::BTreeMap<usize, Sign> = (0..n)
                .map(|h| {
                    (h, if (mask >> h) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                })
                .collect();
            if arr.sign_feasible(&partial).unwrap() {
                exhaustive.push(chambers::arrangement::SignVector(
                    (0..n)
                        .map(|h| if (mask >> h) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                ));
            }
        }
        exhaustive.sort();
        let mut pruned: Vec<_> = chambers.iter().map(|c| c.signs().clone()).collect();
        pruned.sort();
        prop_assert_eq!(pruned, exhaustive);
    }

    #[test]
    fn rank_is_monotone_and_decomposition_additive(arr in arb_arrangement()) {
        let n = arr.len();
        for mask in 0u64..1 << n {
            let subset: BTreeSet<usize> = (0..n).filter(|h| (mask >> h) & 1 == 1).collect();
            let rank = arr.rank_of(&subset).unwrap();
            prop_assert!(rank <= subset.len().min(arr.dim()));
        }
        let report = arr.decompose();
        prop_assert_eq!(report.part_ranks.iter().sum::<usize>(), report.total_rank);
        let covered: BTreeSet<usize> = report.parts.iter().flatten().copied().collect();
        prop_assert_eq!(covered.len(), n);
    }

    #[test]
    fn subdivision_preserves_euler_and_betti(k in arb_complex()) {
        let sd = barycentric_subdivision(&k);
        prop_assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
        let dim = k.dim().unwrap();
        let mut budget = Budget::default_simplices();
        let original = homology_groups(&k, dim, false, &mut budget).unwrap();
        let subdivided = homology_groups(&sd, dim, false, &mut budget).unwrap();
        for (a, b) in original.iter().zip(&subdivided) {
            prop_assert_eq!(a.betti, b.betti);
            prop_assert_eq!(&a.torsion, &b.torsion);
        }
    }

    #[test]
    fn euler_characteristic_equals_alternating_betti_sum(k in arb_complex()) {
        let dim = k.dim().unwrap();
        let mut budget = Budget::default_simplices();
        let groups = homology_groups(&k, dim, false, &mut budget).unwrap();
        let betti_sum: i64 = groups
            .iter()
            .map(|g| {
                let b = g.betti as i64;
                if g.dim % 2 == 0 { b } else { -b }
            })
            .sum();
        prop_assert_eq!(k.euler_characteristic(), betti_sum);
    }

    #[test]
    fn profile_metric_axioms(
        p in proptest::collection::vec(0usize..6, 2),
        q in proptest::collection::vec(0usize..6, 2),
        r in proptest::collection::vec(0usize..6, 2),
    ) {
        let chambers = Arrangement::braid(3).chambers();
        let sv = |profile: &[usize]| -> Vec<_> {
            profile.iter().map(|&c| chambers.get(c).signs().clone()).collect()
        };
        let (pv, qv, rv) = (sv(&p), sv(&q), sv(&r));
        let d = |a: &[chambers::arrangement::SignVector], b: &[chambers::arrangement::SignVector]| {
            profile_distance(&a.iter().collect::<Vec<_>>(), &b.iter().collect::<Vec<_>>()).unwrap()
        };
        prop_assert_eq!(d(&pv, &qv), d(&qv, &pv));
        prop_assert_eq!(d(&pv, &pv), 0);
        prop_assert_eq!(d(&pv, &qv) == 0, pv == qv);
        prop_assert!(d(&pv, &rv) <= d(&pv, &qv) + d(&qv, &rv));
    }
}

/// The side swap of an IIA bijection, read off its per-hyperplane family.
fn flips_of(
    chambers: &chambers::arrangement::ChamberSet,
    map: &chambers::social::ChamberMap,
) -> Vec<bool> {
    let family = check_iia(chambers, map).expect("composites of IIA maps are IIA");
    family
        .tables()
        .iter()
        .map(|table| {
            assert_ne!(table[0], table[1], "expected a side swap, not a constant");
            table[0] == vec![Sign::Minus]
        })
        .collect()
}

/// For an admissible map with dictator slot `i0`, the assignment
/// `context ↦ Φ∘ρ_{i0,context}` never expands distances: the Hamming
/// distance of the side swaps is at most the separation distance of the
/// contexts.
#[test]
fn dictator_slot_gives_a_non_expanding_map() {
    let chambers = Arrangement::braid(3).chambers();
    for m in [2usize, 3] {
        let mut budget = Budget::default_candidates();
        let admissible =
            chambers::social::enumerate_admissible(&chambers, m, &mut budget).unwrap();
        for found in &admissible {
            let slot = chambers::social::classify_projection(&found.map)
                .unwrap()
                .expect("admissible maps on braid-3 are projections");
            let context_count = chambers.len().pow(m as u32 - 1);
            let contexts: Vec<Vec<usize>> = (0..context_count)
                .map(|rank| chambers::social::profile_unrank(chambers.len(), m - 1, rank))
                .collect();
            let swaps: Vec<Vec<bool>> = contexts
                .iter()
                .map(|context| {
                    let rho = chambers::social::rho_map(&chambers, slot, context).unwrap();
                    flips_of(&chambers, &rho.then(&found.map).unwrap())
                })
                .collect();
            for (a, ca) in swaps.iter().zip(&contexts) {
                for (b, cb) in swaps.iter().zip(&contexts) {
                    let hamming = a.iter().zip(b).filter(|(x, y)| x != y).count();
                    let signs_a: Vec<_> =
                        ca.iter().map(|&c| chambers.get(c).signs()).collect();
                    let signs_b: Vec<_> =
                        cb.iter().map(|&c| chambers.get(c).signs()).collect();
                    let separation = profile_distance(&signs_a, &signs_b).unwrap();
                    assert!(hamming <= separation, "expansion at m = {m}, slot {slot}");
                }
            }
        }
    }
}

#[test]
fn iia_composition_closure_is_exhaustive_on_braid3() {
    let chambers = Arrangement::braid(3).chambers();
    let mut budget = Budget::default_candidates();
    let self_maps = enumerate_iia_self_maps(&chambers, &mut budget).unwrap();
    assert!(self_maps.len() >= 2);
    for f in &self_maps {
        for g in &self_maps {
            let composed = f.map.then(&g.map).unwrap();
            assert!(
                check_iia(&chambers, &composed).is_some(),
                "composition of IIA maps must be IIA"
            );
        }
    }
}
