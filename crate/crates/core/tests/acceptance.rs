//! Acceptance suite: one test per criterion, each printing a pass line with
//! its timing (visible under `--nocapture`). Every expected value is pinned
//! here; time limits are asserted.
//!
//! Run with: `cargo test --test acceptance -- --nocapture`

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chambers::arrangement::{Arrangement, ChamberSet, Sign, SignVector};
use chambers::chamber_complexes::{build_m, induced_map_m, verify_duality};
use chambers::homology::{
    chain_complex, degree_of_map, homology_basis, homology_groups, induced_matrix,
    verify_sum_identity,
};
use chambers::rational::int;
use chambers::simplicial::{barycentric_subdivision, Complex, SimplicialMap};
use chambers::snf::{smith_normal_form, IntMat};
use chambers::social::{
    chamber_distance, classify_projection, enumerate_admissible, enumerate_iia_self_maps,
    hamming_distance, iia_bijections, min_distance_from_id, profile_distance, projection_map,
    sign_tuple_rank,
};
use chambers::Budget;

fn finish(criterion: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    println!("criterion {criterion}: PASS ({elapsed:.2?}, limit {limit:?})");
    assert!(
        elapsed < limit,
        "criterion {criterion} exceeded its time limit: {elapsed:?} > {limit:?}"
    );
}

fn braid(n: usize) -> ChamberSet {
    Arrangement::braid(n).chambers()
}

fn boolean(n: usize) -> ChamberSet {
    Arrangement::boolean(n).chambers()
}

fn exhaustive_chambers(arr: &Arrangement) -> Vec<SignVector> {
    let n = arr.len();
    let mut found = Vec::new();
    for mask in 0u64..1 << n {
        let signs = SignVector(
            (0..n)
                .map(|h| {
                    if (mask >> h) & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                })
                .collect(),
        );
        let partial: BTreeMap<usize, Sign> =
            (0..n).map(|h| (h, signs.get(h))).collect();
        if arr.sign_feasible(&partial).unwrap() {
            found.push(signs);
        }
    }
    found.sort();
    found
}

#[test]
fn criterion_01_chamber_counts() {
    let started = Instant::now();

    let factorial = |n: usize| -> usize { (1..=n).product() };
    for n in [3, 4, 5] {
        let arr = Arrangement::braid(n);
        let chambers = arr.chambers();
        assert_eq!(chambers.len(), factorial(n), "braid-{n} chamber count");
        let mut pruned: Vec<SignVector> = chambers.iter().map(|c| c.signs().clone()).collect();
        pruned.sort();
        assert_eq!(pruned, exhaustive_chambers(&arr), "braid-{n} oracle equivalence");
    }
    for n in 1..=8 {
        let arr = Arrangement::boolean(n);
        let chambers = arr.chambers();
        assert_eq!(chambers.len(), 1 << n, "boolean-{n} chamber count");
        let mut pruned: Vec<SignVector> = chambers.iter().map(|c| c.signs().clone()).collect();
        pruned.sort();
        assert_eq!(pruned, exhaustive_chambers(&arr), "boolean-{n} oracle equivalence");
    }

    finish("1 (chamber counts)", started, Duration::from_secs(5));
}

fn random_arrangement(rng: &mut ChaCha8Rng) -> Arrangement {
    loop {
        let dim = rng.gen_range(2..=5);
        let count = rng.gen_range(2..=7);
        let normals: Vec<Vec<_>> = (0..count)
            .map(|_| (0..dim).map(|_| int(rng.gen_range(-4i64..=4))).collect())
            .collect();
        if let Ok(arr) = Arrangement::new(dim, normals) {
            return arr;
        }
    }
}

#[test]
fn criterion_02_structure() {
    let started = Instant::now();

    let braid3 = Arrangement::braid(3);
    assert!(braid3.decompose().is_indecomposable());
    assert_eq!(braid3.circuits(), vec![vec![0, 1, 2]]);

    let boolean3 = Arrangement::boolean(3);
    let report = boolean3.decompose();
    assert_eq!(report.parts.len(), 3);
    assert_eq!(report.part_ranks, vec![1, 1, 1]);

    let mut rng = ChaCha8Rng::seed_from_u64(20110);
    for _ in 0..20 {
        let arr = random_arrangement(&mut rng);
        let report = arr.decompose();
        assert_eq!(
            report.part_ranks.iter().sum::<usize>(),
            arr.rank(),
            "rank additivity on {arr:?}"
        );
    }

    finish("2 (structure)", started, Duration::from_secs(1));
}

#[test]
fn criterion_03_duality() {
    let started = Instant::now();

    for (chambers, m, name) in [
        (braid(3), 1, "braid-3"),
        (braid(3), 2, "braid-3"),
        (boolean(2), 1, "boolean-2"),
        (boolean(2), 2, "boolean-2"),
        (boolean(3), 1, "boolean-3"),
    ] {
        let mut budget = Budget::default_simplices();
        let report = verify_duality(&chambers, m, &mut budget).unwrap();
        assert!(report.holds, "duality on {name}, m = {m}");
        assert_eq!(report.pairs.len(), chambers.len().pow(m as u32));
    }

    finish("3 (duality)", started, Duration::from_secs(10));
}

#[test]
fn criterion_04_sphere_homology() {
    let started = Instant::now();
    let mut budget = Budget::default_simplices();

    let m1 = build_m(&braid(3), 1, &mut budget).unwrap();
    let groups = homology_groups(&m1, 2, false, &mut budget).unwrap();
    assert_eq!(
        groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        [1, 1, 0],
        "profile complex of braid-3 has circle homology"
    );
    assert!(groups.iter().all(|g| g.torsion.is_empty()), "no torsion");

    // two-component control (a single hyperplane: nothing joins the sides)
    let control = build_m(&boolean(1), 1, &mut budget).unwrap();
    let groups = homology_groups(&control, 1, false, &mut budget).unwrap();
    assert_eq!(
        groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        [2, 0],
        "one-hyperplane control splits into two components"
    );

    // boolean-2 is decomposable but rank 2: its profile complex is the
    // 4-cycle, a circle like any rank-2 arrangement
    let square = build_m(&boolean(2), 1, &mut budget).unwrap();
    let groups = homology_groups(&square, 2, false, &mut budget).unwrap();
    assert_eq!(
        groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        [1, 1, 0],
        "profile complex of boolean-2 is the 4-cycle"
    );

    finish("4 (sphere homology)", started, Duration::from_secs(10));
}

#[test]
fn criterion_05_product_homology() {
    let started = Instant::now();
    let mut budget = Budget::default_simplices();

    let m2 = build_m(&braid(3), 2, &mut budget).unwrap();
    let groups = homology_groups(&m2, 1, false, &mut budget).unwrap();
    assert_eq!(groups[0].betti, 1, "betti_0 of the two-voter profile complex");
    assert_eq!(groups[1].betti, 2, "betti_1 matches the torus through degree 1");
    assert!(groups.iter().all(|g| g.torsion.is_empty()));

    // independent recomputation on a barycentric subdivision; degrees ≤ 1
    // only need the 2-skeleton, whose subdivision stays desk-sized
    let sd = barycentric_subdivision(&m2.skeleton(2));
    let mut sd_budget = Budget::simplices(10_000_000);
    let sd_groups = homology_groups(&sd, 1, false, &mut sd_budget).unwrap();
    assert_eq!(
        groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        sd_groups.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "subdivision recomputation agrees"
    );

    finish("5 (product homology)", started, Duration::from_secs(120));
}

#[test]
fn criterion_06_sum_identity() {
    let started = Instant::now();

    let chambers = braid(3);
    let top = chambers
        .index_of(&SignVector::parse("+++").unwrap())
        .unwrap();
    let proj1 = projection_map(&chambers, 2, 1).unwrap();
    let mut budget = Budget::default_simplices();
    let report = verify_sum_identity(&chambers, 2, top, Some(&proj1), &mut budget).unwrap();

    assert_eq!(report.degree, 1);
    assert!(
        report.insertion_sum_equals_diagonal,
        "Σ (ρ_i)* = Δ* as integer matrices"
    );
    assert_eq!(report.rho_sum, report.delta_matrix);

    let phi = report.phi.expect("projection supplied");
    assert!(phi.equals_identity, "Σ (Φ∘ρ_i)* = id");
    // slot 1 is the dictator slot for projection-1: its summand is the
    // identity, the other collapses
    assert_eq!(phi.per_slot[0].matrix, IntMat::identity(1));
    assert!(phi.per_slot[1].matrix.is_zero());

    finish("6 (sum identity)", started, Duration::from_secs(120));
}

#[test]
fn criterion_07_main_theorem() {
    let started = Instant::now();

    let chambers = braid(3);
    let mut budget = Budget::default_candidates();
    let found = enumerate_admissible(&chambers, 2, &mut budget).unwrap();
    assert_eq!(found.len(), 2, "two admissible maps at m = 2");
    let mut slots = Vec::new();
    for admissible in &found {
        slots.push(
            classify_projection(&admissible.map)
                .unwrap()
                .expect("admissible maps on braid-3 are projections"),
        );
    }
    slots.sort_unstable();
    assert_eq!(slots, [1, 2]);
    let m2_elapsed = started.elapsed();
    assert!(m2_elapsed < Duration::from_secs(5), "m = 2 case within 5 s");

    // the three-voter case needs a raised budget: the pruned search still
    // touches ~5.8 × 10^7 candidate profiles
    let mut budget = Budget::candidates(1_000_000_000);
    let found = enumerate_admissible(&chambers, 3, &mut budget).unwrap();
    assert_eq!(found.len(), 3, "three admissible maps at m = 3");
    let mut slots = Vec::new();
    for admissible in &found {
        slots.push(
            classify_projection(&admissible.map)
                .unwrap()
                .expect("admissible maps on braid-3 are projections"),
        );
    }
    slots.sort_unstable();
    assert_eq!(slots, [1, 2, 3]);

    finish("7 (main theorem)", started, Duration::from_secs(1800));
}

#[test]
fn criterion_08_hypothesis_necessity() {
    let started = Instant::now();

    let chambers = boolean(3);
    let mut budget = Budget::default_candidates();
    let found = enumerate_admissible(&chambers, 2, &mut budget).unwrap();
    assert_eq!(found.len(), 64, "all PAR-respecting families are well-defined");
    let projections = found
        .iter()
        .filter(|a| classify_projection(&a.map).unwrap().is_some())
        .count();
    assert_eq!(projections, 2, "exactly the two slot projections");

    // the coordinatewise meet (+ only when both inputs are +) is admissible
    // but dictatorless
    let meet_rank = |s: Sign, t: Sign| sign_tuple_rank(&[s, t]);
    let is_meet = |tables: &[Vec<Vec<Sign>>]| {
        tables.iter().all(|t| {
            t[meet_rank(Sign::Plus, Sign::Plus)] == vec![Sign::Plus]
                && t[meet_rank(Sign::Plus, Sign::Minus)] == vec![Sign::Minus]
                && t[meet_rank(Sign::Minus, Sign::Plus)] == vec![Sign::Minus]
                && t[meet_rank(Sign::Minus, Sign::Minus)] == vec![Sign::Minus]
        })
    };
    let meet = found
        .iter()
        .find(|a| is_meet(a.family.tables()))
        .expect("meet family is enumerated");
    assert_eq!(classify_projection(&meet.map).unwrap(), None);

    finish("8 (hypothesis necessity)", started, Duration::from_secs(5));
}

#[test]
fn criterion_09_metric_facts() {
    let started = Instant::now();

    let chambers = braid(3);
    let bijections = iia_bijections(&chambers);
    assert_eq!(bijections.len(), 2);
    assert!(bijections[0].is_identity());
    assert!(bijections[1].flips().iter().all(|&f| f), "antipodal map");
    assert_eq!(min_distance_from_id(&chambers), Some(3));
    assert!(min_distance_from_id(&chambers).unwrap() >= 2);

    assert_eq!(min_distance_from_id(&boolean(3)), Some(1), "decomposable control");

    // Hamming metric axioms, exhaustively over the bijections
    for a in &bijections {
        for b in &bijections {
            let d_ab = hamming_distance(a, b).unwrap();
            assert_eq!(d_ab == 0, a == b);
            assert_eq!(d_ab, hamming_distance(b, a).unwrap());
            for c in &bijections {
                assert!(
                    hamming_distance(a, c).unwrap() <= d_ab + hamming_distance(b, c).unwrap()
                );
            }
        }
    }

    // separation metric axioms, exhaustively over chambers and over
    // two-voter profiles
    for a in chambers.iter() {
        for b in chambers.iter() {
            let d_ab = chamber_distance(a, b).unwrap();
            assert_eq!(d_ab == 0, a.signs() == b.signs());
            assert_eq!(d_ab, chamber_distance(b, a).unwrap());
            for c in chambers.iter() {
                assert!(
                    chamber_distance(a, c).unwrap() <= d_ab + chamber_distance(b, c).unwrap()
                );
            }
        }
    }
    let profiles: Vec<Vec<&SignVector>> = (0..36)
        .map(|rank| {
            chambers::social::profile_unrank(6, 2, rank)
                .into_iter()
                .map(|c| chambers.get(c).signs())
                .collect()
        })
        .collect();
    for p in &profiles {
        for q in &profiles {
            let d_pq = profile_distance(p, q).unwrap();
            assert_eq!(d_pq == 0, p == q);
            assert_eq!(d_pq, profile_distance(q, p).unwrap());
            for r in &profiles {
                assert!(profile_distance(p, r).unwrap() <= d_pq + profile_distance(q, r).unwrap());
            }
        }
    }

    finish("9 (metric facts)", started, Duration::from_secs(5));
}

#[test]
fn criterion_10_lemma_equivalences() {
    let started = Instant::now();

    let chambers = braid(3);
    let mut budget = Budget::default_candidates();
    let self_maps = enumerate_iia_self_maps(&chambers, &mut budget).unwrap();
    assert!(self_maps.len() >= 2);

    let mut complex_budget = Budget::default_simplices();
    let m1 = build_m(&chambers, 1, &mut complex_budget).unwrap();
    let mut bijection_count = 0;
    for admissible in &self_maps {
        let map = &admissible.map;
        let mut image: Vec<usize> = (0..chambers.len())
            .map(|c| map.apply(&[c])[0])
            .collect();
        image.sort_unstable();
        image.dedup();
        let bijective = image.len() == chambers.len();

        // (ii): every per-hyperplane function is the identity or the swap
        let all_flips = admissible.family.tables().iter().all(|t| {
            t[0] != t[1] // the two ranks of a one-voter tuple
        });

        // (iv): degree of the induced self-map of the circle
        let simplicial = induced_map_m(&chambers, map, &m1, &m1).unwrap();
        let mut degree_budget = Budget::default_simplices();
        let degree = degree_of_map(&simplicial, 1, &mut degree_budget).unwrap();

        assert_eq!(bijective, all_flips, "(i) ⟺ (ii)");
        assert_eq!(
            bijective,
            degree.abs() == BigInt::one(),
            "(i) ⟺ (iv): degree is ±1 exactly for bijections"
        );
        if !bijective {
            assert!(degree.is_zero(), "non-bijective maps have degree 0");
        } else {
            bijection_count += 1;
            // fixed-point corollary: a bijection fixing any chamber is the
            // identity
            let has_fixed_point = (0..chambers.len()).any(|c| map.apply(&[c])[0] == c);
            let is_identity = (0..chambers.len()).all(|c| map.apply(&[c])[0] == c);
            if has_fixed_point {
                assert!(is_identity, "a bijection with a fixed chamber is the identity");
            }
        }
    }
    assert_eq!(bijection_count, 2, "identity and antipodal map");

    finish("10 (lemma equivalences)", started, Duration::from_secs(60));
}

#[test]
fn criterion_11_infrastructure() {
    let started = Instant::now();

    // ∂∂ = 0 is asserted inside every chain-complex construction; exercise
    // it across the suite's complexes
    let mut budget = Budget::default_simplices();
    for (chambers, m) in [(braid(3), 1), (braid(3), 2), (boolean(2), 2), (boolean(3), 1)] {
        let complex = build_m(&chambers, m, &mut budget).unwrap();
        let top = complex.dim().unwrap().min(3);
        chain_complex(&complex, top, &mut budget).unwrap();
        let nerve = chambers::chamber_complexes::build_b(&chambers, m, &mut budget).unwrap();
        chain_complex(&nerve, nerve.dim().unwrap(), &mut budget).unwrap();
    }

    // certificates on 100 random integer matrices up to 30×30
    let mut rng = ChaCha8Rng::seed_from_u64(30111);
    for round in 0..100 {
        let rows = rng.gen_range(1..=30);
        let cols = rng.gen_range(1..=30);
        let matrix = IntMat::from_i64_rows(
            &(0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9i64..=9)).collect())
                .collect::<Vec<_>>(),
        );
        let snf = smith_normal_form(&matrix);
        assert!(snf.verify(&matrix), "U·M·V = D fails in round {round}");
    }

    // functoriality of induced maps on 20 random composable pairs
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 20 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(40000 + seed);
        let Some((f, g)) = random_composable_pair(&mut rng) else {
            continue;
        };
        let composed = f.then(&g).unwrap();

        let mut budget = Budget::default_simplices();
        let cc_k = chain_complex(f.source(), 2, &mut budget).unwrap();
        let cc_l = chain_complex(f.target(), 2, &mut budget).unwrap();
        let cc_m = chain_complex(g.target(), 2, &mut budget).unwrap();
        let b_k = homology_basis(&cc_k, 1);
        let b_l = homology_basis(&cc_l, 1);
        let b_m = homology_basis(&cc_m, 1);
        let f_star = induced_matrix(&f, &cc_k, &b_k, &cc_l, &b_l).unwrap();
        let g_star = induced_matrix(&g, &cc_l, &b_l, &cc_m, &b_m).unwrap();
        let gf_star = induced_matrix(&composed, &cc_k, &b_k, &cc_m, &b_m).unwrap();
        assert_eq!(gf_star, g_star.mul(&f_star), "functoriality, seed {seed}");
        checked += 1;
    }

    finish("11 (infrastructure)", started, Duration::from_secs(30));
}

/// Random complexes `K → L → M` where each target contains the images of the
/// previous complex's maximal simplices, so the vertex maps are simplicial
/// by construction.
fn random_composable_pair(
    rng: &mut ChaCha8Rng,
) -> Option<(SimplicialMap<u32, u32>, SimplicialMap<u32, u32>)> {
    let random_complex = |rng: &mut ChaCha8Rng| -> Complex<u32> {
        let simplices: Vec<Vec<u32>> = (0..rng.gen_range(2..=6))
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..7)).collect())
            .collect();
        Complex::from_maximal(simplices).unwrap()
    };
    let k = random_complex(rng);

    let map_f: Vec<u32> = (0..7).map(|_| rng.gen_range(0..7)).collect();
    let mut l_simplices: Vec<Vec<u32>> = k
        .maximal_labels()
        .iter()
        .map(|s| s.iter().map(|&v| map_f[v as usize]).collect())
        .collect();
    l_simplices.extend(random_complex(rng).maximal_labels());
    let l = Complex::from_maximal(l_simplices).unwrap();

    let map_g: Vec<u32> = (0..7).map(|_| rng.gen_range(0..7)).collect();
    let mut m_simplices: Vec<Vec<u32>> = l
        .maximal_labels()
        .iter()
        .map(|s| s.iter().map(|&v| map_g[v as usize]).collect())
        .collect();
    m_simplices.extend(random_complex(rng).maximal_labels());
    let m = Complex::from_maximal(m_simplices).unwrap();

    let f = SimplicialMap::new(k, l.clone(), |&v| map_f[v as usize]).ok()?;
    let g = SimplicialMap::new(l, m, |&v| map_g[v as usize]).ok()?;
    Some((f, g))
}
