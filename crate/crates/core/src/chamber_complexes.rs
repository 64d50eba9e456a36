//! The two simplicial complexes attached to an arrangement and a population
//! size `m`, and the simplicial maps between them induced by aggregation
//! maps.
//!
//! * The profile complex on vertex set `Ch(A)^m`: a set of profiles is a
//!   simplex when some hyperplane assigns the same sign tuple to all of
//!   them. Its maximal simplices are the sign-tuple classes, one per
//!   hyperplane and tuple.
//! * The side-product nerve on vertices `(hyperplane, sign tuple)`: the
//!   nerve of the covering of the profile space by products of half-space
//!   sides, one hyperplane at a time. A vertex set is a simplex when the
//!   sign system it induces is realizable coordinate by coordinate. Its
//!   maximal simplices pick one vertex per hyperplane and correspond one to
//!   one with profiles, which exhibits the profile complex as the dual of
//!   the nerve.
//!
//! The open and closed versions of the side covering have the same
//! intersection pattern by homogeneity, so a single feasibility oracle
//! serves both.

use std::collections::HashMap;

use crate::arrangement::{ChamberSet, Sign, SignVector};
use crate::simplicial::{Complex, Covering, SimplicialMap};
use crate::social::{check_iia, sign_tuple_unrank, ChamberMap};
use crate::{Budget, Error, Result};

/// Vertex of the profile complex: the sign vectors of an `m`-profile.
pub type MVertex = Vec<SignVector>;

/// Vertex of the side-product nerve: a hyperplane index and the sign tuple
/// of the chosen sides, one per population slot.
pub type BVertex = (usize, Vec<Sign>);

/// The label of a profile given by chamber indices.
pub fn profile_label(chambers: &ChamberSet, profile: &[usize]) -> MVertex {
    profile
        .iter()
        .map(|&c| chambers.get(c).signs().clone())
        .collect()
}

/// Chamber indices of a profile label; `None` when a sign vector is not a
/// chamber.
pub fn label_profile(chambers: &ChamberSet, label: &MVertex) -> Option<Vec<usize>> {
    label.iter().map(|sv| chambers.index_of(sv)).collect()
}

/// Sign tuple of hyperplane `h` across a profile.
fn tuple_of(chambers: &ChamberSet, h: usize, profile: &[usize]) -> Vec<Sign> {
    profile.iter().map(|&c| chambers.get(c).sign(h)).collect()
}

/// True when hyperplane `h` takes at least two distinct sign tuples on the
/// given profiles.
pub fn separates(chambers: &ChamberSet, h: usize, profiles: &[Vec<usize>]) -> Result<bool> {
    if h >= chambers.arrangement().len() {
        return Err(Error::IndexOutOfRange {
            index: h,
            len: chambers.arrangement().len(),
        });
    }
    let Some(first) = profiles.first() else {
        return Err(Error::EmptyInput);
    };
    if profiles.iter().any(|p| p.len() != first.len()) {
        return Err(Error::ShapeMismatch);
    }
    let reference = tuple_of(chambers, h, first);
    Ok(profiles
        .iter()
        .any(|p| tuple_of(chambers, h, p) != reference))
}

fn all_profiles(chambers: &ChamberSet, m: usize, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let count = chambers
        .len()
        .checked_pow(m as u32)
        .ok_or(Error::BudgetExceeded {
            limit: u64::MAX,
            unit: "profiles",
        })?;
    budget.charge(count as u64)?;
    Ok((0..count)
        .map(|rank| crate::social::profile_unrank(chambers.len(), m, rank))
        .collect())
}

/// The profile complex on `Ch(A)^m`. Maximal simplices are the nonempty
/// sign-tuple classes: for each hyperplane and each tuple, the profiles the
/// hyperplane does not separate.
pub fn build_m(chambers: &ChamberSet, m: usize, budget: &mut Budget) -> Result<Complex<MVertex>> {
    assert!(m >= 1);
    let n = chambers.arrangement().len();
    let profiles = all_profiles(chambers, m, budget)?;
    let mut classes: Vec<Vec<MVertex>> = Vec::new();
    for h in 0..n {
        let mut by_tuple: HashMap<Vec<Sign>, Vec<MVertex>> = HashMap::new();
        for profile in &profiles {
            by_tuple
                .entry(tuple_of(chambers, h, profile))
                .or_default()
                .push(profile_label(chambers, profile));
        }
        budget.charge(profiles.len() as u64)?;
        let mut tuples: Vec<Vec<Sign>> = by_tuple.keys().cloned().collect();
        tuples.sort();
        for tuple in tuples {
            classes.push(by_tuple.remove(&tuple).unwrap());
        }
    }
    Complex::from_maximal(classes)
}

/// The nerve of the side-product covering, built directly from profiles:
/// each profile contributes the maximal simplex selecting, for every
/// hyperplane, the sides the profile's chambers take.
pub fn build_b(chambers: &ChamberSet, m: usize, budget: &mut Budget) -> Result<Complex<BVertex>> {
    assert!(m >= 1);
    let n = chambers.arrangement().len();
    let profiles = all_profiles(chambers, m, budget)?;
    budget.charge((profiles.len() * n) as u64)?;
    let simplices: Vec<Vec<BVertex>> = profiles
        .iter()
        .map(|profile| {
            (0..n)
                .map(|h| (h, tuple_of(chambers, h, profile)))
                .collect()
        })
        .collect();
    Complex::from_maximal(simplices)
}

/// The side-product covering itself, exposed through the intersection
/// oracle: pieces are indexed by `(hyperplane, sign tuple)` and a family has
/// a common point exactly when its sign system is realizable coordinate by
/// coordinate.
#[derive(Debug, Clone)]
pub struct SideCovering<'a> {
    chambers: &'a ChamberSet,
    m: usize,
}

impl<'a> SideCovering<'a> {
    pub fn new(chambers: &'a ChamberSet, m: usize) -> Self {
        assert!(m >= 1);
        SideCovering { chambers, m }
    }
}

impl Covering for SideCovering<'_> {
    type Label = BVertex;

    fn labels(&self) -> Vec<BVertex> {
        let n = self.chambers.arrangement().len();
        let mut labels = Vec::with_capacity(n << self.m);
        for h in 0..n {
            for rank in 0..1usize << self.m {
                labels.push((h, sign_tuple_unrank(self.m, rank)));
            }
        }
        labels
    }

    fn has_common_point(&self, members: &[usize]) -> bool {
        let labels = self.labels();
        for slot in 0..self.m {
            let mut partial: std::collections::BTreeMap<usize, Sign> =
                std::collections::BTreeMap::new();
            for &i in members {
                let (h, tuple) = &labels[i];
                match partial.insert(*h, tuple[slot]) {
                    Some(previous) if previous != tuple[slot] => return false,
                    _ => {}
                }
            }
            if !self
                .chambers
                .arrangement()
                .sign_feasible(&partial)
                .expect("labels carry valid hyperplane indices")
            {
                return false;
            }
        }
        true
    }
}

/// Outcome of the duality check between the profile complex and the dual of
/// the side-product nerve.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub holds: bool,
    /// The natural correspondence: each profile against the maximal simplex
    /// of the nerve it selects.
    pub pairs: Vec<(MVertex, Vec<BVertex>)>,
}

/// Checks that the dual of the side-product nerve is isomorphic to the
/// profile complex under the profile ↔ maximal-simplex correspondence.
pub fn verify_duality(chambers: &ChamberSet, m: usize, budget: &mut Budget) -> Result<DualityReport> {
    let b = build_b(chambers, m, budget)?;
    let m_complex = build_m(chambers, m, budget)?;
    let dual = crate::simplicial::dual_complex(&b)?;

    let n = chambers.arrangement().len();
    let profiles = all_profiles(chambers, m, budget)?;
    let mut pairs: Vec<(MVertex, Vec<BVertex>)> = Vec::with_capacity(profiles.len());
    let mut back: HashMap<Vec<BVertex>, MVertex> = HashMap::new();
    for profile in &profiles {
        let mut simplex: Vec<BVertex> = (0..n)
            .map(|h| (h, tuple_of(chambers, h, profile)))
            .collect();
        simplex.sort();
        let label = profile_label(chambers, profile);
        back.insert(simplex.clone(), label.clone());
        pairs.push((label, simplex));
    }

    // relabel the dual through the correspondence and compare as labelled
    // complexes
    let mut relabelled: Vec<Vec<MVertex>> = Vec::with_capacity(dual.maximal_count());
    for simplex in dual.maximal_labels() {
        let mut mapped = Vec::with_capacity(simplex.len());
        for vertex in simplex {
            match back.get(&vertex) {
                Some(label) => mapped.push(label.clone()),
                None => {
                    return Ok(DualityReport {
                        holds: false,
                        pairs,
                    })
                }
            }
        }
        relabelled.push(mapped);
    }
    let holds = Complex::from_maximal(relabelled)? == m_complex;
    Ok(DualityReport { holds, pairs })
}

/// The simplicial map of profile complexes induced by an IIA chamber map:
/// the vertex map is the chamber map itself. Fails with [`Error::NotIIA`]
/// when the map has no per-hyperplane family.
pub fn induced_map_m(
    chambers: &ChamberSet,
    f: &ChamberMap,
    source: &Complex<MVertex>,
    target: &Complex<MVertex>,
) -> Result<SimplicialMap<MVertex, MVertex>> {
    if check_iia(chambers, f).is_none() {
        return Err(Error::NotIIA);
    }
    SimplicialMap::new(source.clone(), target.clone(), |label: &MVertex| {
        let profile = label_profile(chambers, label).expect("vertex labels are profiles");
        profile_label(chambers, f.apply(&profile))
    })
}

/// A simplicial map of side-product nerves given by an index map on
/// vertices, validated on every maximal simplex.
pub fn induced_map_b(
    source: &Complex<BVertex>,
    target: &Complex<BVertex>,
    index_map: impl Fn(&BVertex) -> BVertex,
) -> Result<SimplicialMap<BVertex, BVertex>> {
    SimplicialMap::new(source.clone(), target.clone(), index_map)
}

/// The index map of the insertion `ρ''`: `(h, (s)) ↦ (h, context sides with
/// s inserted at slot)`. Source must be the `m = 1` nerve.
pub fn rho_b_map(
    chambers: &ChamberSet,
    slot: usize,
    context: &[usize],
    source: &Complex<BVertex>,
    target: &Complex<BVertex>,
) -> Result<SimplicialMap<BVertex, BVertex>> {
    let m = context.len() + 1;
    if slot == 0 || slot > m {
        return Err(Error::IndexOutOfRange {
            index: slot,
            len: m,
        });
    }
    induced_map_b(source, target, |(h, tuple): &BVertex| {
        let mut signs: Vec<Sign> = context.iter().map(|&c| chambers.get(c).sign(*h)).collect();
        signs.insert(slot - 1, tuple[0]);
        (*h, signs)
    })
}

/// The index map of the diagonal `Δ''`: `(h, (s)) ↦ (h, (s, …, s))`.
pub fn delta_b_map(
    m: usize,
    source: &Complex<BVertex>,
    target: &Complex<BVertex>,
) -> Result<SimplicialMap<BVertex, BVertex>> {
    induced_map_b(source, target, |(h, tuple): &BVertex| {
        (*h, vec![tuple[0]; m])
    })
}
