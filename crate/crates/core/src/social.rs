//! Aggregation maps on chambers.
//!
//! A map `Ch(A)^m → Ch(A)^l` satisfies IIA when, hyperplane by hyperplane,
//! the output sides depend only on the input sides of that hyperplane; it is
//! then determined by one boolean-valued function per hyperplane (its
//! *family*). Admissible maps are the IIA maps into `Ch(A)` that fix every
//! diagonal profile. This module enumerates them exhaustively, decides
//! whether a map is a projection onto one slot, and builds the metric space
//! of IIA bijections used by the dictator argument.
//!
//! Searches run over families rather than profile tables: a family is
//! PAR-filterable per hyperplane, and a partial family can be aborted as soon
//! as it produces a sign pattern no chamber extends. Profiles and sign
//! tuples are ranked with the first slot most significant, so enumeration
//! order is lexicographic and fully deterministic.

use std::collections::HashMap;

use crate::arrangement::{Chamber, ChamberSet, Sign, SignVector};
use crate::{Budget, Error, Result};

/// Rank of a sign tuple, first coordinate most significant, `+` = 0.
pub fn sign_tuple_rank(signs: &[Sign]) -> usize {
    signs
        .iter()
        .fold(0, |acc, s| (acc << 1) | usize::from(*s == Sign::Minus))
}

/// Inverse of [`sign_tuple_rank`] for tuples of length `m`.
pub fn sign_tuple_unrank(m: usize, rank: usize) -> Vec<Sign> {
    (0..m)
        .map(|i| {
            if (rank >> (m - 1 - i)) & 1 == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Rank of a profile (tuple of chamber indices), first slot most significant.
pub fn profile_rank(chamber_count: usize, profile: &[usize]) -> usize {
    profile.iter().fold(0, |acc, &c| acc * chamber_count + c)
}

/// Inverse of [`profile_rank`] for `m`-profiles.
pub fn profile_unrank(chamber_count: usize, m: usize, rank: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    let mut rest = rank;
    for slot in (0..m).rev() {
        out[slot] = rest % chamber_count;
        rest /= chamber_count;
    }
    out
}

fn profile_count(chamber_count: usize, m: usize) -> Result<usize> {
    chamber_count
        .checked_pow(m as u32)
        .filter(|&count| count <= 1 << 32)
        .ok_or(Error::BudgetExceeded {
            limit: 1 << 32,
            unit: "profiles",
        })
}

/// A total map `Ch(A)^m → Ch(A)^l`, tabulated profile by profile over the
/// chamber indices of a fixed [`ChamberSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberMap {
    m: usize,
    l: usize,
    chamber_count: usize,
    table: Vec<Vec<usize>>,
}

impl ChamberMap {
    pub fn new(
        chambers: &ChamberSet,
        m: usize,
        l: usize,
        table: Vec<Vec<usize>>,
    ) -> Result<ChamberMap> {
        let count = chambers.len();
        let expected = profile_count(count, m)?;
        if table.len() != expected || m == 0 {
            return Err(Error::ShapeMismatch);
        }
        for outputs in &table {
            if outputs.len() != l {
                return Err(Error::ShapeMismatch);
            }
            if let Some(&bad) = outputs.iter().find(|&&c| c >= count) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    len: count,
                });
            }
        }
        Ok(ChamberMap {
            m,
            l,
            chamber_count: count,
            table,
        })
    }

    /// Builds the map from a closure on profiles.
    pub fn from_fn(
        chambers: &ChamberSet,
        m: usize,
        l: usize,
        mut f: impl FnMut(&[usize]) -> Vec<usize>,
    ) -> Result<ChamberMap> {
        let count = chambers.len();
        let table = (0..profile_count(count, m)?)
            .map(|rank| f(&profile_unrank(count, m, rank)))
            .collect();
        ChamberMap::new(chambers, m, l, table)
    }

    pub fn arity_in(&self) -> usize {
        self.m
    }

    pub fn arity_out(&self) -> usize {
        self.l
    }

    pub fn chamber_count(&self) -> usize {
        self.chamber_count
    }

    pub fn apply(&self, profile: &[usize]) -> &[usize] {
        assert_eq!(profile.len(), self.m);
        &self.table[profile_rank(self.chamber_count, profile)]
    }

    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.table.len()).map(|rank| profile_unrank(self.chamber_count, self.m, rank))
    }

    /// Composition `g ∘ self`; the output arity of `self` must match the
    /// input arity of `g`.
    pub fn then(&self, g: &ChamberMap) -> Result<ChamberMap> {
        if g.m != self.l || g.chamber_count != self.chamber_count {
            return Err(Error::ArityMismatch {
                expected: self.l,
                got: g.m,
            });
        }
        let table = self
            .table
            .iter()
            .map(|mid| g.table[profile_rank(self.chamber_count, mid)].clone())
            .collect();
        Ok(ChamberMap {
            m: self.m,
            l: g.l,
            chamber_count: self.chamber_count,
            table,
        })
    }
}

/// Projection of an `m`-profile onto `slot` (slots are numbered from 1).
pub fn projection_map(chambers: &ChamberSet, m: usize, slot: usize) -> Result<ChamberMap> {
    if slot == 0 || slot > m {
        return Err(Error::IndexOutOfRange {
            index: slot,
            len: m,
        });
    }
    ChamberMap::from_fn(chambers, m, 1, |profile| vec![profile[slot - 1]])
}

/// Insertion map `c ↦ (context with c inserted at slot)`; `slot` is 1-based
/// and the result has input arity 1 and output arity `context.len() + 1`.
pub fn rho_map(chambers: &ChamberSet, slot: usize, context: &[usize]) -> Result<ChamberMap> {
    let m = context.len() + 1;
    if slot == 0 || slot > m {
        return Err(Error::IndexOutOfRange {
            index: slot,
            len: m,
        });
    }
    if let Some(&bad) = context.iter().find(|&&c| c >= chambers.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: chambers.len(),
        });
    }
    ChamberMap::from_fn(chambers, 1, m, |profile| {
        let mut out = context.to_vec();
        out.insert(slot - 1, profile[0]);
        out
    })
}

/// Diagonal map `c ↦ (c, …, c)` into `m` slots.
pub fn delta_map(chambers: &ChamberSet, m: usize) -> Result<ChamberMap> {
    if m == 0 {
        return Err(Error::ShapeMismatch);
    }
    ChamberMap::from_fn(chambers, 1, m, |profile| vec![profile[0]; m])
}

/// The per-hyperplane data of an IIA map: for each hyperplane, a total
/// function from input sign tuples to output sign tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerHyperplaneFamily {
    m: usize,
    l: usize,
    tables: Vec<Vec<Vec<Sign>>>,
}

impl PerHyperplaneFamily {
    pub fn new(m: usize, l: usize, tables: Vec<Vec<Vec<Sign>>>) -> Result<PerHyperplaneFamily> {
        if m == 0
            || tables.iter().any(|t| t.len() != 1 << m)
            || tables.iter().flatten().any(|out| out.len() != l)
        {
            return Err(Error::ShapeMismatch);
        }
        Ok(PerHyperplaneFamily { m, l, tables })
    }

    pub fn arity_in(&self) -> usize {
        self.m
    }

    pub fn arity_out(&self) -> usize {
        self.l
    }

    pub fn hyperplane_count(&self) -> usize {
        self.tables.len()
    }

    /// Output signs of hyperplane `h` on an input sign tuple.
    pub fn output(&self, h: usize, input: &[Sign]) -> &[Sign] {
        &self.tables[h][sign_tuple_rank(input)]
    }

    pub fn tables(&self) -> &[Vec<Vec<Sign>>] {
        &self.tables
    }
}

fn hyperplane_signs(chambers: &ChamberSet, h: usize, profile: &[usize]) -> Vec<Sign> {
    profile.iter().map(|&c| chambers.get(c).sign(h)).collect()
}

/// Extracts the unique per-hyperplane family of `f` if `f` satisfies IIA,
/// `None` otherwise. Reassembling the family reproduces `f`.
pub fn check_iia(chambers: &ChamberSet, f: &ChamberMap) -> Option<PerHyperplaneFamily> {
    let n = chambers.arrangement().len();
    let mut tables: Vec<Vec<Option<Vec<Sign>>>> = vec![vec![None; 1 << f.m]; n];
    for profile in f.profiles() {
        let outputs = f.apply(&profile);
        for (h, table) in tables.iter_mut().enumerate() {
            let rank = sign_tuple_rank(&hyperplane_signs(chambers, h, &profile));
            let out: Vec<Sign> = outputs.iter().map(|&c| chambers.get(c).sign(h)).collect();
            match &table[rank] {
                Some(existing) if *existing != out => return None,
                Some(_) => {}
                None => table[rank] = Some(out),
            }
        }
    }
    // every sign tuple is realized by some profile, so the tables are total
    let tables = tables
        .into_iter()
        .map(|t| {
            t.into_iter()
                .map(|e| e.expect("unrealized sign tuple"))
                .collect()
        })
        .collect();
    Some(PerHyperplaneFamily {
        m: f.m,
        l: f.l,
        tables,
    })
}

/// True when `f` fixes every diagonal profile. Requires output arity 1.
pub fn check_par(chambers: &ChamberSet, f: &ChamberMap) -> Result<bool> {
    if f.l != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: f.l,
        });
    }
    Ok((0..chambers.len()).all(|c| f.apply(&vec![c; f.m])[0] == c))
}

/// Assembles a family into a chamber map. Present exactly when every profile
/// is sent to realizable sign vectors in every output slot.
pub fn assemble_family(
    chambers: &ChamberSet,
    family: &PerHyperplaneFamily,
) -> Option<ChamberMap> {
    let n = chambers.arrangement().len();
    assert_eq!(family.tables.len(), n, "family/arrangement mismatch");
    let count = chambers.len();
    let total = profile_count(count, family.m).ok()?;
    let mut table = Vec::with_capacity(total);
    for rank in 0..total {
        let profile = profile_unrank(count, family.m, rank);
        let ranks: Vec<usize> = (0..n)
            .map(|h| sign_tuple_rank(&hyperplane_signs(chambers, h, &profile)))
            .collect();
        let mut outputs = Vec::with_capacity(family.l);
        for j in 0..family.l {
            let signs = SignVector((0..n).map(|h| family.tables[h][ranks[h]][j]).collect());
            outputs.push(chambers.index_of(&signs)?);
        }
        table.push(outputs);
    }
    Some(ChamberMap {
        m: family.m,
        l: family.l,
        chamber_count: count,
        table,
    })
}

/// The unique slot `f` projects onto, if any (1-based). Requires output
/// arity 1.
pub fn classify_projection(f: &ChamberMap) -> Result<Option<usize>> {
    if f.l != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            got: f.l,
        });
    }
    'slots: for slot in 1..=f.m {
        for (rank, outputs) in f.table.iter().enumerate() {
            let profile = profile_unrank(f.chamber_count, f.m, rank);
            if outputs[0] != profile[slot - 1] {
                continue 'slots;
            }
        }
        return Ok(Some(slot));
    }
    Ok(None)
}

/// An admissible map together with its per-hyperplane family.
#[derive(Debug, Clone)]
pub struct AdmissibleMap {
    pub family: PerHyperplaneFamily,
    pub map: ChamberMap,
}

fn chamber_code(signs: &SignVector) -> u64 {
    signs
        .0
        .iter()
        .enumerate()
        .fold(0, |acc, (h, s)| acc | (u64::from(*s == Sign::Minus) << h))
}

/// Search state shared by the family enumerations: single-output function
/// tables are encoded as bitmasks (`bit t` = output on tuple rank `t` is
/// `-`), and partial output sign vectors as per-profile prefix codes.
struct FamilySearch<'a> {
    chambers: &'a ChamberSet,
    m: usize,
    fn_ids: Vec<u32>,
    profile_ranks: Vec<Vec<usize>>,
    prefix_codes: Vec<HashMap<u64, bool>>,
    chamber_by_code: HashMap<u64, usize>,
}

impl<'a> FamilySearch<'a> {
    fn new(chambers: &'a ChamberSet, m: usize, par_only: bool) -> Result<Self> {
        let n = chambers.arrangement().len();
        let tuple_count = 1usize << m;
        if tuple_count > 16 {
            return Err(Error::BudgetExceeded {
                limit: 1 << 16,
                unit: "candidate functions per hyperplane",
            });
        }
        let all_plus = 0usize;
        let all_minus = tuple_count - 1;
        let fn_ids: Vec<u32> = (0..1u32 << tuple_count)
            .filter(|id| {
                !par_only || ((id >> all_plus) & 1 == 0 && (id >> all_minus) & 1 == 1)
            })
            .collect();
        let total = profile_count(chambers.len(), m)?;
        let profile_ranks: Vec<Vec<usize>> = (0..total)
            .map(|rank| {
                let profile = profile_unrank(chambers.len(), m, rank);
                (0..n)
                    .map(|h| sign_tuple_rank(&hyperplane_signs(chambers, h, &profile)))
                    .collect()
            })
            .collect();
        // prefix_codes[k] holds the sign patterns on hyperplanes 0..=k that
        // extend to a chamber
        let mut prefix_codes = vec![HashMap::new(); n];
        for chamber in chambers.iter() {
            let code = chamber_code(chamber.signs());
            for (k, map) in prefix_codes.iter_mut().enumerate() {
                map.insert(code & ((1 << (k + 1)) - 1), true);
            }
        }
        let chamber_by_code = chambers
            .iter()
            .enumerate()
            .map(|(i, c)| (chamber_code(c.signs()), i))
            .collect();
        Ok(FamilySearch {
            chambers,
            m,
            fn_ids,
            profile_ranks,
            prefix_codes,
            chamber_by_code,
        })
    }

    fn run(&self, budget: &mut Budget) -> Result<Vec<AdmissibleMap>> {
        let n = self.chambers.arrangement().len();
        let mut chosen: Vec<u32> = Vec::with_capacity(n);
        let mut codes = vec![0u64; self.profile_ranks.len()];
        let mut found = Vec::new();
        self.dfs(0, &mut chosen, &mut codes, budget, &mut found)?;
        Ok(found)
    }

    fn dfs(
        &self,
        depth: usize,
        chosen: &mut Vec<u32>,
        codes: &mut [u64],
        budget: &mut Budget,
        found: &mut Vec<AdmissibleMap>,
    ) -> Result<()> {
        let n = self.chambers.arrangement().len();
        for &id in &self.fn_ids {
            budget.charge(codes.len() as u64)?;
            let mut next: Vec<u64> = Vec::with_capacity(codes.len());
            let mut feasible = true;
            for (profile, &code) in self.profile_ranks.iter().zip(codes.iter()) {
                let bit = u64::from((id >> profile[depth]) & 1);
                let extended = code | (bit << depth);
                if !self.prefix_codes[depth].contains_key(&extended) {
                    feasible = false;
                    break;
                }
                next.push(extended);
            }
            if !feasible {
                continue;
            }
            chosen.push(id);
            if depth + 1 == n {
                found.push(self.emit(chosen, &next));
            } else {
                self.dfs(depth + 1, chosen, &mut next, budget, found)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    fn emit(&self, chosen: &[u32], codes: &[u64]) -> AdmissibleMap {
        let tables: Vec<Vec<Vec<Sign>>> = chosen
            .iter()
            .map(|&id| {
                (0..1usize << self.m)
                    .map(|t| {
                        vec![if (id >> t) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }]
                    })
                    .collect()
            })
            .collect();
        let family = PerHyperplaneFamily {
            m: self.m,
            l: 1,
            tables,
        };
        let table: Vec<Vec<usize>> = codes
            .iter()
            .map(|code| vec![self.chamber_by_code[code]])
            .collect();
        let map = ChamberMap {
            m: self.m,
            l: 1,
            chamber_count: self.chambers.len(),
            table,
        };
        AdmissibleMap { family, map }
    }
}

/// Every map `Ch(A)^m → Ch(A)` satisfying IIA and PAR, in lexicographic
/// family order. Enumerates PAR-respecting per-hyperplane functions
/// hyperplane-major, aborting a partial family as soon as some profile's
/// output pattern extends to no chamber.
pub fn enumerate_admissible(
    chambers: &ChamberSet,
    m: usize,
    budget: &mut Budget,
) -> Result<Vec<AdmissibleMap>> {
    FamilySearch::new(chambers, m, true)?.run(budget)
}

/// Every well-defined IIA self-map `Ch(A) → Ch(A)` (PAR not required).
pub fn enumerate_iia_self_maps(
    chambers: &ChamberSet,
    budget: &mut Budget,
) -> Result<Vec<AdmissibleMap>> {
    FamilySearch::new(chambers, 1, false)?.run(budget)
}

/// A per-hyperplane side swap whose sign action preserves the chamber set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IIABijection {
    flips: Vec<bool>,
}

impl IIABijection {
    pub fn identity(n: usize) -> Self {
        IIABijection {
            flips: vec![false; n],
        }
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn is_identity(&self) -> bool {
        self.flips.iter().all(|&f| !f)
    }

    pub fn apply(&self, signs: &SignVector) -> SignVector {
        SignVector(
            signs
                .0
                .iter()
                .zip(&self.flips)
                .map(|(s, &flip)| if flip { s.flip() } else { *s })
                .collect(),
        )
    }

    /// The bijection as a chamber map (arity 1 → 1).
    pub fn to_chamber_map(&self, chambers: &ChamberSet) -> ChamberMap {
        ChamberMap::from_fn(chambers, 1, 1, |profile| {
            let image = self.apply(chambers.get(profile[0]).signs());
            vec![chambers
                .index_of(&image)
                .expect("bijection leaves chambers")]
        })
        .expect("arity-1 table")
    }
}

/// All side-swap vectors whose action maps the chamber set onto itself, in
/// ascending bitmask order. Always contains the identity and, by central
/// symmetry, the all-flip (antipodal) map.
pub fn iia_bijections(chambers: &ChamberSet) -> Vec<IIABijection> {
    let n = chambers.arrangement().len();
    let codes: Vec<u64> = chambers.iter().map(|c| chamber_code(c.signs())).collect();
    let code_set: HashMap<u64, bool> = codes.iter().map(|&c| (c, true)).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if codes.iter().all(|&c| code_set.contains_key(&(c ^ mask))) {
            out.push(IIABijection {
                flips: (0..n).map(|h| (mask >> h) & 1 == 1).collect(),
            });
        }
    }
    out
}

/// Number of hyperplanes on which two side-swap vectors differ.
pub fn hamming_distance(a: &IIABijection, b: &IIABijection) -> Result<usize> {
    if a.flips.len() != b.flips.len() {
        return Err(Error::ArrangementMismatch);
    }
    Ok(a.flips
        .iter()
        .zip(&b.flips)
        .filter(|(x, y)| x != y)
        .count())
}

/// Number of hyperplanes separating two equally shaped profiles: those whose
/// sign differs in at least one slot.
pub fn profile_distance(p: &[&SignVector], q: &[&SignVector]) -> Result<usize> {
    if p.len() != q.len() || p.is_empty() {
        return Err(Error::ShapeMismatch);
    }
    let n = p[0].len();
    if p.iter().chain(q.iter()).any(|sv| sv.len() != n) {
        return Err(Error::ShapeMismatch);
    }
    Ok((0..n)
        .filter(|&h| p.iter().zip(q).any(|(a, b)| a.get(h) != b.get(h)))
        .count())
}

/// Separation distance between two single chambers.
pub fn chamber_distance(a: &Chamber, b: &Chamber) -> Result<usize> {
    profile_distance(&[a.signs()], &[b.signs()])
}

/// Minimum Hamming distance from the identity over the non-identity IIA
/// bijections; `None` when the identity is the only one.
pub fn min_distance_from_id(chambers: &ChamberSet) -> Option<usize> {
    iia_bijections(chambers)
        .iter()
        .filter(|b| !b.is_identity())
        .map(|b| b.flips.iter().filter(|&&f| f).count())
        .min()
}
