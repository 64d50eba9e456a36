//! Central hyperplane arrangements over the rationals: construction and
//! normalization, rank and circuits, the co-circuit graph with its
//! decomposition into indecomposable parts, and exact chamber enumeration.
//!
//! A chamber is identified with its sign vector — the side it takes of every
//! hyperplane — together with an exact rational witness point. Realizability
//! of a (partial) sign vector is decided by the Fourier–Motzkin oracle in
//! [`crate::feasibility`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::feasibility::feasible_point;
use crate::rational::{dot, primitive_integer_vector, Int, Rational};
use crate::{Error, Result};

/// Side of a hyperplane. `Plus` sorts before `Minus`, which fixes the
/// lexicographic order on sign vectors everywhere in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a nonzero rational. Panics on zero.
    pub fn of(value: &Rational) -> Sign {
        assert!(!value.is_zero(), "sign of zero is undefined");
        if value.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Total sign assignment, one entry per hyperplane of the owning arrangement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, h: usize) -> Sign {
        self.0[h]
    }

    pub fn antipode(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    /// Parses a string like `"+-+"`.
    pub fn parse(text: &str) -> Option<SignVector> {
        text.chars().map(Sign::from_char).collect::<Option<Vec<_>>>().map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// A linear hyperplane `⟨normal, x⟩ = 0`, stored as a primitive integer
/// normal whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Int>,
}

impl Hyperplane {
    pub fn normal(&self) -> &[Int] {
        &self.normal
    }

    /// Exact evaluation of the defining functional at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        dot(&self.normal, point)
    }
}

/// A finite set of distinct linear hyperplanes in `Q^dim`, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Normalizes and validates raw normal vectors. Input order is kept;
    /// zero vectors, dimension mismatches and proportional pairs are
    /// rejected.
    pub fn new(dim: usize, raw_normals: Vec<Vec<Rational>>) -> Result<Arrangement> {
        if raw_normals.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        let mut hyperplanes = Vec::with_capacity(raw_normals.len());
        let mut seen: HashMap<Vec<Int>, usize> = HashMap::new();
        for (index, raw) in raw_normals.into_iter().enumerate() {
            if raw.len() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    got: raw.len(),
                });
            }
            let normal =
                primitive_integer_vector(&raw).ok_or(Error::ZeroNormal { index })?;
            if let Some(&first) = seen.get(&normal) {
                return Err(Error::DuplicateHyperplane {
                    first,
                    second: index,
                });
            }
            seen.insert(normal.clone(), index);
            hyperplanes.push(Hyperplane { normal });
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// Braid arrangement on `n` coordinates: hyperplanes `x_i = x_j` for
    /// `i < j`, in lexicographic `(i, j)` order.
    pub fn braid(n: usize) -> Arrangement {
        assert!(n >= 2, "braid arrangement needs n >= 2");
        let mut normals = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::from(Int::from(1));
                v[j] = Rational::from(Int::from(-1));
                normals.push(v);
            }
        }
        Arrangement::new(n, normals).unwrap()
    }

    /// Boolean arrangement: the `n` coordinate hyperplanes in `Q^n`.
    pub fn boolean(n: usize) -> Arrangement {
        assert!(n >= 1, "boolean arrangement needs n >= 1");
        let normals = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::from(Int::from(1));
                v
            })
            .collect();
        Arrangement::new(n, normals).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, h: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(h).ok_or(Error::IndexOutOfRange {
            index: h,
            len: self.hyperplanes.len(),
        })
    }

    fn check_subset(&self, subset: &BTreeSet<usize>) -> Result<()> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// Rank of the normals indexed by `subset` (Gaussian elimination over the
    /// rationals). The empty set has rank 0.
    pub fn rank_of(&self, subset: &BTreeSet<usize>) -> Result<usize> {
        self.check_subset(subset)?;
        let mut rows: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| {
                self.hyperplanes[i]
                    .normal
                    .iter()
                    .map(|c| Rational::from(c.clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_row[col];
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry -= &factor * p;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Ok(rank)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.len()).collect()).unwrap()
    }

    /// All inclusion-minimal dependent subsets, each sorted, in lexicographic
    /// order. Empty exactly when the normals are linearly independent.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let rank = self.rank();
        let mut circuits: Vec<Vec<usize>> = Vec::new();
        // a circuit has at most rank+1 elements
        for size in 2..=(rank + 1).min(n) {
            for subset in (0..n).combinations(size) {
                if circuits.iter().any(|c| c.iter().all(|i| subset.contains(i))) {
                    continue;
                }
                let as_set: BTreeSet<usize> = subset.iter().copied().collect();
                if self.rank_of(&as_set).unwrap() < size {
                    circuits.push(subset);
                }
            }
        }
        circuits.sort();
        circuits
    }

    /// Graph on hyperplane indices with an edge where two hyperplanes share a
    /// circuit. Connectivity of this graph detects indecomposability.
    pub fn gamma_graph(&self) -> GammaGraph {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
        for circuit in self.circuits() {
            for pair in circuit.iter().combinations(2) {
                adj[*pair[0]].insert(*pair[1]);
                adj[*pair[1]].insert(*pair[0]);
            }
        }
        GammaGraph { adj }
    }

    /// Splits the arrangement along the connected components of the
    /// co-circuit graph; ranks are additive over the parts.
    pub fn decompose(&self) -> DecompositionReport {
        let parts = self.gamma_graph().components();
        let part_ranks: Vec<usize> = parts
            .iter()
            .map(|part| self.rank_of(&part.iter().copied().collect()).unwrap())
            .collect();
        let report = DecompositionReport {
            total_rank: self.rank(),
            parts,
            part_ranks,
        };
        debug_assert_eq!(
            report.part_ranks.iter().sum::<usize>(),
            report.total_rank
        );
        report
    }

    /// Builds the inequality system `sign · ⟨normal, x⟩ ≥ 1` for the given
    /// assignments and hands it to the Fourier–Motzkin oracle.
    fn sign_system_witness(&self, assignments: &[(usize, Sign)]) -> Option<Vec<Rational>> {
        let one = Rational::from(Int::from(1));
        let system: Vec<(Vec<Int>, Rational)> = assignments
            .iter()
            .map(|&(h, sign)| {
                let coeffs = match sign {
                    Sign::Plus => self.hyperplanes[h].normal.clone(),
                    Sign::Minus => self.hyperplanes[h].normal.iter().map(|c| -c).collect(),
                };
                (coeffs, one.clone())
            })
            .collect();
        feasible_point(self.dim, &system)
    }

    /// True when some rational point realizes every assigned sign strictly.
    pub fn sign_feasible(&self, partial: &BTreeMap<usize, Sign>) -> Result<bool> {
        Ok(self.sign_witness(partial)?.is_some())
    }

    /// Like [`Arrangement::sign_feasible`] but returns the witness point.
    pub fn sign_witness(&self, partial: &BTreeMap<usize, Sign>) -> Result<Option<Vec<Rational>>> {
        self.check_subset(&partial.keys().copied().collect())?;
        let assignments: Vec<(usize, Sign)> =
            partial.iter().map(|(&h, &s)| (h, s)).collect();
        Ok(self.sign_system_witness(&assignments))
    }

    /// All chambers in lexicographic sign-vector order (`+` before `-`),
    /// found by depth-first search over partial sign assignments with
    /// infeasible subtrees pruned.
    pub fn chambers(&self) -> ChamberSet {
        let mut chambers = Vec::new();
        let mut prefix: Vec<(usize, Sign)> = Vec::with_capacity(self.len());
        self.chamber_dfs(&mut prefix, &mut chambers);
        ChamberSet::new(self.clone(), chambers)
    }

    fn chamber_dfs(&self, prefix: &mut Vec<(usize, Sign)>, out: &mut Vec<Chamber>) {
        let depth = prefix.len();
        for sign in [Sign::Plus, Sign::Minus] {
            prefix.push((depth, sign));
            if let Some(witness) = self.sign_system_witness(prefix) {
                if depth + 1 == self.len() {
                    out.push(Chamber {
                        signs: SignVector(prefix.iter().map(|&(_, s)| s).collect()),
                        witness,
                    });
                } else {
                    self.chamber_dfs(prefix, out);
                }
            }
            prefix.pop();
        }
    }

    /// Side of chamber `c` with respect to hyperplane `h`.
    pub fn epsilon(&self, h: usize, c: &Chamber) -> Result<Sign> {
        self.hyperplane(h)?;
        Ok(c.signs.get(h))
    }
}

/// Undirected graph on hyperplane indices (edge = shared circuit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl GammaGraph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i).is_some_and(|s| s.contains(&j))
    }

    pub fn neighbours(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut component = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                component.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }
}

/// Decomposition of an arrangement into indecomposable parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub parts: Vec<Vec<usize>>,
    pub part_ranks: Vec<usize>,
    pub total_rank: usize,
}

impl DecompositionReport {
    pub fn is_indecomposable(&self) -> bool {
        self.parts.len() == 1
    }
}

/// A chamber: realizable total sign vector plus an exact interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    signs: SignVector,
    witness: Vec<Rational>,
}

impl Chamber {
    pub fn signs(&self) -> &SignVector {
        &self.signs
    }

    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn sign(&self, h: usize) -> Sign {
        self.signs.get(h)
    }
}

/// The chamber list of an arrangement, in lexicographic sign order, with a
/// reverse index from sign vectors to positions.
#[derive(Debug, Clone)]
pub struct ChamberSet {
    arrangement: Arrangement,
    chambers: Vec<Chamber>,
    index: HashMap<SignVector, usize>,
}

impl ChamberSet {
    fn new(arrangement: Arrangement, chambers: Vec<Chamber>) -> Self {
        let index = chambers
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        ChamberSet {
            arrangement,
            chambers,
            index,
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn get(&self, i: usize) -> &Chamber {
        &self.chambers[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Chamber> {
        self.chambers.iter()
    }

    /// Position of a sign vector in the chamber list, if realizable.
    pub fn index_of(&self, signs: &SignVector) -> Option<usize> {
        self.index.get(signs).copied()
    }

    pub fn contains(&self, signs: &SignVector) -> bool {
        self.index.contains_key(signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rationals(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&c| int(c)).collect())
            .collect()
    }

    fn signs(text: &str) -> SignVector {
        SignVector::parse(text).unwrap()
    }

    #[test]
    fn normalization_divides_and_orients() {
        let arr = Arrangement::new(3, rationals(&[&[2, -2, 0]])).unwrap();
        assert_eq!(
            arr.hyperplanes()[0].normal(),
            &[Int::from(1), Int::from(-1), Int::from(0)]
        );
    }

    #[test]
    fn proportional_normals_are_rejected() {
        let err = Arrangement::new(3, rationals(&[&[1, -1, 0], &[-1, 1, 0]])).unwrap_err();
        assert_eq!(err, Error::DuplicateHyperplane { first: 0, second: 1 });
    }

    #[test]
    fn braid_normals_are_kept_verbatim() {
        let arr = Arrangement::braid(3);
        let expected: Vec<Vec<Int>> = vec![
            vec![1.into(), (-1).into(), 0.into()],
            vec![1.into(), 0.into(), (-1).into()],
            vec![0.into(), 1.into(), (-1).into()],
        ];
        let got: Vec<Vec<Int>> = arr
            .hyperplanes()
            .iter()
            .map(|h| h.normal().to_vec())
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Arrangement::new(2, vec![]).unwrap_err(),
            Error::EmptyArrangement
        );
        assert_eq!(
            Arrangement::new(2, rationals(&[&[0, 0]])).unwrap_err(),
            Error::ZeroNormal { index: 0 }
        );
        assert_eq!(
            Arrangement::new(2, rationals(&[&[1, 0, 0]])).unwrap_err(),
            Error::DimensionMismatch {
                index: 0,
                expected: 2,
                got: 3
            }
        );
    }

    #[test]
    fn rank_examples() {
        let braid = Arrangement::braid(3);
        assert_eq!(braid.rank(), 2);
        let boolean = Arrangement::boolean(4);
        assert_eq!(boolean.rank(), 4);
        assert_eq!(braid.rank_of(&BTreeSet::new()).unwrap(), 0);
        assert_eq!(
            braid.rank_of(&[7usize].into_iter().collect()).unwrap_err(),
            Error::IndexOutOfRange { index: 7, len: 3 }
        );
    }

    #[test]
    fn circuits_examples() {
        assert_eq!(Arrangement::braid(3).circuits(), vec![vec![0, 1, 2]]);
        assert_eq!(Arrangement::boolean(3).circuits(), Vec::<Vec<usize>>::new());
        let arr = Arrangement::new(2, rationals(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(arr.circuits(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn circuits_are_minimal_dependent_sets() {
        for arr in [Arrangement::braid(4), Arrangement::boolean(3)] {
            for circuit in arr.circuits() {
                let set: BTreeSet<usize> = circuit.iter().copied().collect();
                assert!(arr.rank_of(&set).unwrap() < set.len());
                for &drop in &circuit {
                    let mut smaller = set.clone();
                    smaller.remove(&drop);
                    assert_eq!(arr.rank_of(&smaller).unwrap(), smaller.len());
                }
            }
        }
    }

    #[test]
    fn gamma_graph_examples() {
        let braid = Arrangement::braid(3).gamma_graph();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert!(braid.has_edge(i, j));
        }
        let boolean = Arrangement::boolean(3).gamma_graph();
        assert_eq!(boolean.components().len(), 3);
        assert!(Arrangement::braid(4).gamma_graph().is_connected());
    }

    #[test]
    fn decompose_examples() {
        let report = Arrangement::boolean(3).decompose();
        assert_eq!(report.parts, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(report.part_ranks, vec![1, 1, 1]);
        assert!(!report.is_indecomposable());

        let report = Arrangement::braid(3).decompose();
        assert_eq!(report.parts, vec![vec![0, 1, 2]]);
        assert_eq!(report.part_ranks, vec![2]);
        assert!(report.is_indecomposable());

        // braid-3 on coordinates 1..3 plus the hyperplane x_4, in dim 4
        let arr = Arrangement::new(
            4,
            rationals(&[
                &[1, -1, 0, 0],
                &[1, 0, -1, 0],
                &[0, 1, -1, 0],
                &[0, 0, 0, 1],
            ]),
        )
        .unwrap();
        let report = arr.decompose();
        assert_eq!(report.parts, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(report.part_ranks, vec![2, 1]);
    }

    #[test]
    fn sign_feasibility_examples() {
        let braid = Arrangement::braid(3);
        let cyclic: BTreeMap<usize, Sign> =
            [(0, Sign::Plus), (1, Sign::Minus), (2, Sign::Plus)].into();
        assert!(!braid.sign_feasible(&cyclic).unwrap());

        let chain: BTreeMap<usize, Sign> =
            [(0, Sign::Plus), (1, Sign::Plus), (2, Sign::Plus)].into();
        assert!(braid.sign_feasible(&chain).unwrap());
        // the point (2, 1, 0) realizes +++ by direct substitution
        let point = vec![int(2), int(1), int(0)];
        for h in 0..3 {
            assert!(braid.hyperplanes()[h].eval(&point).is_positive());
        }

        assert!(braid.sign_feasible(&BTreeMap::new()).unwrap());
        let bad: BTreeMap<usize, Sign> = [(9, Sign::Plus)].into();
        assert_eq!(
            braid.sign_feasible(&bad).unwrap_err(),
            Error::IndexOutOfRange { index: 9, len: 3 }
        );
    }

    #[test]
    fn braid3_chambers_are_the_six_acyclic_sign_vectors() {
        let chambers = Arrangement::braid(3).chambers();
        let got: Vec<String> = chambers.iter().map(|c| c.signs().to_string()).collect();
        assert_eq!(got, vec!["+++", "++-", "+--", "-++", "--+", "---"]);
        assert!(!chambers.contains(&signs("+-+")));
        assert!(!chambers.contains(&signs("-+-")));
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(Arrangement::boolean(5).chambers().len(), 32);
        assert_eq!(Arrangement::braid(4).chambers().len(), 24);
    }

    #[test]
    fn witnesses_realize_their_sign_vectors() {
        for arr in [Arrangement::braid(4), Arrangement::boolean(3)] {
            let chambers = arr.chambers();
            for chamber in chambers.iter() {
                for (h, hyperplane) in arr.hyperplanes().iter().enumerate() {
                    let value = hyperplane.eval(chamber.witness());
                    assert_eq!(Sign::of(&value), chamber.sign(h));
                }
            }
        }
    }

    #[test]
    fn antipodal_sign_vectors_are_chambers_together() {
        let chambers = Arrangement::braid(4).chambers();
        for chamber in chambers.iter() {
            assert!(chambers.contains(&chamber.signs().antipode()));
        }
    }

    #[test]
    fn epsilon_projects_the_sign_vector() {
        let braid = Arrangement::braid(3);
        let chambers = braid.chambers();
        let top = chambers.get(chambers.index_of(&signs("+++")).unwrap());
        assert_eq!(braid.epsilon(0, top).unwrap(), Sign::Plus);
        let bottom = chambers.get(chambers.index_of(&signs("---")).unwrap());
        assert_eq!(braid.epsilon(2, bottom).unwrap(), Sign::Minus);

        let boolean = Arrangement::boolean(2);
        let bc = boolean.chambers();
        let pm = bc.get(bc.index_of(&signs("+-")).unwrap());
        assert_eq!(boolean.epsilon(1, pm).unwrap(), Sign::Minus);
        assert!(boolean.epsilon(5, pm).is_err());
    }

    #[test]
    fn rational_normals_are_scaled_to_integers() {
        let arr = Arrangement::new(
            2,
            vec![vec![ratio(1, 2), ratio(-1, 3)], vec![int(0), int(5)]],
        )
        .unwrap();
        assert_eq!(
            arr.hyperplanes()[0].normal(),
            &[Int::from(3), Int::from(-2)]
        );
        assert_eq!(arr.hyperplanes()[1].normal(), &[Int::from(0), Int::from(1)]);
    }
}
