//! Integral simplicial homology.
//!
//! Chain complexes are assembled from a face census in lexicographic order
//! with the standard alternating-sign boundary on sorted vertex lists, and
//! `∂∂ = 0` is checked exactly on construction. Betti numbers and torsion
//! come from Smith normal forms — dense with certificates below the
//! 500×500 threshold, sparse unit-pivot elimination above it.
//!
//! Maps induced on homology are computed on explicit free bases: generators
//! of `H_k` are cycles extracted from the change-of-basis certificates, so
//! induced maps are honest integer matrices that compose functorially, and
//! the degree of a self-map of a circle-like complex is the `1×1` entry.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::ChamberSet;
use crate::simplicial::{Complex, Label, SimplicialMap};
use crate::snf::{smith_normal_form_with, sparse_rank_and_torsion, IntMat, SnfSides, SparseMat};
use crate::social::{check_par, delta_map, rho_map, ChamberMap};
use crate::{Budget, Error, Result};

/// Basis simplices per dimension and integer boundary matrices.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    simplices: Vec<Vec<Vec<u32>>>,
    boundaries: Vec<SparseMat>,
}

impl ChainComplex {
    /// Number of chain dimensions present (top dimension + 1).
    pub fn levels(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    /// The `k`-simplices in lexicographic order.
    pub fn simplices_at(&self, k: usize) -> &[Vec<u32>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// `∂_k`, mapping `k`-chains to `(k−1)`-chains. For `k = 0` this is the
    /// zero map out of `C_0`; above the top dimension it is empty.
    pub fn boundary(&self, k: usize) -> SparseMat {
        match self.boundaries.get(k) {
            Some(b) => b.clone(),
            None => SparseMat {
                rows: self.simplex_count(k.wrapping_sub(1)),
                cols: 0,
                entries: Vec::new(),
            },
        }
    }

    pub fn boundary_dense(&self, k: usize) -> IntMat {
        let b = self.boundary(k);
        let mut m = IntMat::zeros(b.rows, b.cols);
        for (i, j, v) in b.entries {
            *m.get_mut(i as usize, j as usize) = BigInt::from(v);
        }
        m
    }
}

/// Builds the chain complex of `K` up to chain dimension `up_to_dim`,
/// verifying `∂∂ = 0` exactly.
pub fn chain_complex<V: Label>(
    complex: &Complex<V>,
    up_to_dim: usize,
    budget: &mut Budget,
) -> Result<ChainComplex> {
    let simplices = complex.faces_by_dim(Some(up_to_dim), Some(budget))?;
    let mut boundaries = Vec::with_capacity(simplices.len());
    for k in 0..simplices.len() {
        let rows = if k == 0 { 0 } else { simplices[k - 1].len() };
        let mut entries = Vec::new();
        if k > 0 {
            for (j, simplex) in simplices[k].iter().enumerate() {
                for (drop, _) in simplex.iter().enumerate() {
                    let mut face = simplex.clone();
                    face.remove(drop);
                    let i = simplices[k - 1]
                        .binary_search(&face)
                        .expect("faces of simplices are simplices");
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    entries.push((i as u32, j as u32, sign as i128));
                }
            }
        }
        boundaries.push(SparseMat {
            rows,
            cols: simplices[k].len(),
            entries,
        });
    }
    let cc = ChainComplex {
        simplices,
        boundaries,
    };
    assert!(boundary_composition_vanishes(&cc), "∂∂ ≠ 0");
    Ok(cc)
}

fn boundary_composition_vanishes(cc: &ChainComplex) -> bool {
    for k in 2..cc.levels() {
        let lower = &cc.boundaries[k - 1];
        let mut by_col: Vec<Vec<(u32, i128)>> = vec![Vec::new(); lower.cols];
        for &(i, j, v) in &lower.entries {
            by_col[j as usize].push((i, v));
        }
        let upper = &cc.boundaries[k];
        let mut upper_cols: Vec<Vec<(u32, i128)>> = vec![Vec::new(); upper.cols];
        for &(i, j, v) in &upper.entries {
            upper_cols[j as usize].push((i, v));
        }
        for col in &upper_cols {
            let mut acc: std::collections::HashMap<u32, i128> = std::collections::HashMap::new();
            for &(mid, v) in col {
                for &(row, w) in &by_col[mid as usize] {
                    *acc.entry(row).or_insert(0) += v * w;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return false;
            }
        }
    }
    true
}

/// One homology group: Betti number and invariant-factor torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

const DENSE_LIMIT: usize = 500;

fn rank_and_torsion(matrix: &SparseMat) -> Result<(usize, Vec<BigInt>)> {
    if matrix.rows <= DENSE_LIMIT && matrix.cols <= DENSE_LIMIT {
        let mut dense = IntMat::zeros(matrix.rows, matrix.cols);
        for &(i, j, v) in &matrix.entries {
            *dense.get_mut(i as usize, j as usize) = BigInt::from(v);
        }
        let snf = smith_normal_form_with(&dense, SnfSides::NONE);
        Ok((snf.rank, snf.torsion()))
    } else {
        sparse_rank_and_torsion(matrix)
    }
}

/// Homology groups of `K` in dimensions `0..=max_dim` (unreduced unless
/// `reduced` is set, which lowers the rank of `H_0` by one).
pub fn homology_groups<V: Label>(
    complex: &Complex<V>,
    max_dim: usize,
    reduced: bool,
    budget: &mut Budget,
) -> Result<Vec<HomologyGroup>> {
    let cc = chain_complex(complex, max_dim + 1, budget)?;
    let mut groups = Vec::with_capacity(max_dim + 1);
    let mut rank_down = 0usize; // rank of ∂_k
    for k in 0..=max_dim {
        let n_k = cc.simplex_count(k);
        if k == 0 && reduced && n_k > 0 {
            rank_down = 1; // augmentation map onto Z
        }
        let (rank_up, torsion) = rank_and_torsion(&cc.boundary(k + 1))?;
        groups.push(HomologyGroup {
            dim: k,
            betti: n_k - rank_down - rank_up,
            torsion,
        });
        rank_down = rank_up;
    }
    Ok(groups)
}

/// Explicit free basis of `H_k`: generator cycles plus the projection that
/// reads off the free coordinates of any cycle's class.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub k: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// `n_k × betti`; columns are generator cycles.
    generator_cycles: IntMat,
    /// `κ × n_k`; rows extract kernel coordinates (κ = dim ker ∂_k).
    kernel_extract: IntMat,
    /// `κ × κ` left transform of the quotient presentation.
    quotient_u: IntMat,
    quotient_rank: usize,
}

impl HomologyBasis {
    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        self.generator_cycles.column(j)
    }

    /// Coordinates of a cycle's homology class in the free basis.
    pub fn class_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let kernel_coords = self.kernel_extract.mul_vec(cycle);
        let presented = self.quotient_u.mul_vec(&kernel_coords);
        presented[self.quotient_rank..].to_vec()
    }
}

/// Computes the free basis of `H_k` from dense Smith normal forms of the two
/// boundary maps.
pub fn homology_basis(cc: &ChainComplex, k: usize) -> HomologyBasis {
    let n_k = cc.simplex_count(k);
    let down = cc.boundary_dense(k); // ∂_k : C_k → C_{k−1}
    let up = cc.boundary_dense(k + 1); // ∂_{k+1} : C_{k+1} → C_k

    // kernel of ∂_k: trailing columns of V, coordinates via trailing rows of
    // V⁻¹
    let snf_down = smith_normal_form_with(&down, SnfSides::RIGHT);
    let v = snf_down.v.expect("right certificate");
    let v_inv = snf_down.v_inv.expect("right certificate");
    let r = snf_down.rank;
    let kappa = n_k - r;
    let mut kernel_basis = IntMat::zeros(n_k, kappa);
    let mut kernel_extract = IntMat::zeros(kappa, n_k);
    for j in 0..kappa {
        for i in 0..n_k {
            *kernel_basis.get_mut(i, j) = v.get(i, r + j).clone();
            *kernel_extract.get_mut(j, i) = v_inv.get(r + j, i).clone();
        }
    }

    // image of ∂_{k+1} in kernel coordinates, presented by its SNF
    let presented = if up.cols() == 0 {
        IntMat::zeros(kappa, 0)
    } else {
        debug_assert!({
            let full = v_inv.mul(&up);
            (0..r).all(|i| (0..up.cols()).all(|j| full.get(i, j).is_zero()))
        });
        kernel_extract.mul(&up)
    };
    let snf_quot = smith_normal_form_with(&presented, SnfSides::LEFT);
    let torsion = snf_quot.torsion();
    let u = snf_quot.u.expect("left certificate");
    let u_inv = snf_quot.u_inv.expect("left certificate");
    let s = snf_quot.rank;
    let betti = kappa - s;

    let mut generator_cycles = IntMat::zeros(n_k, betti);
    for j in 0..betti {
        let coords = u_inv.column(s + j);
        let cycle = kernel_basis.mul_vec(&coords);
        for (i, value) in cycle.into_iter().enumerate() {
            *generator_cycles.get_mut(i, j) = value;
        }
    }
    HomologyBasis {
        k,
        betti,
        torsion,
        generator_cycles,
        kernel_extract,
        quotient_u: u,
        quotient_rank: s,
    }
}

/// The chain map `C_k(source) → C_k(target)` of a simplicial map: degenerate
/// images vanish, others pick up the sign of the sorting permutation.
pub fn chain_map<V: Label, W: Label>(
    f: &SimplicialMap<V, W>,
    source: &ChainComplex,
    target: &ChainComplex,
    k: usize,
) -> Result<IntMat> {
    if source.simplex_count(0) != f.source().vertex_count()
        || target.simplex_count(0) != f.target().vertex_count()
    {
        return Err(Error::ShapeMismatch);
    }
    let mut matrix = IntMat::zeros(target.simplex_count(k), source.simplex_count(k));
    for (j, simplex) in source.simplices_at(k).iter().enumerate() {
        let image: Vec<u32> = simplex.iter().map(|&v| f.apply(v)).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < image.len() {
            continue;
        }
        // parity of the permutation sorting the image
        let mut inversions = 0usize;
        for a in 0..image.len() {
            for b in a + 1..image.len() {
                if image[a] > image[b] {
                    inversions += 1;
                }
            }
        }
        let i = target
            .simplices_at(k)
            .binary_search(&sorted)
            .map_err(|_| Error::NotSimplicial)?;
        *matrix.get_mut(i, j) = if inversions.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
    }
    Ok(matrix)
}

/// A map on homology free parts in the module's fixed bases.
#[derive(Debug, Clone)]
pub struct HomologyMap {
    pub k: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    pub matrix: IntMat,
}

/// Induced matrix on `H_k` free parts, with all chain data precomputed.
pub fn induced_matrix<V: Label, W: Label>(
    f: &SimplicialMap<V, W>,
    source: &ChainComplex,
    source_basis: &HomologyBasis,
    target: &ChainComplex,
    target_basis: &HomologyBasis,
) -> Result<IntMat> {
    let k = source_basis.k;
    let chain = chain_map(f, source, target, k)?;
    let mut matrix = IntMat::zeros(target_basis.betti, source_basis.betti);
    for j in 0..source_basis.betti {
        let image = chain.mul_vec(&source_basis.generator(j));
        let class = target_basis.class_of(&image);
        for (i, value) in class.into_iter().enumerate() {
            *matrix.get_mut(i, j) = value;
        }
    }
    Ok(matrix)
}

/// Induced map on `H_k`, building chain complexes and bases on the fly.
pub fn induced_homology_map<V: Label, W: Label>(
    f: &SimplicialMap<V, W>,
    k: usize,
    budget: &mut Budget,
) -> Result<HomologyMap> {
    let source = chain_complex(f.source(), k + 1, budget)?;
    let target = chain_complex(f.target(), k + 1, budget)?;
    let source_basis = homology_basis(&source, k);
    let target_basis = homology_basis(&target, k);
    let matrix = induced_matrix(f, &source, &source_basis, &target, &target_basis)?;
    Ok(HomologyMap {
        k,
        source_betti: source_basis.betti,
        target_betti: target_basis.betti,
        matrix,
    })
}

/// Degree of a map between complexes whose `H_k` is infinite cyclic: the
/// integer by which the induced map multiplies the generator.
pub fn degree_of_map<V: Label, W: Label>(
    f: &SimplicialMap<V, W>,
    k: usize,
    budget: &mut Budget,
) -> Result<BigInt> {
    let map = induced_homology_map(f, k, budget)?;
    if map.source_betti != 1 {
        return Err(Error::NotSphereLike {
            betti: map.source_betti,
        });
    }
    if map.target_betti != 1 {
        return Err(Error::NotSphereLike {
            betti: map.target_betti,
        });
    }
    Ok(map.matrix.get(0, 0).clone())
}

/// Per-slot summand of the aggregated-insertion identity.
#[derive(Debug, Clone)]
pub struct PhiSlotReport {
    pub slot: usize,
    pub matrix: IntMat,
}

/// Result of checking the two homology identities behind the dictator
/// argument.
#[derive(Debug, Clone)]
pub struct SumIdentityReport {
    /// Degree `r(A) − 1` in which the identities are checked.
    pub degree: usize,
    pub betti_source: usize,
    pub betti_target: usize,
    /// `Σ_i (ρ_{i,c⃗0})_*` against `Δ_*` on `H_k(M_1) → H_k(M_m)`.
    pub rho_sum: IntMat,
    pub delta_matrix: IntMat,
    pub insertion_sum_equals_diagonal: bool,
    /// Present when an aggregation map was supplied: `Σ_i (Φ∘ρ_{i,c⃗0})_*`
    /// against the identity on `H_k(M_1)`.
    pub phi: Option<PhiSumReport>,
}

#[derive(Debug, Clone)]
pub struct PhiSumReport {
    pub per_slot: Vec<PhiSlotReport>,
    pub sum: IntMat,
    pub equals_identity: bool,
}

/// Checks `Σ_i (ρ_{i,c⃗0})_* = Δ_*` in degree `r(A) − 1`, and, for a supplied
/// admissible map `Φ`, `Σ_i (Φ∘ρ_{i,c⃗0})_* = id`.
pub fn verify_sum_identity(
    chambers: &ChamberSet,
    m: usize,
    base_chamber: usize,
    phi: Option<&ChamberMap>,
    budget: &mut Budget,
) -> Result<SumIdentityReport> {
    let rank = chambers.arrangement().rank();
    if rank < 2 {
        return Err(Error::RankTooLow { rank });
    }
    if base_chamber >= chambers.len() {
        return Err(Error::IndexOutOfRange {
            index: base_chamber,
            len: chambers.len(),
        });
    }
    if let Some(map) = phi {
        if map.arity_out() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: map.arity_out(),
            });
        }
        if !check_par(chambers, map)? {
            return Err(Error::NotIIA);
        }
    }
    let k = rank - 1;
    let context = vec![base_chamber; m - 1];

    let m1 = crate::chamber_complexes::build_m(chambers, 1, budget)?;
    let mm = crate::chamber_complexes::build_m(chambers, m, budget)?;
    let cc1 = chain_complex(&m1, k + 1, budget)?;
    let ccm = chain_complex(&mm, k + 1, budget)?;
    let basis1 = homology_basis(&cc1, k);
    let basism = homology_basis(&ccm, k);

    let mut rho_sum = IntMat::zeros(basism.betti, basis1.betti);
    let mut insert_matrices = Vec::with_capacity(m);
    for slot in 1..=m {
        let rho = rho_map(chambers, slot, &context)?;
        let simplicial = crate::chamber_complexes::induced_map_m(chambers, &rho, &m1, &mm)?;
        let matrix = induced_matrix(&simplicial, &cc1, &basis1, &ccm, &basism)?;
        for i in 0..basism.betti {
            for j in 0..basis1.betti {
                *rho_sum.get_mut(i, j) += matrix.get(i, j);
            }
        }
        insert_matrices.push(rho);
    }
    let delta = delta_map(chambers, m)?;
    let delta_simplicial = crate::chamber_complexes::induced_map_m(chambers, &delta, &m1, &mm)?;
    let delta_matrix = induced_matrix(&delta_simplicial, &cc1, &basis1, &ccm, &basism)?;
    let insertion_sum_equals_diagonal = rho_sum == delta_matrix;

    let phi_report = match phi {
        None => None,
        Some(map) => {
            let mut per_slot = Vec::with_capacity(m);
            let mut sum = IntMat::zeros(basis1.betti, basis1.betti);
            for (slot, rho) in insert_matrices.iter().enumerate() {
                let composed = rho.then(map)?;
                let simplicial =
                    crate::chamber_complexes::induced_map_m(chambers, &composed, &m1, &m1)?;
                let matrix = induced_matrix(&simplicial, &cc1, &basis1, &cc1, &basis1)?;
                for i in 0..basis1.betti {
                    for j in 0..basis1.betti {
                        *sum.get_mut(i, j) += matrix.get(i, j);
                    }
                }
                per_slot.push(PhiSlotReport {
                    slot: slot + 1,
                    matrix,
                });
            }
            let equals_identity = sum == IntMat::identity(basis1.betti);
            Some(PhiSumReport {
                per_slot,
                sum,
                equals_identity,
            })
        }
    };

    Ok(SumIdentityReport {
        degree: k,
        betti_source: basis1.betti,
        betti_target: basism.betti,
        rho_sum,
        delta_matrix,
        insertion_sum_equals_diagonal,
        phi: phi_report,
    })
}
