//! Finite abstract simplicial complexes with labelled vertices.
//!
//! A complex is stored by its maximal simplices; arbitrary vertex sets are
//! tested for membership on demand (a set is a simplex exactly when some
//! maximal simplex contains it). Vertices are ordered by their labels, and
//! complexes compare by label, never by construction order, which makes
//! isomorphism checks plain equality after relabelling.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::{Budget, Error, Result};

/// Vertex label. Anything ordered, hashable and printable qualifies.
pub trait Label: Clone + Ord + std::hash::Hash + std::fmt::Debug {}
impl<T: Clone + Ord + std::hash::Hash + std::fmt::Debug> Label for T {}

/// An abstract simplicial complex over labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex<V: Label> {
    vertices: Vec<V>,
    maximal: Vec<Vec<u32>>,
    vertex_maximal: Vec<Vec<u32>>,
}

impl<V: Label> Complex<V> {
    /// Builds a complex from (not necessarily maximal) simplices given by
    /// label sets. Duplicate labels inside a simplex collapse, duplicate and
    /// dominated simplices are dropped, and vertices are sorted by label.
    pub fn from_maximal(simplices: Vec<Vec<V>>) -> Result<Complex<V>> {
        let mut vertices: Vec<V> = simplices.iter().flatten().cloned().collect();
        vertices.sort();
        vertices.dedup();
        let index: HashMap<&V, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i as u32))
            .collect();

        let mut candidate: Vec<Vec<u32>> = Vec::with_capacity(simplices.len());
        for simplex in &simplices {
            if simplex.is_empty() {
                return Err(Error::EmptyInput);
            }
            let mut ids: Vec<u32> = simplex.iter().map(|v| index[v]).collect();
            ids.sort_unstable();
            ids.dedup();
            candidate.push(ids);
        }
        candidate.sort();
        candidate.dedup();
        // larger simplices first, so a simplex is dominated only by one
        // already kept
        candidate.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for simplex in candidate {
            let dominated = maximal
                .iter()
                .take_while(|kept| kept.len() > simplex.len())
                .any(|kept| is_subset(&simplex, kept));
            if !dominated {
                maximal.push(simplex);
            }
        }
        maximal.sort();

        let mut vertex_maximal: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
        for (s, simplex) in maximal.iter().enumerate() {
            for &v in simplex {
                vertex_maximal[v as usize].push(s as u32);
            }
        }
        Ok(Complex {
            vertices,
            maximal,
            vertex_maximal,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn label(&self, index: u32) -> &V {
        &self.vertices[index as usize]
    }

    pub fn index_of(&self, label: &V) -> Option<u32> {
        self.vertices.binary_search(label).ok().map(|i| i as u32)
    }

    pub fn maximal_count(&self) -> usize {
        self.maximal.len()
    }

    /// Maximal simplices as sorted vertex-index lists, in lexicographic
    /// order.
    pub fn maximal_simplices(&self) -> &[Vec<u32>] {
        &self.maximal
    }

    /// Maximal simplices as label sets.
    pub fn maximal_labels(&self) -> Vec<Vec<V>> {
        self.maximal
            .iter()
            .map(|s| s.iter().map(|&v| self.label(v).clone()).collect())
            .collect()
    }

    /// Dimension (size of the largest simplex minus one); `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(|s| s.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.maximal.iter().map(Vec::len).all_equal()
    }

    /// Membership test on vertex indices; the set may be unsorted.
    pub fn is_simplex_indices(&self, simplex: &[u32]) -> bool {
        let mut ids = simplex.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if ids.is_empty() || ids.last().copied().unwrap() as usize >= self.vertices.len() {
            return false;
        }
        // a set is a simplex iff the maximal simplices containing every
        // member intersect
        let mut live: Vec<u32> = self.vertex_maximal[ids[0] as usize].clone();
        for &v in &ids[1..] {
            let other = &self.vertex_maximal[v as usize];
            live.retain(|m| other.binary_search(m).is_ok());
            if live.is_empty() {
                return false;
            }
        }
        true
    }

    /// Membership test on labels. Unknown labels are never simplices.
    pub fn is_simplex(&self, labels: &[V]) -> bool {
        let mut ids = Vec::with_capacity(labels.len());
        for label in labels {
            match self.index_of(label) {
                Some(i) => ids.push(i),
                None => return false,
            }
        }
        self.is_simplex_indices(&ids)
    }

    /// All faces grouped by dimension, each level sorted lexicographically.
    /// `max_dim` caps the census; the budget is charged per generated face.
    pub fn faces_by_dim(
        &self,
        max_dim: Option<usize>,
        mut budget: Option<&mut Budget>,
    ) -> Result<Vec<Vec<Vec<u32>>>> {
        let Some(dim) = self.dim() else {
            return Ok(Vec::new());
        };
        let cap = max_dim.map_or(dim, |d| d.min(dim));
        let mut seen: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); cap + 1];
        for simplex in &self.maximal {
            for size in 1..=simplex.len().min(cap + 1) {
                for face in simplex.iter().copied().combinations(size) {
                    if seen[size - 1].insert(face) {
                        if let Some(budget) = budget.as_deref_mut() {
                            budget.charge(1)?;
                        }
                    }
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|level| level.into_iter().sorted().collect())
            .collect())
    }

    /// Alternating sum of face counts over all dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        let faces = self.faces_by_dim(None, None).expect("uncapped census");
        faces
            .iter()
            .enumerate()
            .map(|(d, level)| {
                let count = level.len() as i64;
                if d % 2 == 0 {
                    count
                } else {
                    -count
                }
            })
            .sum()
    }

    /// The subcomplex of faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Complex<V> {
        let mut simplices: Vec<Vec<V>> = Vec::new();
        for simplex in &self.maximal {
            if simplex.len() <= k + 1 {
                simplices.push(simplex.iter().map(|&v| self.label(v).clone()).collect());
            } else {
                for face in simplex.iter().copied().combinations(k + 1) {
                    simplices.push(face.iter().map(|&v| self.label(v).clone()).collect());
                }
            }
        }
        Complex::from_maximal(simplices).expect("skeleton of a valid complex")
    }
}

fn is_subset(smaller: &[u32], larger: &[u32]) -> bool {
    smaller.iter().all(|v| larger.binary_search(v).is_ok())
}

/// A covering of a space by labelled pieces, known only through an oracle
/// deciding which finite subfamilies have a common point. The oracle must be
/// monotone (subfamilies of an intersecting family intersect) and true on
/// singletons.
pub trait Covering {
    type Label: Label;

    fn labels(&self) -> Vec<Self::Label>;

    /// Whether the pieces at these indices have a common point.
    fn has_common_point(&self, members: &[usize]) -> bool;
}

/// Explicit covering by finite point sets, mostly for tests and small
/// examples.
#[derive(Debug, Clone)]
pub struct SetCovering<V: Label> {
    pub pieces: Vec<(V, std::collections::BTreeSet<u64>)>,
}

impl<V: Label> Covering for SetCovering<V> {
    type Label = V;

    fn labels(&self) -> Vec<V> {
        self.pieces.iter().map(|(l, _)| l.clone()).collect()
    }

    fn has_common_point(&self, members: &[usize]) -> bool {
        let Some((&first, rest)) = members.split_first() else {
            return true;
        };
        self.pieces[first]
            .1
            .iter()
            .any(|p| rest.iter().all(|&i| self.pieces[i].1.contains(p)))
    }
}

/// The nerve of a covering: simplices are exactly the label sets whose
/// members share a common point.
pub fn nerve_of_covering<C: Covering>(covering: &C) -> Complex<C::Label> {
    let labels = covering.labels();
    let k = labels.len();
    let mut levels: Vec<Vec<usize>> = (0..k)
        .filter(|&i| covering.has_common_point(&[i]))
        .map(|i| vec![i])
        .collect();
    let mut all: HashSet<Vec<usize>> = levels.iter().cloned().collect();
    while !levels.is_empty() {
        let mut next = Vec::new();
        for simplex in &levels {
            let last = *simplex.last().unwrap();
            for j in last + 1..k {
                let mut extended = simplex.clone();
                extended.push(j);
                if covering.has_common_point(&extended) {
                    all.insert(extended.clone());
                    next.push(extended);
                }
            }
        }
        levels = next;
    }
    let maximal: Vec<Vec<C::Label>> = all
        .iter()
        .filter(|simplex| {
            (0..k).all(|j| {
                if simplex.contains(&j) {
                    return true;
                }
                let mut extended: Vec<usize> = simplex.to_vec();
                extended.push(j);
                extended.sort_unstable();
                !all.contains(&extended)
            })
        })
        .map(|simplex| simplex.iter().map(|&i| labels[i].clone()).collect())
        .collect();
    Complex::from_maximal(maximal).expect("nerve simplices are nonempty")
}

/// The dual of a pure complex: the nerve of the covering of `K` by its
/// maximal simplices. Vertices of the dual are labelled by the maximal
/// simplices they come from.
pub fn dual_complex<V: Label>(complex: &Complex<V>) -> Result<Complex<Vec<V>>> {
    if !complex.is_pure() {
        let sizes: Vec<usize> = complex.maximal_simplices().iter().map(Vec::len).collect();
        return Err(Error::NonPureComplex {
            smallest: *sizes.iter().min().unwrap(),
            largest: *sizes.iter().max().unwrap(),
        });
    }
    let labels = complex.maximal_labels();
    let mut simplices: Vec<Vec<Vec<V>>> = Vec::with_capacity(complex.vertex_count());
    for shared in &complex.vertex_maximal {
        simplices.push(shared.iter().map(|&m| labels[m as usize].clone()).collect());
    }
    Complex::from_maximal(simplices)
}

/// Barycentric subdivision: one vertex per simplex of `K`, one simplex per
/// chain of simplices ordered by inclusion.
pub fn barycentric_subdivision<V: Label>(complex: &Complex<V>) -> Complex<Vec<V>> {
    let mut chains: Vec<Vec<Vec<V>>> = Vec::new();
    for simplex in complex.maximal_simplices() {
        let labels: Vec<V> = simplex.iter().map(|&v| complex.label(v).clone()).collect();
        for order in labels.iter().permutations(labels.len()) {
            let chain: Vec<Vec<V>> = (1..=order.len())
                .map(|len| {
                    let mut prefix: Vec<V> = order[..len].iter().map(|v| (*v).clone()).collect();
                    prefix.sort();
                    prefix
                })
                .collect();
            chains.push(chain);
        }
    }
    Complex::from_maximal(chains).expect("chains are nonempty")
}

/// A vertex map carrying simplices to simplices.
#[derive(Debug, Clone)]
pub struct SimplicialMap<V: Label, W: Label> {
    source: Complex<V>,
    target: Complex<W>,
    vertex_map: Vec<u32>,
}

impl<V: Label, W: Label> SimplicialMap<V, W> {
    /// Validates that `map` sends every maximal simplex of `source` into a
    /// simplex of `target`.
    pub fn new(
        source: Complex<V>,
        target: Complex<W>,
        map: impl Fn(&V) -> W,
    ) -> Result<SimplicialMap<V, W>> {
        let mut vertex_map = Vec::with_capacity(source.vertex_count());
        for label in source.vertices() {
            let image = map(label);
            let index = target.index_of(&image).ok_or(Error::NotSimplicial)?;
            vertex_map.push(index);
        }
        for simplex in source.maximal_simplices() {
            let image: Vec<u32> = simplex.iter().map(|&v| vertex_map[v as usize]).collect();
            if !target.is_simplex_indices(&image) {
                return Err(Error::NotSimplicial);
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn source(&self) -> &Complex<V> {
        &self.source
    }

    pub fn target(&self) -> &Complex<W> {
        &self.target
    }

    pub fn apply(&self, vertex: u32) -> u32 {
        self.vertex_map[vertex as usize]
    }

    pub fn apply_label(&self, label: &V) -> Option<&W> {
        let v = self.source.index_of(label)?;
        Some(self.target.label(self.vertex_map[v as usize]))
    }

    /// Composition `g ∘ self`; the target of `self` must equal the source of
    /// `g` as a labelled complex.
    pub fn then<X: Label>(&self, g: &SimplicialMap<W, X>) -> Result<SimplicialMap<V, X>> {
        if self.target != g.source {
            return Err(Error::ShapeMismatch);
        }
        let vertex_map = self
            .vertex_map
            .iter()
            .map(|&w| g.vertex_map[w as usize])
            .collect();
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: g.target.clone(),
            vertex_map,
        })
    }

    /// The induced map between barycentric subdivisions, sending the vertex
    /// at a simplex to the vertex at its image simplex.
    pub fn subdivide(&self) -> SimplicialMap<Vec<V>, Vec<W>> {
        self.subdivide_impl()
    }
}

impl<V: Label> SimplicialMap<V, V> {
    pub fn identity(complex: Complex<V>) -> SimplicialMap<V, V> {
        SimplicialMap::new(complex.clone(), complex, |v| v.clone()).expect("identity map")
    }
}

impl<V: Label, W: Label> SimplicialMap<V, W> {
    fn subdivide_impl(&self) -> SimplicialMap<Vec<V>, Vec<W>> {
        let source = barycentric_subdivision(&self.source);
        let target = barycentric_subdivision(&self.target);
        SimplicialMap::new(source, target, |simplex: &Vec<V>| {
            let mut image: Vec<W> = simplex
                .iter()
                .map(|v| {
                    let idx = self.source.index_of(v).expect("vertex of the source");
                    self.target.label(self.vertex_map[idx as usize]).clone()
                })
                .collect();
            image.sort();
            image.dedup();
            image
        })
        .expect("subdivision of a simplicial map is simplicial")
    }
}
