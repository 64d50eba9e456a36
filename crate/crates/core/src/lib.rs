//! Exact computational toolkit for real central hyperplane arrangements.
//!
//! Everything here is computed over the rationals — chamber realizability is a
//! strict-inequality question, so there is no floating point anywhere in the
//! crate. The main layers are:
//!
//! * [`arrangement`] — arrangements given by rational normal vectors, chamber
//!   enumeration via a Fourier–Motzkin feasibility oracle, ranks, circuits and
//!   the decomposition into indecomposable parts.
//! * [`social`] — chamber-valued aggregation maps: IIA/Pareto checks,
//!   exhaustive enumeration of admissible maps, projection (dictator)
//!   detection and the metric space of IIA bijections.
//! * [`simplicial`] — finite abstract simplicial complexes with labelled
//!   vertices, nerves of coverings, duals, barycentric subdivision and
//!   simplicial maps.
//! * [`chamber_complexes`] — the two complexes attached to an arrangement and
//!   a population size `m`: the profile complex on `Ch(A)^m` and the nerve of
//!   the half-space covering, together with the maps induced by aggregation.
//! * [`homology`] — integral simplicial homology via Smith normal forms,
//!   induced maps on homology, degrees, and the sum identity used to exhibit
//!   a dictator slot.
//!
//! The toolkit is sized for desk-scale verification (a dozen hyperplanes,
//! ambient dimension up to about eight); searches that are exponential by
//! nature take an explicit [`Budget`] and fail loudly instead of truncating.

pub mod arrangement;
pub mod chamber_complexes;
pub mod feasibility;
pub mod homology;
pub mod rational;
pub mod simplicial;
pub mod snf;
pub mod social;

pub use arrangement::{Arrangement, Chamber, ChamberSet, DecompositionReport, Sign, SignVector};

/// Errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("hyperplane {index} has a zero normal vector")]
    ZeroNormal { index: usize },
    #[error("hyperplanes {first} and {second} are proportional")]
    DuplicateHyperplane { first: usize, second: usize },
    #[error("vector {index} has length {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("an arrangement needs at least one hyperplane")]
    EmptyArrangement,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation needs arity {expected}, map has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands belong to different arrangements")]
    ArrangementMismatch,
    #[error("operands have different shapes")]
    ShapeMismatch,
    #[error("input collection is empty")]
    EmptyInput,
    #[error("budget exceeded: needed more than {limit} {unit}")]
    BudgetExceeded { limit: u64, unit: &'static str },
    #[error("maximal simplices have unequal sizes ({smallest} vs {largest})")]
    NonPureComplex { smallest: usize, largest: usize },
    #[error("vertex map does not carry simplices to simplices")]
    NotSimplicial,
    #[error("map does not satisfy IIA")]
    NotIIA,
    #[error("homology group has rank {betti}, expected an infinite cyclic group")]
    NotSphereLike { betti: usize },
    #[error("arrangement has rank {rank}, need at least 2")]
    RankTooLow { rank: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Counter for exponential searches. Charged per elementary probe
/// (candidate-profile check, face generated, …); exceeding the limit aborts
/// the search with [`Error::BudgetExceeded`].
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
    unit: &'static str,
}

impl Budget {
    /// Default limit for admissible-map searches, in candidate-profile checks.
    pub const DEFAULT_CANDIDATES: u64 = 100_000_000;
    /// Default limit for face enumeration, in simplices.
    pub const DEFAULT_SIMPLICES: u64 = 1_000_000;

    pub fn new(limit: u64, unit: &'static str) -> Self {
        Budget {
            limit,
            used: 0,
            unit,
        }
    }

    pub fn candidates(limit: u64) -> Self {
        Budget::new(limit, "candidate-profile checks")
    }

    pub fn simplices(limit: u64) -> Self {
        Budget::new(limit, "simplices")
    }

    pub fn default_candidates() -> Self {
        Budget::candidates(Self::DEFAULT_CANDIDATES)
    }

    pub fn default_simplices() -> Self {
        Budget::simplices(Self::DEFAULT_SIMPLICES)
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::BudgetExceeded {
                limit: self.limit,
                unit: self.unit,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}
