//! Deterministic machine-readable reports. Field order follows struct
//! order, collections are pre-sorted by the library, and the timing field is
//! the only nondeterministic piece — it is dropped under `--no-timing`.

use serde::Serialize;

use chambers::snf::IntMat;
use chambers::{Arrangement, Budget};

#[derive(Serialize)]
pub struct Report<P: Serialize> {
    pub command: String,
    pub arrangement: ArrangementSummary,
    pub payload: P,
    pub budget: BudgetReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct ArrangementSummary {
    pub n: usize,
    pub dim: usize,
    pub rank: usize,
    pub indecomposable: bool,
    pub parts: Vec<Vec<usize>>,
}

impl ArrangementSummary {
    pub fn new(arrangement: &Arrangement) -> Self {
        let decomposition = arrangement.decompose();
        ArrangementSummary {
            n: arrangement.len(),
            dim: arrangement.dim(),
            rank: decomposition.total_rank,
            indecomposable: decomposition.is_indecomposable(),
            parts: decomposition.parts,
        }
    }
}

#[derive(Serialize)]
pub struct BudgetReport {
    pub candidates: Counter,
    pub simplices: Counter,
}

#[derive(Serialize)]
pub struct Counter {
    pub used: u64,
    pub limit: u64,
}

impl Counter {
    pub fn of(budget: &Budget) -> Counter {
        Counter {
            used: budget.used(),
            limit: budget.limit(),
        }
    }
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: ErrorBody,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

/// Integer matrix as decimal strings, row major.
pub fn matrix_rows(matrix: &IntMat) -> Vec<Vec<String>> {
    (0..matrix.rows())
        .map(|i| (0..matrix.cols()).map(|j| matrix.get(i, j).to_string()).collect())
        .collect()
}

// ---- per-command payloads ----

#[derive(Serialize)]
pub struct ChamberEntry {
    pub signs: String,
    pub witness: Vec<String>,
}

#[derive(Serialize)]
pub struct ChambersPayload {
    pub count: usize,
    pub chambers: Vec<ChamberEntry>,
}

#[derive(Serialize)]
pub struct DecomposePayload {
    pub parts: Vec<Vec<usize>>,
    pub part_ranks: Vec<usize>,
    pub total_rank: usize,
    pub indecomposable: bool,
}

#[derive(Serialize)]
pub struct CircuitsPayload {
    pub count: usize,
    pub circuits: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct ComplexPayload {
    pub complex: String,
    pub m: usize,
    pub vertices: usize,
    pub maximal_simplices: usize,
    pub dimension: Option<usize>,
    pub f_vector: Vec<usize>,
}

#[derive(Serialize)]
pub struct HomologyPayload {
    pub complex: String,
    pub m: usize,
    pub max_dim: usize,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct DualCheckPayload {
    pub m: usize,
    pub holds: bool,
    pub profile_pairs: usize,
}

/// A per-hyperplane family, one output string per hyperplane over the sign
/// tuples in rank order.
#[derive(Serialize)]
pub struct FamilyDump {
    pub tables: Vec<String>,
}

#[derive(Serialize)]
pub struct VerifyArrowPayload {
    pub m: usize,
    pub admissible: usize,
    pub projections: usize,
    pub all_projections: bool,
    pub theorem_hypothesis_met: bool,
    pub projection_slots: Vec<usize>,
    pub non_projections: Vec<FamilyDump>,
}

#[derive(Serialize)]
pub struct IiaMetricPayload {
    pub bijections: usize,
    pub flips: Vec<String>,
    pub min_distance_from_id: Option<usize>,
    pub metric_axioms_exhaustive: bool,
    pub hamming_axioms_hold: bool,
    pub chamber_axioms_hold: bool,
    pub separation_hypothesis_met: bool,
    pub distance_fact_holds: bool,
}

#[derive(Serialize)]
pub struct PhiReportEntry {
    pub family: FamilyDump,
    pub projection_slot: Option<usize>,
    pub per_slot: Vec<Vec<Vec<String>>>,
    pub sum: Vec<Vec<String>>,
    pub equals_identity: bool,
}

#[derive(Serialize)]
pub struct SumIdentityPayload {
    pub m: usize,
    pub base_chamber: String,
    pub degree: usize,
    pub rho_sum: Vec<Vec<String>>,
    pub delta: Vec<Vec<String>>,
    pub insertion_sum_equals_diagonal: bool,
    pub admissible_checked: usize,
    pub phi_reports: Vec<PhiReportEntry>,
    pub all_identities_hold: bool,
}
