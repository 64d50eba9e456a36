//! One function per subcommand. Each returns its payload plus a verdict:
//! `true` maps to exit code 0 (verified), `false` to 1 (falsified).

use chambers::arrangement::{ChamberSet, SignVector};
use chambers::chamber_complexes::{build_b, build_m, verify_duality};
use chambers::homology::{homology_groups, verify_sum_identity};
use chambers::simplicial::Label;
use chambers::social::{
    chamber_distance, classify_projection, enumerate_admissible, hamming_distance,
    iia_bijections, AdmissibleMap, PerHyperplaneFamily,
};
use chambers::{Budget, Result};

use crate::report::*;

pub struct Budgets {
    pub candidates: Budget,
    pub simplices: Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ComplexKind {
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "B", alias = "b")]
    B,
}

impl ComplexKind {
    fn name(self) -> &'static str {
        match self {
            ComplexKind::M => "M",
            ComplexKind::B => "B",
        }
    }
}

pub fn chambers_cmd(chambers: &ChamberSet) -> (ChambersPayload, bool) {
    let entries = chambers
        .iter()
        .map(|c| ChamberEntry {
            signs: c.signs().to_string(),
            witness: c.witness().iter().map(|x| x.to_string()).collect(),
        })
        .collect::<Vec<_>>();
    (
        ChambersPayload {
            count: entries.len(),
            chambers: entries,
        },
        true,
    )
}

pub fn decompose_cmd(chambers: &ChamberSet) -> (DecomposePayload, bool) {
    let report = chambers.arrangement().decompose();
    (
        DecomposePayload {
            indecomposable: report.is_indecomposable(),
            parts: report.parts,
            part_ranks: report.part_ranks,
            total_rank: report.total_rank,
        },
        true,
    )
}

pub fn circuits_cmd(chambers: &ChamberSet) -> (CircuitsPayload, bool) {
    let circuits = chambers.arrangement().circuits();
    (
        CircuitsPayload {
            count: circuits.len(),
            circuits,
        },
        true,
    )
}

fn f_vector<V: Label>(
    complex: &chambers::simplicial::Complex<V>,
    budget: &mut Budget,
) -> Result<Vec<usize>> {
    Ok(complex
        .faces_by_dim(None, Some(budget))?
        .iter()
        .map(Vec::len)
        .collect())
}

pub fn complex_cmd(
    chambers: &ChamberSet,
    kind: ComplexKind,
    m: usize,
    budgets: &mut Budgets,
) -> Result<(ComplexPayload, bool)> {
    let (vertices, maximal, dimension, f_vec) = match kind {
        ComplexKind::M => {
            let k = build_m(chambers, m, &mut budgets.simplices)?;
            (
                k.vertex_count(),
                k.maximal_count(),
                k.dim(),
                f_vector(&k, &mut budgets.simplices)?,
            )
        }
        ComplexKind::B => {
            let k = build_b(chambers, m, &mut budgets.simplices)?;
            (
                k.vertex_count(),
                k.maximal_count(),
                k.dim(),
                f_vector(&k, &mut budgets.simplices)?,
            )
        }
    };
    Ok((
        ComplexPayload {
            complex: kind.name().to_string(),
            m,
            vertices,
            maximal_simplices: maximal,
            dimension,
            f_vector: f_vec,
        },
        true,
    ))
}

pub fn homology_cmd(
    chambers: &ChamberSet,
    kind: ComplexKind,
    m: usize,
    max_dim: Option<usize>,
    budgets: &mut Budgets,
) -> Result<(HomologyPayload, bool)> {
    let groups = match kind {
        ComplexKind::M => {
            let k = build_m(chambers, m, &mut budgets.simplices)?;
            let top = max_dim.or(k.dim()).unwrap_or(0);
            homology_groups(&k, top, false, &mut budgets.simplices)?
        }
        ComplexKind::B => {
            let k = build_b(chambers, m, &mut budgets.simplices)?;
            let top = max_dim.or(k.dim()).unwrap_or(0);
            homology_groups(&k, top, false, &mut budgets.simplices)?
        }
    };
    Ok((
        HomologyPayload {
            complex: kind.name().to_string(),
            m,
            max_dim: groups.len().saturating_sub(1),
            betti: groups.iter().map(|g| g.betti).collect(),
            torsion: groups
                .iter()
                .map(|g| g.torsion.iter().map(|t| t.to_string()).collect())
                .collect(),
        },
        true,
    ))
}

pub fn dual_check_cmd(
    chambers: &ChamberSet,
    m: usize,
    budgets: &mut Budgets,
) -> Result<(DualCheckPayload, bool)> {
    let report = verify_duality(chambers, m, &mut budgets.simplices)?;
    Ok((
        DualCheckPayload {
            m,
            holds: report.holds,
            profile_pairs: report.pairs.len(),
        },
        report.holds,
    ))
}

fn family_dump(family: &PerHyperplaneFamily) -> FamilyDump {
    let tables = family
        .tables()
        .iter()
        .map(|table| table.iter().map(|out| out[0].as_char()).collect())
        .collect();
    FamilyDump { tables }
}

pub fn verify_arrow_cmd(
    chambers: &ChamberSet,
    m: usize,
    budgets: &mut Budgets,
) -> Result<(VerifyArrowPayload, bool)> {
    let found = enumerate_admissible(chambers, m, &mut budgets.candidates)?;
    let mut projection_slots = Vec::new();
    let mut non_projections = Vec::new();
    for AdmissibleMap { family, map } in &found {
        match classify_projection(map)? {
            Some(slot) => projection_slots.push(slot),
            None => non_projections.push(family_dump(family)),
        }
    }
    projection_slots.sort_unstable();
    let arrangement = chambers.arrangement();
    let all_projections = non_projections.is_empty();
    Ok((
        VerifyArrowPayload {
            m,
            admissible: found.len(),
            projections: projection_slots.len(),
            all_projections,
            theorem_hypothesis_met: arrangement.len() >= 3
                && arrangement.decompose().is_indecomposable(),
            projection_slots,
            non_projections,
        },
        all_projections,
    ))
}

pub fn iia_metric_cmd(chambers: &ChamberSet) -> (IiaMetricPayload, bool) {
    let bijections = iia_bijections(chambers);
    let flips: Vec<String> = bijections
        .iter()
        .map(|b| b.flips().iter().map(|&f| if f { '1' } else { '0' }).collect())
        .collect();
    let min_distance = chambers::social::min_distance_from_id(chambers);

    // metric axioms, exhaustively at desk scale
    let exhaustive = bijections.len() <= 64 && chambers.len() <= 40;
    let bij_slice = &bijections[..bijections.len().min(64)];
    let mut hamming_ok = true;
    for a in bij_slice {
        for b in bij_slice {
            let d_ab = hamming_distance(a, b).unwrap();
            hamming_ok &= (d_ab == 0) == (a == b);
            hamming_ok &= d_ab == hamming_distance(b, a).unwrap();
            for c in bij_slice {
                hamming_ok &=
                    hamming_distance(a, c).unwrap() <= d_ab + hamming_distance(b, c).unwrap();
            }
        }
    }
    let limit = chambers.len().min(40);
    let mut chamber_ok = true;
    for a in 0..limit {
        for b in 0..limit {
            let d_ab = chamber_distance(chambers.get(a), chambers.get(b)).unwrap();
            chamber_ok &= (d_ab == 0) == (a == b);
            chamber_ok &= d_ab == chamber_distance(chambers.get(b), chambers.get(a)).unwrap();
            for c in 0..limit {
                chamber_ok &= chamber_distance(chambers.get(a), chambers.get(c)).unwrap()
                    <= d_ab + chamber_distance(chambers.get(b), chambers.get(c)).unwrap();
            }
        }
    }

    // the distance bound needs every indecomposable part to be non-singleton
    let decomposition = chambers.arrangement().decompose();
    let hypothesis = chambers.arrangement().len() >= 3
        && decomposition.parts.iter().all(|p| p.len() >= 2);
    let fact_holds = !hypothesis || min_distance.is_none_or(|d| d >= 2);
    let verdict = hamming_ok && chamber_ok && fact_holds;
    (
        IiaMetricPayload {
            bijections: bijections.len(),
            flips,
            min_distance_from_id: min_distance,
            metric_axioms_exhaustive: exhaustive,
            hamming_axioms_hold: hamming_ok,
            chamber_axioms_hold: chamber_ok,
            separation_hypothesis_met: hypothesis,
            distance_fact_holds: fact_holds,
        },
        verdict,
    )
}

pub fn sum_identity_cmd(
    chambers: &ChamberSet,
    m: usize,
    base_chamber: usize,
    budgets: &mut Budgets,
) -> Result<(SumIdentityPayload, bool)> {
    let insertion =
        verify_sum_identity(chambers, m, base_chamber, None, &mut budgets.simplices)?;
    let admissible = enumerate_admissible(chambers, m, &mut budgets.candidates)?;
    let mut phi_reports = Vec::with_capacity(admissible.len());
    let mut all_hold = insertion.insertion_sum_equals_diagonal;
    for AdmissibleMap { family, map } in &admissible {
        let checked =
            verify_sum_identity(chambers, m, base_chamber, Some(map), &mut budgets.simplices)?;
        let phi = checked.phi.expect("phi report present when a map is supplied");
        all_hold &= phi.equals_identity;
        phi_reports.push(PhiReportEntry {
            family: family_dump(family),
            projection_slot: classify_projection(map)?,
            per_slot: phi
                .per_slot
                .iter()
                .map(|slot| matrix_rows(&slot.matrix))
                .collect(),
            sum: matrix_rows(&phi.sum),
            equals_identity: phi.equals_identity,
        });
    }
    Ok((
        SumIdentityPayload {
            m,
            base_chamber: chambers.get(base_chamber).signs().to_string(),
            degree: insertion.degree,
            rho_sum: matrix_rows(&insertion.rho_sum),
            delta: matrix_rows(&insertion.delta_matrix),
            insertion_sum_equals_diagonal: insertion.insertion_sum_equals_diagonal,
            admissible_checked: admissible.len(),
            phi_reports,
            all_identities_hold: all_hold,
        },
        all_hold,
    ))
}

/// Resolves `--base-chamber` to a chamber index; defaults to the first
/// chamber in lexicographic order.
pub fn resolve_base_chamber(
    chambers: &ChamberSet,
    flag: Option<&str>,
) -> std::result::Result<usize, String> {
    match flag {
        None => Ok(0),
        Some(text) => {
            let signs = SignVector::parse(text)
                .ok_or_else(|| format!("{text:?} is not a sign string like \"+-+\""))?;
            if signs.len() != chambers.arrangement().len() {
                return Err(format!(
                    "sign string has length {}, arrangement has {} hyperplanes",
                    signs.len(),
                    chambers.arrangement().len()
                ));
            }
            chambers
                .index_of(&signs)
                .ok_or_else(|| format!("{text} is not a chamber of this arrangement"))
        }
    }
}
