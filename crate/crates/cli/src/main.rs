//! `chambers` — exact verification of chamber combinatorics, aggregation
//! maps, nerve complexes and integral homology for central hyperplane
//! arrangements.
//!
//! Every subcommand prints one JSON report on standard output and exits
//! with 0 when the checked property is verified, 1 when it is falsified
//! (the report then contains the counterexample), and 2 on errors,
//! including exhausted search budgets.

mod commands;
mod input;
mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use chambers::Budget;
use commands::{Budgets, ComplexKind};
use report::{ArrangementSummary, BudgetReport, Counter, ErrorBody, ErrorReport, Report};

#[derive(Parser)]
#[command(
    name = "chambers",
    version,
    about = "Exact chamber, aggregation and homology checks for central hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Arrangement: a JSON file, or a builtin like `braid-4` / `boolean-3`
    arrangement: String,
    /// Budget for admissible-map search, in candidate-profile checks
    #[arg(long, default_value_t = Budget::DEFAULT_CANDIDATES)]
    max_candidates: u64,
    /// Budget for face enumeration, in simplices
    #[arg(long, default_value_t = Budget::DEFAULT_SIMPLICES)]
    max_simplices: u64,
    /// Omit the timing field, making reports byte-identical across runs
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all chambers with exact witness points
    Chambers {
        #[command(flatten)]
        common: Common,
    },
    /// Split the arrangement into indecomposable parts
    Decompose {
        #[command(flatten)]
        common: Common,
    },
    /// List the minimal dependent sets of hyperplanes
    Circuits {
        #[command(flatten)]
        common: Common,
    },
    /// Build the profile complex (M) or side-product nerve (B)
    Complex {
        #[command(flatten)]
        common: Common,
        /// Which complex to build
        #[arg(long, value_enum)]
        complex: ComplexKind,
        /// Population size
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Betti numbers and torsion of the chosen complex
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        complex: ComplexKind,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Highest homology degree to report (defaults to the complex dimension)
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Check that the profile complex is the dual of the nerve
    DualCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Enumerate admissible maps and test that all are projections
    VerifyArrow {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// IIA bijections, their Hamming metric and the distance-from-id bound
    IiaMetric {
        #[command(flatten)]
        common: Common,
    },
    /// Check the insertion-sum homology identities in degree rank−1
    SumIdentity {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Base chamber as a sign string such as "+++" (default: first chamber)
        #[arg(long)]
        base_chamber: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Chambers { .. } => "chambers",
            Command::Decompose { .. } => "decompose",
            Command::Circuits { .. } => "circuits",
            Command::Complex { .. } => "complex",
            Command::Homology { .. } => "homology",
            Command::DualCheck { .. } => "dual-check",
            Command::VerifyArrow { .. } => "verify-arrow",
            Command::IiaMetric { .. } => "iia-metric",
            Command::SumIdentity { .. } => "sum-identity",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Chambers { common }
            | Command::Decompose { common }
            | Command::Circuits { common }
            | Command::Complex { common, .. }
            | Command::Homology { common, .. }
            | Command::DualCheck { common, .. }
            | Command::VerifyArrow { common, .. }
            | Command::IiaMetric { common }
            | Command::SumIdentity { common, .. } => common,
        }
    }
}

struct Failure {
    kind: String,
    message: String,
}

impl From<chambers::Error> for Failure {
    fn from(error: chambers::Error) -> Failure {
        let kind = match &error {
            chambers::Error::ZeroNormal { .. } => "ZeroNormal",
            chambers::Error::DuplicateHyperplane { .. } => "DuplicateHyperplane",
            chambers::Error::DimensionMismatch { .. } => "DimensionMismatch",
            chambers::Error::EmptyArrangement => "EmptyArrangement",
            chambers::Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            chambers::Error::ArityMismatch { .. } => "ArityMismatch",
            chambers::Error::ArrangementMismatch => "ArrangementMismatch",
            chambers::Error::ShapeMismatch => "ShapeMismatch",
            chambers::Error::EmptyInput => "EmptyInput",
            chambers::Error::BudgetExceeded { .. } => "BudgetExceeded",
            chambers::Error::NonPureComplex { .. } => "NonPureComplex",
            chambers::Error::NotSimplicial => "NotSimplicial",
            chambers::Error::NotIIA => "NotIIA",
            chambers::Error::NotSphereLike { .. } => "NotSphereLike",
            chambers::Error::RankTooLow { .. } => "RankTooLow",
        };
        Failure {
            kind: kind.to_string(),
            message: error.to_string(),
        }
    }
}

impl From<input::InputError> for Failure {
    fn from(error: input::InputError) -> Failure {
        let kind = match &error {
            input::InputError::Io { .. } => "Io",
            input::InputError::Parse { .. } => "ParseError",
            input::InputError::BadEntry { .. } => "ParseError",
            input::InputError::BadShorthand(_) => "UnknownArrangement",
            input::InputError::Core(core) => {
                return Failure {
                    message: error.to_string(),
                    ..Failure::from(core.clone())
                }
            }
        };
        Failure {
            kind: kind.to_string(),
            message: error.to_string(),
        }
    }
}

fn render<P: serde::Serialize>(
    command: &str,
    summary: ArrangementSummary,
    payload: P,
    budgets: &Budgets,
    timing_ms: Option<u128>,
) -> String {
    let report = Report {
        command: command.to_string(),
        arrangement: summary,
        payload,
        budget: BudgetReport {
            candidates: Counter::of(&budgets.candidates),
            simplices: Counter::of(&budgets.simplices),
        },
        timing_ms,
    };
    serde_json::to_string_pretty(&report).expect("reports serialize")
}

fn dispatch(command: &Command, started: Instant) -> Result<(String, bool), Failure> {
    let common = command.common();
    let arrangement = input::parse_arrangement(&common.arrangement)?;
    let summary = ArrangementSummary::new(&arrangement);
    let chambers = arrangement.chambers();
    let mut budgets = Budgets {
        candidates: Budget::candidates(common.max_candidates),
        simplices: Budget::simplices(common.max_simplices),
    };

    macro_rules! finish {
        ($payload:expr, $verified:expr) => {{
            let timing = (!common.no_timing).then(|| started.elapsed().as_millis());
            Ok((
                render(command.name(), summary, $payload, &budgets, timing),
                $verified,
            ))
        }};
    }

    match command {
        Command::Chambers { .. } => {
            let (payload, ok) = commands::chambers_cmd(&chambers);
            finish!(payload, ok)
        }
        Command::Decompose { .. } => {
            let (payload, ok) = commands::decompose_cmd(&chambers);
            finish!(payload, ok)
        }
        Command::Circuits { .. } => {
            let (payload, ok) = commands::circuits_cmd(&chambers);
            finish!(payload, ok)
        }
        Command::Complex { complex, m, .. } => {
            let (payload, ok) = commands::complex_cmd(&chambers, *complex, *m, &mut budgets)?;
            finish!(payload, ok)
        }
        Command::Homology {
            complex, m, max_dim, ..
        } => {
            let (payload, ok) =
                commands::homology_cmd(&chambers, *complex, *m, *max_dim, &mut budgets)?;
            finish!(payload, ok)
        }
        Command::DualCheck { m, .. } => {
            let (payload, ok) = commands::dual_check_cmd(&chambers, *m, &mut budgets)?;
            finish!(payload, ok)
        }
        Command::VerifyArrow { m, .. } => {
            let (payload, ok) = commands::verify_arrow_cmd(&chambers, *m, &mut budgets)?;
            finish!(payload, ok)
        }
        Command::IiaMetric { .. } => {
            let (payload, ok) = commands::iia_metric_cmd(&chambers);
            finish!(payload, ok)
        }
        Command::SumIdentity {
            m, base_chamber, ..
        } => {
            let base = commands::resolve_base_chamber(&chambers, base_chamber.as_deref())
                .map_err(|message| Failure {
                    kind: "BadBaseChamber".to_string(),
                    message,
                })?;
            let (payload, ok) =
                commands::sum_identity_cmd(&chambers, *m, base, &mut budgets)?;
            finish!(payload, ok)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match dispatch(&cli.command, started) {
        Ok((report, verified)) => {
            println!("{report}");
            if verified {
                0
            } else {
                1
            }
        }
        Err(failure) => {
            let report = ErrorReport {
                command: cli.command.name().to_string(),
                error: ErrorBody {
                    kind: failure.kind,
                    message: failure.message,
                },
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("error reports serialize")
            );
            2
        }
    };
    std::process::exit(code);
}
