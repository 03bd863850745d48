//! Command-line front end: construction, verification, proof traces,
//! classification, bound checks, plane structures, and benchmarks, with
//! stable JSON reports.
//!
//! Exit codes: 0 = trivial / success, 1 = verified nontrivial (or a proof
//! attempt that stayed inconclusive), 2 = invalid input set, 3 = I/O or
//! usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use oplm_core::prover::ProofVerdict;
use oplm_core::verifier::{hermitian_from_kernel_vector, kernel_basis};
use oplm_core::{
    build_system, build_theorem1_set, build_theorem2_set, classify_state, lower_bound,
    nullity_exact, nullity_float, nullity_modp, plane_structure, prove, Bipartition, CycNum, Dims,
    Error, ModeSpec, NullityReport, StateSet, Verdict, DEFAULT_FLOAT_TOL, DEFAULT_PRIMES,
};

const PRIMES_ENV: &str = "OPLM_PRIMES";

#[derive(Parser)]
#[command(
    name = "oplm",
    version,
    about = "Builds and rigorously verifies strongest-nonlocal orthogonal state sets in tripartite systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a minimum-cardinality set and emit its canonical JSON
    Gen {
        /// Local dimensions d1 d2 d3 (sorted, each at least 3)
        #[arg(long, num_args = 3, required = true)]
        dims: Vec<u32>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide triviality of every orthogonality-preserving element
    Verify {
        #[command(flatten)]
        input: SetInput,
        /// Bipartition to check: A-BC, B-CA, C-AB, or all
        #[arg(long, default_value = "all")]
        bipartition: CutArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Comma-separated primes for --mode modp (env OPLM_PRIMES)
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Relative singular-value tolerance for --mode float
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOL)]
        tol: f64,
        /// Include an exact kernel basis in the report (exact mode only)
        #[arg(long)]
        emit_kernel: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Replay the observation-style deduction argument as a trace
    Prove {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, default_value = "all")]
        bipartition: CutArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Exact Schmidt ranks and entanglement category of every state
    Classify {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Print the cardinality lower bound max_i {d1*d2*d3/d_i + 1}
    Bound {
        #[arg(long, num_args = 3, required = true)]
        dims: Vec<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Export the plane-structure grid of a set under one bipartition
    Plane {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, default_value = "A-BC")]
        bipartition: CutArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Time exact vs modular elimination across the symmetric constructions
    Bench {
        #[arg(long, default_value_t = 3)]
        d_min: u32,
        #[arg(long, default_value_t = 5)]
        d_max: u32,
        #[arg(long, default_value = "A-BC")]
        bipartition: CutArg,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetInput {
    /// Construct the set for these local dimensions
    #[arg(long, num_args = 3)]
    dims: Option<Vec<u32>>,
    /// Load a state-set JSON file instead
    #[arg(long)]
    set: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Modp,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Bipartition selector, accepting the hyphenated spellings or `all`.
#[derive(Clone, Copy)]
enum CutArg {
    One(Bipartition),
    All,
}

impl std::str::FromStr for CutArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(CutArg::All);
        }
        Bipartition::from_flag(s)
            .map(CutArg::One)
            .map_err(|e| e.to_string())
    }
}

impl CutArg {
    fn cuts(self) -> Vec<Bipartition> {
        match self {
            CutArg::One(b) => vec![b],
            CutArg::All => Bipartition::ALL.to_vec(),
        }
    }
}

/// Failure carrying its exit class.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NonOrthogonal(_, _)
            | Error::InvalidSet(_)
            | Error::DuplicateLabel(_)
            | Error::IndexOutOfBounds { .. }
            | Error::ZeroKet
            | Error::SlotCollision { .. }
            | Error::DimsMismatch(_)
            | Error::RulePrecondition(_) => 2,
            Error::UnsupportedDims(_) | Error::BadPrime(_) | Error::Parse(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 3,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe reader (e.g. `head`) closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dims_from_args(dims: &[u32]) -> Result<Dims, Failure> {
    let [d1, d2, d3] = dims else {
        return Err(Failure::usage("--dims takes exactly three values"));
    };
    Dims::new(*d1, *d2, *d3).map_err(Failure::from)
}

/// Build the construction for `dims`: the symmetric one when the dimensions
/// coincide, the general one otherwise.
fn construct(dims: Dims) -> Result<StateSet, Failure> {
    let (d1, d2, d3) = dims.as_tuple();
    let set = if d1 == d2 && d2 == d3 {
        build_theorem1_set(d1)?
    } else {
        build_theorem2_set(d1, d2, d3)?
    };
    Ok(set)
}

fn load_input(input: &SetInput) -> Result<StateSet, Failure> {
    match (&input.dims, &input.set) {
        (Some(dims), None) => construct(dims_from_args(dims)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(StateSet::from_json(&text)?)
        }
        _ => Err(Failure::usage("provide exactly one of --dims or --set")),
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in digest {
        let _ = write!(hex, "{b:02x}");
    }
    hex
}

fn primes_in_effect(flag: &Option<Vec<u64>>) -> Result<Vec<u64>, Failure> {
    if let Some(ps) = flag {
        return Ok(ps.clone());
    }
    if let Ok(env) = std::env::var(PRIMES_ENV) {
        let parsed: Result<Vec<u64>, _> = env.split(',').map(|s| s.trim().parse()).collect();
        return parsed.map_err(|e| Failure::usage(format!("bad {PRIMES_ENV} value {env:?}: {e}")));
    }
    Ok(DEFAULT_PRIMES.to_vec())
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct InputSummary {
    dims: [u32; 3],
    states: usize,
    stopper: Option<String>,
    digest: DigestInfo,
}

#[derive(Serialize)]
struct DigestInfo {
    algorithm: &'static str,
    hex: String,
}

fn input_summary(set: &StateSet) -> InputSummary {
    let dims = set.dims();
    InputSummary {
        dims: [dims.d1, dims.d2, dims.d3],
        states: set.len(),
        stopper: set.stopper_label().map(str::to_owned),
        digest: DigestInfo {
            algorithm: "sha256",
            hex: sha256_hex(set.to_canonical_json().as_bytes()),
        },
    }
}

#[derive(Serialize)]
struct CutReport {
    bipartition: String,
    #[serde(flatten)]
    report: NullityReport,
    elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<Vec<Vec<Vec<CycNum>>>>,
}

#[derive(Serialize)]
struct VerifyReport {
    command: String,
    tool_version: &'static str,
    input: InputSummary,
    reports: Vec<CutReport>,
    overall: Verdict,
    total_elapsed_ms: u64,
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Gen { dims, out } => {
            let dims = dims_from_args(&dims)?;
            let set = construct(dims)?;
            let json = set.to_canonical_json();
            let bound = lower_bound(dims);
            let summary = format!(
                "{} states in {}; {} lower bound {}",
                set.len(),
                dims,
                if set.len() as u64 == bound {
                    "meets"
                } else {
                    "misses"
                },
                bound
            );
            match out {
                Some(path) => {
                    std::fs::write(&path, json)?;
                    println!("wrote {}", path.display());
                    println!("{summary}");
                }
                None => {
                    print!("{json}");
                    eprintln!("{summary}");
                }
            }
            Ok(0)
        }

        Cmd::Verify {
            input,
            bipartition,
            mode,
            primes,
            tol,
            emit_kernel,
            format,
        } => {
            let set = load_input(&input)?;
            if emit_kernel && mode != ModeArg::Exact {
                return Err(Failure::usage("--emit-kernel requires --mode exact"));
            }
            let mode_spec = match mode {
                ModeArg::Exact => ModeSpec::Exact,
                ModeArg::Modp => ModeSpec::Modp(primes_in_effect(&primes)?),
                ModeArg::Float => ModeSpec::Float(tol),
            };
            let total = Instant::now();
            let mut reports = Vec::new();
            for b in bipartition.cuts() {
                let t = Instant::now();
                let cs = build_system(&set, b)?;
                let report = match &mode_spec {
                    ModeSpec::Exact => nullity_exact(&cs),
                    ModeSpec::Modp(ps) => nullity_modp(&cs, ps)?,
                    ModeSpec::Float(tol) => nullity_float(&cs, *tol),
                };
                let kernel = emit_kernel.then(|| {
                    kernel_basis(&cs)
                        .iter()
                        .map(|v| hermitian_from_kernel_vector(&cs, v))
                        .collect()
                });
                reports.push(CutReport {
                    bipartition: b.to_string(),
                    report,
                    elapsed_ms: t.elapsed().as_millis() as u64,
                    kernel,
                });
            }
            let overall = if reports.iter().all(|r| r.report.verdict == Verdict::Trivial) {
                Verdict::Trivial
            } else if reports
                .iter()
                .any(|r| r.report.verdict == Verdict::Nontrivial)
            {
                Verdict::Nontrivial
            } else {
                Verdict::Inconclusive
            };
            let doc = VerifyReport {
                command: command_echo(),
                tool_version: env!("CARGO_PKG_VERSION"),
                input: input_summary(&set),
                reports,
                overall,
                total_elapsed_ms: total.elapsed().as_millis() as u64,
            };
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
                FormatArg::Text => {
                    println!(
                        "set ({},{},{}) with {} states  digest sha256:{}",
                        doc.input.dims[0],
                        doc.input.dims[1],
                        doc.input.dims[2],
                        doc.input.states,
                        &doc.input.digest.hex[..16]
                    );
                    for r in &doc.reports {
                        let primes = r
                            .report
                            .primes_used
                            .as_ref()
                            .map(|ps| {
                                format!(
                                    "  primes {}",
                                    ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                                )
                            })
                            .unwrap_or_default();
                        println!(
                            "{:5}  mode {:5}  nullity {:3}  identity_in_kernel {}  verdict {}{}  ({} ms)",
                            r.bipartition,
                            r.report.mode.to_string(),
                            r.report.nullity,
                            r.report.identity_in_kernel,
                            r.report.verdict,
                            primes,
                            r.elapsed_ms
                        );
                        if let Some(kernel) = &r.kernel {
                            println!("  kernel basis: {} Hermitian element(s)", kernel.len());
                        }
                    }
                    println!("overall: {overall}");
                }
            }
            Ok(match overall {
                Verdict::Trivial => 0,
                _ => 1,
            })
        }

        Cmd::Prove {
            input,
            bipartition,
            format,
        } => {
            let set = load_input(&input)?;
            let mut all_proven = true;
            let mut traces = Vec::new();
            for b in bipartition.cuts() {
                let trace = prove(&set, b)?;
                all_proven &= trace.verdict == ProofVerdict::TrivialProven;
                traces.push(trace);
            }
            match format {
                FormatArg::Json => {
                    println!("{}", serde_json::to_string_pretty(&traces).unwrap());
                }
                FormatArg::Text => {
                    for trace in &traces {
                        print!("{}", trace.render_text());
                    }
                }
            }
            Ok(if all_proven { 0 } else { 1 })
        }

        Cmd::Classify { input, format } => {
            let set = load_input(&input)?;
            #[derive(Serialize)]
            struct Row {
                label: String,
                ranks: [usize; 3],
                category: oplm_core::StateCategory,
                stopper: bool,
            }
            let mut rows = Vec::new();
            for (label, ket) in set.iter() {
                let class = classify_state(ket)?;
                rows.push(Row {
                    label: label.to_owned(),
                    ranks: class.ranks,
                    category: class.category,
                    stopper: Some(label) == set.stopper_label(),
                });
            }
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                FormatArg::Text => {
                    println!(
                        "{:<8} {:>5} {:>5} {:>5}  category",
                        "label", "A|BC", "B|CA", "C|AB"
                    );
                    for r in &rows {
                        println!(
                            "{:<8} {:>5} {:>5} {:>5}  {}{}",
                            r.label,
                            r.ranks[0],
                            r.ranks[1],
                            r.ranks[2],
                            match r.category {
                                oplm_core::StateCategory::Product => "product",
                                oplm_core::StateCategory::Entangled => "entangled",
                                oplm_core::StateCategory::GenuinelyEntangled =>
                                    "genuinely_entangled",
                            },
                            if r.stopper { "  (stopper)" } else { "" }
                        );
                    }
                }
            }
            Ok(0)
        }

        Cmd::Bound { dims, format } => {
            let dims = dims_from_args(&dims)?;
            let bound = lower_bound(dims);
            match format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::json!({
                        "dims": [dims.d1, dims.d2, dims.d3],
                        "bound": bound,
                    })
                ),
                FormatArg::Text => println!("{bound}"),
            }
            Ok(0)
        }

        Cmd::Plane {
            input,
            bipartition,
            format,
        } => {
            let set = load_input(&input)?;
            for b in bipartition.cuts() {
                let plane = plane_structure(&set, b)?;
                match format {
                    FormatArg::Json => print!("{}", plane.to_json()),
                    FormatArg::Text => print!("{}", plane.ascii()),
                }
            }
            Ok(0)
        }

        Cmd::Bench {
            d_min,
            d_max,
            bipartition,
            primes,
            format,
        } => {
            if d_min < 3 || d_min > d_max {
                return Err(Failure::usage("need 3 <= d-min <= d-max"));
            }
            let primes = primes_in_effect(&primes)?;
            #[derive(Serialize)]
            struct BenchRow {
                d: u32,
                bipartition: String,
                unknowns: usize,
                rows: usize,
                exact_ms: u64,
                exact_nullity: usize,
                modp_ms: u64,
                modp_nullity: usize,
            }
            let mut out = Vec::new();
            for d in d_min..=d_max {
                let set = build_theorem1_set(d)?;
                for b in bipartition.cuts() {
                    let cs = build_system(&set, b)?;
                    let t = Instant::now();
                    let exact = nullity_exact(&cs);
                    let exact_ms = t.elapsed().as_millis() as u64;
                    let t = Instant::now();
                    let modp = nullity_modp(&cs, &primes)?;
                    let modp_ms = t.elapsed().as_millis() as u64;
                    out.push(BenchRow {
                        d,
                        bipartition: b.to_string(),
                        unknowns: cs.num_unknowns(),
                        rows: cs.num_rows(),
                        exact_ms,
                        exact_nullity: exact.nullity,
                        modp_ms,
                        modp_nullity: modp.nullity,
                    });
                }
            }
            match format {
                FormatArg::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                FormatArg::Text => {
                    println!(
                        "{:>3} {:>6} {:>9} {:>6} {:>9} {:>13} {:>8} {:>12}",
                        "d",
                        "cut",
                        "unknowns",
                        "rows",
                        "exact_ms",
                        "exact_nullity",
                        "modp_ms",
                        "modp_nullity"
                    );
                    for r in &out {
                        println!(
                            "{:>3} {:>6} {:>9} {:>6} {:>9} {:>13} {:>8} {:>12}",
                            r.d,
                            r.bipartition,
                            r.unknowns,
                            r.rows,
                            r.exact_ms,
                            r.exact_nullity,
                            r.modp_ms,
                            r.modp_nullity
                        );
                    }
                }
            }
            Ok(0)
        }
    }
}
