//! `s3ext` command-line tool.
//!
//! Exit codes: 0 success, 1 a check failed (structural classification
//! failure, nongeneric family member, failed relation or module check),
//! 2 bad input or configuration.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use config::RunConfig;
use s3ext::classification::{classify_extension, ClassifyParams};
use s3ext::deformation::{evaluate_loci, universal_deformation, verify_group_relations, SeriesRing, SpecializationPoint, Variant};
use s3ext::family::{parse_range, FamilyError, scan_family_range, ScanOptions};
use s3ext::poly::MonicCubic;
use s3ext::s3::{check_model, ModelCheck};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
const DEFAULT_N: u32 = 6;
const DEFAULT_D: u32 = 6;

#[derive(Parser)]
#[command(name = "s3ext", version, about = "Neat, generic and degenerate S3-extensions of Q")]
struct Cli {
    /// Output format (default text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    AsPrinted,
    TwoParameter,
}

#[derive(Subcommand)]
enum Command {
    /// Neatness and degeneracy of x^3 + c2 x^2 + c1 x + c0 at p.
    #[command(allow_negative_numbers = true)]
    Classify {
        c2: i64,
        c1: i64,
        c0: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_index: Option<u32>,
        /// p-adic working precision.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Scan the family x^3 + a x + 1 over a range of a, with a resumable ledger.
    Search {
        /// A:B, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        chunk_size: Option<usize>,
        /// Ledger file; defaults to family_A_B.ledger in $S3EXT_LEDGER_DIR or the working directory.
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Continue an existing ledger.
        #[arg(long)]
        resume: bool,
    },
    /// Verify the group relations of the universal deformation mod (p^N, deg > D).
    DeformVerify {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long = "D")]
        d: Option<u32>,
        #[arg(long, value_enum, default_value = "as-printed")]
        variant: VariantArg,
    },
    /// Evaluate the reducible, ordinary and dihedral loci at points of pZ_p^3.
    LociEval {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: Option<u32>,
        #[arg(long = "D")]
        d: Option<u32>,
        #[arg(long, default_value = "T3", allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "-3*T3", allow_hyphen_values = true)]
        g: String,
        /// Points t1,t2,t3 with rational coordinates, e.g. 0,25,0 or 5/2,5,-10.
        #[arg(required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Check the degenerate S3-module model for (p, j, i).
    S3modCheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        i: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Search { .. } => "search",
            Command::DeformVerify { .. } => "deform-verify",
            Command::LociEval { .. } => "loci-eval",
            Command::S3modCheck { .. } => "s3mod-check",
        }
    }
}

/// Outcome of one command: a report plus whether its checks passed.
struct Outcome {
    ok: bool,
    text: String,
    json: serde_json::Value,
}

impl Outcome {
    fn new<T: Serialize>(ok: bool, text: String, report: &T) -> Outcome {
        Outcome { ok, text, json: serde_json::to_value(report).expect("reports serialize") }
    }
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => return fail(name, cli.format.unwrap_or(Format::Text), &format!("config: {e}")),
        },
        None => RunConfig::default(),
    };
    let format = cli.format.unwrap_or(match cfg.format.as_deref() {
        Some("json") => Format::Json,
        _ => Format::Text,
    });
    match run(&cli.command, &cfg) {
        Ok(out) => {
            match format {
                Format::Text => emit(&out.text),
                Format::Json => {
                    let doc = json!({
                        "schema_version": REPORT_SCHEMA_VERSION,
                        "command": name,
                        "ok": out.ok,
                        "report": out.json,
                    });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()));
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => fail(name, format, &msg),
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn fail(name: &str, format: Format, msg: &str) -> ExitCode {
    match format {
        Format::Text => eprintln!("error: {msg}"),
        Format::Json => {
            let doc = json!({ "schema_version": REPORT_SCHEMA_VERSION, "command": name, "ok": false, "error": msg });
            emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()));
        }
    }
    ExitCode::from(2)
}

fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, InputError> {
    match cmd {
        Command::Classify { c2, c1, c0, p, max_index, precision } => {
            let mut params = ClassifyParams::default();
            if let Some(m) = max_index.or(cfg.max_index) {
                params.max_index = m;
            }
            params.precision = precision.or(cfg.precision);
            if let Some(h) = cfg.height_bound {
                params.unit_search.height_bound = h;
            }
            if let Some(c) = cfg.minkowski_ceiling {
                params.minkowski_ceiling = c;
            }
            if params.max_index == 0 || params.precision == Some(0) {
                return Err(InputError("max-index and precision must be positive".into()));
            }
            let report = classify_extension(&MonicCubic::new(*c2, *c1, *c0), *p, &params);
            Ok(Outcome::new(report.failure.is_none(), report.render_text(), &report))
        }
        Command::Search { range, workers, chunk_size, ledger, resume } => {
            let (lo, hi) = parse_range(range)?;
            let path = match ledger.clone().or_else(|| cfg.ledger.clone()) {
                Some(p) => p,
                None => {
                    let dir = std::env::var_os("S3EXT_LEDGER_DIR").map(PathBuf::from).unwrap_or_else(|| ".".into());
                    dir.join(format!("family_{lo}_{hi}.ledger"))
                }
            };
            let opts = ScanOptions {
                workers: workers.or(cfg.workers).unwrap_or(1),
                chunk_size: chunk_size.or(cfg.chunk_size).unwrap_or(ScanOptions::default().chunk_size),
                resume: *resume,
                max_new_records: None,
            };
            if opts.workers == 0 || opts.chunk_size == 0 {
                return Err(InputError("workers and chunk-size must be positive".into()));
            }
            let summary = scan_family_range(lo, hi, &path, &opts).map_err(|e| match e {
                FamilyError::LedgerExists(p) => InputError(format!("ledger already exists at {p}; pass --resume to continue it")),
                e => InputError(e.to_string()),
            })?;
            let text = format!("ledger: {}\n{}", path.display(), summary.render_text());
            Ok(Outcome::new(summary.nongeneric.is_empty(), text, &summary))
        }
        Command::DeformVerify { p, n, d, variant } => {
            let variant = match variant {
                VariantArg::AsPrinted => Variant::AsPrinted,
                VariantArg::TwoParameter => Variant::TwoParameter,
            };
            let n = n.or(cfg.precision).unwrap_or(DEFAULT_N);
            let d = d.or(cfg.degree).unwrap_or(DEFAULT_D);
            let images = universal_deformation(*p, n, d, variant)?;
            let report = verify_group_relations(&images);
            Ok(Outcome::new(report.all_hold(), report.render_text(), &report))
        }
        Command::LociEval { p, n, d, f, g, points } => {
            let ring = SeriesRing::new(*p, n.or(cfg.precision).unwrap_or(DEFAULT_N), d.or(cfg.degree).unwrap_or(DEFAULT_D))?;
            let (f, g) = (ring.parse(f)?, ring.parse(g)?);
            let mut reports = Vec::new();
            for pt in points {
                reports.push(evaluate_loci(&parse_point(pt, *p)?, &f, &g)?);
            }
            let text = reports.iter().map(|r| r.render_text()).collect::<Vec<_>>().join("\n");
            Ok(Outcome::new(true, text, &reports))
        }
        Command::S3modCheck { p, j, i } => {
            let check = check_model(*p, *j, *i)?;
            Ok(Outcome::new(check.passed, render_model_check(&check), &check))
        }
    }
}

fn parse_point(s: &str, p: u64) -> Result<SpecializationPoint, InputError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(InputError(format!("point {s:?} must have three comma-separated coordinates")));
    }
    let mut coords = Vec::new();
    for c in parts {
        coords.push(c.parse::<BigRational>().map_err(|_| InputError(format!("bad coordinate {c:?} in {s:?}")))?);
    }
    Ok(SpecializationPoint::new(coords.try_into().unwrap(), p)?)
}

fn cyclic(e: &[u32], p: u64) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter().map(|k| if *k == 1 { format!("Z/{p}") } else { format!("Z/{p}^{k}") }).collect::<Vec<_>>().join(" + ")
}

fn render_model_check(c: &ModelCheck) -> String {
    let mut s = format!("degenerate model p = {}, j = {}, i = {}\n", c.p, c.j, c.i);
    s.push_str(&format!("  P ≅ {}, local module ≅ {}\n", c.p_type, c.local_type));
    s.push_str(&format!("  equivariant: {}, exact: {}\n", c.equivariant, c.exact));
    for (name, e) in ["I1 ∩ I2", "I1 ∩ I3", "I2 ∩ I3"].iter().zip(&c.pairwise) {
        s.push_str(&format!("  {name} ≅ {}\n", cyclic(e, c.p)));
    }
    s.push_str(&format!("  I1 ∩ I2 ∩ I3 ≅ {}\n", cyclic(&c.triple, c.p)));
    s.push_str(&format!("  expected Z/p^{} throughout\n", c.expected_exponent));
    match &c.inertia {
        Some(v) => s.push_str(&format!(
            "  inertia: R ≅ {}, S ≅ {}, R + S = P: {}, direct: {}\n",
            v.r_type, v.s_type, v.spans_p, v.direct
        )),
        None => s.push_str("  inertia check skipped (needs i >= j)\n"),
    }
    s.push_str(if c.passed { "all checks pass\n" } else { "CHECKS FAIL\n" });
    s
}
