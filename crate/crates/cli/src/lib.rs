//! Command-line front end for `mutclass`.
//!
//! Every subcommand except `catalog` and `serve` reads a matrix document from
//! stdin or `--input` and writes one JSON value on stdout. Failures are reported
//! as a JSON error object on stdout with a nonzero exit status.

pub mod service;

use std::io::Read;

use clap::{Parser, Subcommand};
use mutclass::catalog::{self, Family, Label, Orientation};
use mutclass::classify::{
    decide_finite_type, explore_with, identify_dynkin_type, is_minimal_infinite_cached, verify_theorem, Budget,
    ExploreOptions, FiniteType, FiniteTypeCache, Verdict,
};
use mutclass::companion::{admissible_companions, Companion};
use mutclass::io::{self, IoError, MatrixDocument};
use mutclass::{Diagram, ExtendedMatrix, IntMatrix};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mutclass", version, about = "Mutation classes of skew-symmetrizable matrices")]
pub struct Cli {
    /// Read the matrix document from this file instead of stdin.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker threads for class exploration; 1 runs single-threaded.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate at one index or along a comma-separated sequence (1-based).
    Mutate {
        #[arg(long)]
        at: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Diagram of the matrix as JSON or DOT.
    Diagram {
        #[arg(long)]
        dot: bool,
    },
    /// Finite-type decision and Dynkin label.
    Classify,
    /// Explore the mutation class of the extended matrix.
    Enumerate {
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Do not expand members with a heavier edge.
        #[arg(long)]
        max_weight: Option<u64>,
    },
    /// Minimal-infinite test of the principal diagram.
    Minimal,
    /// Compare the finite-type decision with exploration of the principal extension.
    VerifyTheorem {
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Emit a catalog matrix document, e.g. `--family D --rank 4` or `--family B --rank 3 --affine`.
    Catalog {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        affine: bool,
        /// Comma-separated 0/1 flags; 1 reverses the corresponding listed edge.
        #[arg(long, value_delimiter = ',')]
        flip: Vec<u8>,
    },
    /// Find an admissible quasi-Cartan companion, or check the one given in the
    /// document's `companion` field.
    Companion,
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Session and job lifetime in seconds since last use.
        #[arg(long, default_value_t = 3600)]
        ttl: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn new(code: i32, kind: &str, message: impl Into<String>) -> Failure {
        Failure {
            code,
            body: json!({ "error": kind, "message": message.into() }),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure::new(EXIT_USAGE, "usage", message)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            body: e.to_json(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                };
            }
            let body = json!({ "error": "usage", "message": e.kind().to_string() });
            return Output {
                code: EXIT_USAGE,
                stdout: io::render(&body, false),
                stderr: text,
            };
        }
    };
    let pretty = cli.pretty;
    let result = if cli.jobs == Some(0) {
        Err(Failure::usage("--jobs must be at least 1"))
    } else {
        execute(&cli, stdin)
    };
    match result {
        Ok((code, Reply::Json(v))) => Output {
            code,
            stdout: io::render(&v, pretty),
            stderr: String::new(),
        },
        Ok((code, Reply::Text(s))) => Output {
            code,
            stdout: s,
            stderr: String::new(),
        },
        Err(f) => Output {
            code: f.code,
            stdout: io::render(&f.body, pretty),
            stderr: String::new(),
        },
    }
}

enum Reply {
    Json(Value),
    Text(String),
}

fn read_document(cli: &Cli, stdin: &mut dyn Read) -> Result<MatrixDocument, Failure> {
    Ok(MatrixDocument::parse(&read_text(cli, stdin)?)?)
}

fn read_matrix(cli: &Cli, stdin: &mut dyn Read) -> Result<(MatrixDocument, ExtendedMatrix), Failure> {
    let doc = read_document(cli, stdin)?;
    let b = doc.to_extended()?;
    Ok((doc, b))
}

/// Runs `f` on a pool of `--jobs` threads, or on the global pool.
fn in_pool<R: Send>(cli: &Cli, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    match cli.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::new(EXIT_DOMAIN, "threads", e.to_string())),
        None => Ok(f()),
    }
}

fn explore_options(cli: &Cli, budget: Budget) -> ExploreOptions {
    ExploreOptions {
        budget,
        parallel: cli.jobs != Some(1),
        ..ExploreOptions::default()
    }
}

/// Converts 1-based mutable indices to 0-based ones.
fn mutation_indices(ks: &[usize], b: &ExtendedMatrix) -> Result<Vec<usize>, Failure> {
    ks.iter()
        .map(|&k| {
            if k == 0 || k > b.rows() {
                Err(Failure::new(
                    EXIT_USAGE,
                    "index",
                    format!("index {k} is out of range 1..={}", b.rows()),
                ))
            } else if k > b.mutable_count() {
                Err(Failure::new(
                    EXIT_DOMAIN,
                    "frozen_index",
                    format!("index {k} is frozen; only 1..={} can be mutated", b.mutable_count()),
                ))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(i32, Reply), Failure> {
    match &cli.command {
        Command::Mutate { at, seq } => {
            let (doc, b) = read_matrix(cli, stdin)?;
            let mut ks: Vec<usize> = at.iter().copied().collect();
            ks.extend(seq);
            if ks.is_empty() {
                return Err(Failure::usage("give --at or --seq"));
            }
            let ks = mutation_indices(&ks, &b)?;
            let out = b.mutate_seq(&ks).map_err(IoError::from)?;
            let doc = MatrixDocument::from_extended(&out, doc.name);
            Ok((EXIT_OK, Reply::Json(doc.to_value())))
        }
        Command::Diagram { dot } => {
            let (_, b) = read_matrix(cli, stdin)?;
            let d = Diagram::of_extended(&b);
            Ok((
                EXIT_OK,
                if *dot {
                    Reply::Text(io::emit_dot(&d))
                } else {
                    Reply::Json(io::diagram_json(&d))
                },
            ))
        }
        Command::Classify => {
            let (_, b) = read_matrix(cli, stdin)?;
            let (code, v) = classify_report(&Diagram::of_exchange(b.principal()))?;
            Ok((code, Reply::Json(v)))
        }
        Command::Enumerate { budget, max_weight } => {
            let (_, b) = read_matrix(cli, stdin)?;
            let budget = Budget {
                nodes: *budget,
                max_weight: max_weight.map(BigInt::from),
            };
            let opts = explore_options(cli, budget);
            let report = in_pool(cli, || explore_with(&b, &opts))?;
            let code = if report.is_exhausted() { EXIT_BUDGET } else { EXIT_OK };
            Ok((code, Reply::Json(io::class_report_json(&report))))
        }
        Command::Minimal => {
            let (_, b) = read_matrix(cli, stdin)?;
            let gamma = Diagram::of_exchange(b.principal());
            let mut cache = FiniteTypeCache::new();
            let minimal = is_minimal_infinite_cached(&gamma, &mut cache).map_err(domain)?;
            let finite = cache.is_finite(&gamma).map_err(domain)?;
            let mut deletions = Vec::new();
            for v in 0..gamma.size() {
                let f = cache.is_finite(&gamma.without_vertex(v)).map_err(domain)?;
                deletions.push(json!({ "vertex": v + 1, "finite_type": f }));
            }
            Ok((
                EXIT_OK,
                Reply::Json(json!({
                    "minimal_infinite": minimal,
                    "finite_type": finite,
                    "deletions": deletions,
                })),
            ))
        }
        Command::VerifyTheorem { budget } => {
            let (_, b) = read_matrix(cli, stdin)?;
            let opts = explore_options(cli, Budget::nodes(*budget));
            let report = in_pool(cli, || verify_theorem(b.principal(), &opts))?.map_err(domain)?;
            let code = match report.verdict {
                Verdict::Consistent => EXIT_OK,
                Verdict::UndecidedAtBudget => EXIT_BUDGET,
                Verdict::Mismatch(_) => EXIT_DOMAIN,
            };
            Ok((code, Reply::Json(io::theorem_json(&report))))
        }
        Command::Catalog {
            family,
            rank,
            affine,
            flip,
        } => {
            let family = Family::parse(family).ok_or_else(|| Failure::usage(format!("unknown family {family}")))?;
            let label = Label {
                family,
                rank: *rank,
                affine: *affine,
            };
            let orientation = if flip.is_empty() {
                Orientation::Drawing
            } else {
                Orientation::Flipped(flip.iter().map(|&f| f != 0).collect())
            };
            let d = catalog::diagram(label, &orientation).map_err(|e| Failure::usage(e.to_string()))?;
            let b = d
                .realize()
                .map_err(|e| Failure::new(EXIT_DOMAIN, "realize", e.to_string()))?;
            let doc = MatrixDocument::from_extended(&ExtendedMatrix::from_exchange(&b), Some(label.to_string()));
            Ok((EXIT_OK, Reply::Json(doc.to_value())))
        }
        Command::Companion => {
            let text = read_text(cli, stdin)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| IoError::Json(e.to_string()))?;
            let doc = MatrixDocument::from_value(&value)?;
            let b = doc.to_extended()?;
            let host = b.principal().clone();
            match value.get("companion") {
                Some(rows) => {
                    let a = MatrixDocument::from_value(&json!({ "rows": rows }))?;
                    let a = IntMatrix::try_from_rows(a.rows)
                        .map_err(|_| Failure::new(EXIT_DOMAIN, "companion", "companion rows are ragged"))?;
                    let c = Companion::new(a, host).map_err(|e| Failure {
                        code: EXIT_DOMAIN,
                        body: io::companion_error_json(&e),
                    })?;
                    let code = if c.is_admissible() { EXIT_OK } else { EXIT_DOMAIN };
                    Ok((code, Reply::Json(io::companion_json(&c))))
                }
                None => {
                    let all = admissible_companions(&host);
                    match all.first() {
                        Some(c) => {
                            let mut v = io::companion_json(c);
                            v["admissible_count"] = json!(all.len());
                            Ok((EXIT_OK, Reply::Json(v)))
                        }
                        None => Err(Failure::new(
                            EXIT_DOMAIN,
                            "no_admissible_companion",
                            "no quasi-Cartan companion is admissible",
                        )),
                    }
                }
            }
        }
        Command::Serve { port, ttl } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::new(EXIT_DOMAIN, "runtime", e.to_string()))?;
            rt.block_on(service::serve(*port, std::time::Duration::from_secs(*ttl)))
                .map_err(|e| Failure::new(EXIT_DOMAIN, "serve", e.to_string()))?;
            Ok((EXIT_OK, Reply::Json(json!({ "stopped": true }))))
        }
    }
}

fn read_text(cli: &Cli, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::new(EXIT_USAGE, "input", format!("cannot read {path}: {e}"))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::new(EXIT_USAGE, "input", format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_DOMAIN, "domain", e.to_string())
}

fn label_fields(label: Label) -> Value {
    json!({ "family": label.family.letter(), "rank": label.rank })
}

/// Finite-type report of a diagram; exit status 1 when it is of infinite type.
///
/// Connected finite-type diagrams get `family` and `rank`; disconnected ones
/// list a label per component.
fn classify_report(gamma: &Diagram) -> Result<(i32, Value), Failure> {
    match decide_finite_type(gamma).map_err(domain)? {
        FiniteType::Finite(_) if gamma.is_connected() => {
            let label = identify_dynkin_type(gamma).map_err(domain)?;
            let mut v = json!({ "finite_type": true });
            v["family"] = label_fields(label)["family"].clone();
            v["rank"] = json!(label.rank);
            Ok((EXIT_OK, v))
        }
        FiniteType::Finite(_) => {
            let mut components = Vec::new();
            for comp in gamma.components() {
                let label = identify_dynkin_type(&gamma.subdiagram(&comp)).map_err(domain)?;
                let mut v = label_fields(label);
                v["vertices"] = json!(comp.iter().map(|v| v + 1).collect::<Vec<_>>());
                components.push(v);
            }
            Ok((EXIT_OK, json!({ "finite_type": true, "components": components })))
        }
        f @ FiniteType::Infinite { .. } => Ok((EXIT_DOMAIN, io::finite_type_json(&f))),
    }
}

/// Classification report of a diagram, as printed by `classify`.
pub fn classify_value(gamma: &Diagram) -> Result<Value, String> {
    classify_report(gamma)
        .map(|(_, v)| v)
        .map_err(|f| f.body["message"].as_str().unwrap_or_default().to_string())
}
