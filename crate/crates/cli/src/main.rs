//! `bruhat`: batch front end. Exit status 0 on success, 1 on a mathematical
//! discrepancy, 2 on usage or parse errors, 3 when a size cap is hit.

mod spec;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxeter_bruhat::classify::{classify, essential_bw_graph, poset_isomorphic, reconstruct_pair};
use coxeter_bruhat::invariants::g_of;
use coxeter_bruhat::pair::{irreducible_pairs, CoxeterPair};
use coxeter_bruhat::suites::run_suite;
use coxeter_bruhat::{bruhat_order, bu_expand, bw_graph, bwgraph_isomorphic, PointedPoset, WeylError, DEFAULT_CAP};

use spec::{parse_pair, PairSpec};

#[derive(Parser)]
#[command(name = "bruhat", version, about = "Bruhat posets of Weyl group quotients")]
struct Cli {
    /// Worker threads for independent pairs (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm1,
    Thmnew,
    Propirr,
    Lemnew,
    Lemunique,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate W^J and export its Bruhat poset.
    Quotient {
        pair: String,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_elements: usize,
    },
    /// Decide whether two quotients have isomorphic Bruhat posets.
    Compare {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_elements: usize,
    },
    /// Sort all irreducible pairs into poset isomorphism classes and compare
    /// with the predicted coincidences.
    Classify {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Pairs with larger quotients are skipped and listed.
        #[arg(long, default_value_t = 10_000)]
        max_size: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The black-and-white Coxeter graph of a pair.
    Bwgraph {
        pair: String,
        /// Apply the expansion BU.
        #[arg(long)]
        expand: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the black-and-white graph from a poset, given as a pair or
    /// as poset JSON written by `quotient`.
    Reconstruct {
        /// A pair descriptor; omit when --poset is given.
        pair: Option<String>,
        #[arg(long, conflicts_with = "pair")]
        poset: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_elements: usize,
    },
    /// Run a verification suite and print its traceability table.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Failure {
        let code = if matches!(e, WeylError::CapExceeded { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Exit status for a finished command.
struct Status(u8);

fn pair_arg(text: &str) -> Result<CoxeterPair, Failure> {
    let PairSpec { pair, note } = parse_pair(text).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(note) = note {
        eprintln!("note: {note}");
    }
    Ok(pair)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value")
}

fn summary(pair: &CoxeterPair, p: &PointedPoset) -> Value {
    json!({ "name": pair.name, "size": p.len(), "length": p.length() })
}

fn quotient(pair: &str, format: GraphFormat, out: Option<&Path>, cap: usize) -> Result<Status, Failure> {
    let pair = pair_arg(pair)?;
    let q = pair.enumerate(Some(cap))?;
    let p = bruhat_order(&q);
    let text = match format {
        GraphFormat::Dot => p.to_dot(),
        GraphFormat::Json => {
            let mut doc = q.to_json(&pair.name);
            let poset = p.to_json();
            doc["poset"] = poset;
            doc["length"] = json!(p.length());
            pretty(&doc)
        }
    };
    emit(out, &text)?;
    Ok(Status(0))
}

fn compare(a: &str, b: &str, format: ReportFormat, out: Option<&Path>, cap: usize) -> Result<Status, Failure> {
    let (a, b) = (pair_arg(a)?, pair_arg(b)?);
    let (p, q) = (a.poset(Some(cap))?, b.poset(Some(cap))?);
    let witness = poset_isomorphic(&p, &q);
    let reason = if witness.is_some() {
        None
    } else if p.length() != q.length() {
        Some(format!("lengths {} != {}", p.length(), q.length()))
    } else if p.len() != q.len() {
        Some(format!("sizes {} != {}", p.len(), q.len()))
    } else if p.rank_sizes() != q.rank_sizes() {
        Some("rank sizes differ".to_string())
    } else {
        Some("no order isomorphism".to_string())
    };
    let text = match format {
        ReportFormat::Json => pretty(&json!({
            "first": summary(&a, &p),
            "second": summary(&b, &q),
            "isomorphic": witness.is_some(),
            "reason": reason,
            "witness": witness,
        })),
        ReportFormat::Text => {
            let mut s = format!(
                "{}: {} elements, length {}\n{}: {} elements, length {}\n",
                a.name,
                p.len(),
                p.length(),
                b.name,
                q.len(),
                q.length()
            );
            match (&witness, &reason) {
                (Some(map), _) => {
                    s.push_str("ISOMORPHIC\n");
                    let pairs: Vec<String> = map.iter().enumerate().map(|(i, j)| format!("{i}->{j}")).collect();
                    s.push_str(&format!("witness {}\n", pairs.join(" ")));
                }
                (None, Some(r)) => s.push_str(&format!("NOT ISOMORPHIC: {r}\n")),
                (None, None) => unreachable!(),
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(Status(0))
}

fn classify_cmd(max_rank: usize, max_size: usize, format: ReportFormat, out: Option<&Path>) -> Result<Status, Failure> {
    let report = classify(&irreducible_pairs(max_rank), max_size);
    let text = match format {
        ReportFormat::Json => pretty(&report.to_json()),
        ReportFormat::Text => report.to_table(),
    };
    emit(out, &text)?;
    Ok(Status(if report.is_consistent() { 0 } else { 1 }))
}

fn bwgraph_cmd(pair: &str, expand: bool, format: GraphFormat, out: Option<&Path>) -> Result<Status, Failure> {
    let pair = pair_arg(pair)?;
    let mut g = bw_graph(&pair.matrix, &pair.subset);
    if expand {
        g = bu_expand(&g).map_err(|e| Failure::usage(format!("{}: {e}", pair.name)))?;
    }
    let text = match format {
        GraphFormat::Json => pretty(&g.to_json()),
        GraphFormat::Dot => g.to_dot(),
    };
    emit(out, &text)?;
    Ok(Status(0))
}

fn reconstruct(pair: Option<&str>, poset: Option<&Path>, out: Option<&Path>, cap: usize) -> Result<Status, Failure> {
    let (p, pair) = match (pair, poset) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            // Accept both bare poset JSON and the output of `quotient`.
            let inner = doc.get("poset").unwrap_or(&doc).to_string();
            let p = PointedPoset::from_json(&inner).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            (p, None)
        }
        (Some(text), None) => {
            let pair = pair_arg(text)?;
            (pair.poset(Some(cap))?, Some(pair))
        }
        (None, None) => return Err(Failure::usage("give a pair or --poset FILE")),
    };
    let g = g_of(&p).graph;
    let result = reconstruct_pair(&p);
    let mut status = 0;
    let mut doc = json!({
        "poset_graph": g.to_json(),
        "status": if result.is_ok() { "reconstructed" } else { "undecided" },
    });
    if let Ok(h) = &result {
        doc["graph"] = h.to_json();
        if let Some(pair) = &pair {
            let agrees = bwgraph_isomorphic(h, &essential_bw_graph(&pair.matrix, &pair.subset)).is_some();
            doc["matches_pair"] = json!(agrees);
            if !agrees {
                status = 1;
            }
        }
    }
    emit(out, &pretty(&doc))?;
    Ok(Status(status))
}

fn verify(suite: Suite, format: ReportFormat, out: Option<&Path>) -> Result<Status, Failure> {
    let name = match suite {
        Suite::Thm1 => "thm1",
        Suite::Thmnew => "thmnew",
        Suite::Propirr => "propirr",
        Suite::Lemnew => "lemnew",
        Suite::Lemunique => "lemunique",
    };
    let report = run_suite(name).expect("known suite");
    let text = match format {
        ReportFormat::Json => pretty(&report.to_json()),
        ReportFormat::Text => report.to_table(),
    };
    emit(out, &text)?;
    Ok(Status(if report.passed() { 0 } else { 1 }))
}

fn run(cli: Cli) -> Result<Status, Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    match cli.command {
        Command::Quotient {
            pair,
            format,
            out,
            max_elements,
        } => quotient(&pair, format, out.as_deref(), max_elements),
        Command::Compare {
            first,
            second,
            format,
            out,
            max_elements,
        } => compare(&first, &second, format, out.as_deref(), max_elements),
        Command::Classify {
            max_rank,
            max_size,
            format,
            out,
        } => classify_cmd(max_rank, max_size, format, out.as_deref()),
        Command::Bwgraph {
            pair,
            expand,
            format,
            out,
        } => bwgraph_cmd(&pair, expand, format, out.as_deref()),
        Command::Reconstruct {
            pair,
            poset,
            out,
            max_elements,
        } => reconstruct(pair.as_deref(), poset.as_deref(), out.as_deref(), max_elements),
        Command::Verify { suite, format, out } => verify(suite, format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status(code)) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
