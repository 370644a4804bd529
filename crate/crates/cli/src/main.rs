//! `hsformal`: models, cohomology and formality verdicts for homogeneous
//! spaces and biquotients from the command line.

mod cache;
mod document;
mod embedding;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hsformal::descriptor::{self, SpaceDescriptor};
use hsformal::Error;

use cache::Cache;

/// Version of the JSON documents printed on stdout.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "hsformal", version, about = "Rational models and formality of homogeneous spaces and biquotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (default: $HSFORMAL_CACHE_DIR, then the user cache directory).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for degree-parallel linear algebra.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Report wall-clock time; implies --no-cache.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(clap::Args, Debug, Clone)]
struct SpaceArgs {
    /// Space such as "SU(6)/(SU(3)xSU(3))" or "U(3)//T(2)".
    descriptor: String,
    /// Named rule (blockwise, sp-in-su, so-in-su, ut-in-so, circle-splitting) or a matrix file.
    #[arg(long, value_name = "RULE|FILE")]
    embedding: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure model and its minimal model.
    Model {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Betti numbers up to the formal dimension or --cap.
    Betti {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Formality verdict with its witness.
    Formality {
        #[command(flatten)]
        space: SpaceArgs,
        /// Also search for a nontrivial triple Massey product.
        #[arg(long)]
        massey_confirm: bool,
    },
    /// First nontrivial triple Massey product, if any.
    Massey {
        #[command(flatten)]
        space: SpaceArgs,
        /// Largest degree of the product (default: formal dimension).
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Closed-form non-formality criteria that apply to the space.
    Criteria {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// A non-formal space of each dimension in a range.
    ScanDimensions { from: i64, to: i64 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprint!("{e}");
            println!("{}", error_document("UsageError", &e.kind().to_string()));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            println!("{}", error_document("UsageError", &e.to_string()));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", error_document(e.kind(), &e.to_string()));
            ExitCode::FAILURE
        }
    }
}

fn error_document(kind: &str, message: &str) -> String {
    serde_json::to_string(&json!({"schema": SCHEMA, "error": kind, "message": message})).expect("serializable")
}

fn space(args: &SpaceArgs) -> Result<SpaceDescriptor, Error> {
    let desc = descriptor::parse(&args.descriptor)?;
    embedding::apply(desc, args.embedding.as_deref())
}

/// Cache key parts: command, canonical space, flags, output mode.
fn key_parts(cli: &Cli) -> Result<Vec<String>, Error> {
    let mode = if cli.json { "json" } else { "text" };
    let parts = match &cli.command {
        Command::Model { space: s } => vec!["model".into(), space(s)?.canonical_key()],
        Command::Betti { space: s, cap } => vec!["betti".into(), space(s)?.canonical_key(), format!("cap={cap:?}")],
        Command::Formality { space: s, massey_confirm } => {
            vec!["formality".into(), space(s)?.canonical_key(), format!("massey-confirm={massey_confirm}")]
        }
        Command::Massey { space: s, cap } => vec!["massey".into(), space(s)?.canonical_key(), format!("cap={cap:?}")],
        Command::Criteria { space: s } => vec!["criteria".into(), space(s)?.canonical_key()],
        Command::ScanDimensions { from, to } => vec!["scan-dimensions".into(), format!("{from}..={to}")],
    };
    Ok(parts.into_iter().chain([format!("mode={mode}")]).collect())
}

fn run(cli: &Cli) -> Result<String, Error> {
    let parts = key_parts(cli)?;
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let cache = if cli.no_cache || cli.timings { None } else { Cache::locate(cli.cache_dir.as_deref()) };
    let key = Cache::key(&refs);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let start = Instant::now();
    let mut doc = compute(&cli.command)?;
    if cli.timings {
        doc["timings"] = json!({"total_ms": start.elapsed().as_secs_f64() * 1e3});
    }
    let out = if cli.json {
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    } else {
        document::text(&doc)
    };
    if let Some(c) = &cache {
        c.put(&key, &out);
    }
    Ok(out)
}

fn compute(command: &Command) -> Result<Value, Error> {
    let mut doc = match command {
        Command::Model { space: s } => document::model(&space(s)?)?,
        Command::Betti { space: s, cap } => document::betti(&space(s)?, *cap)?,
        Command::Formality { space: s, massey_confirm } => document::formality(&space(s)?, *massey_confirm)?,
        Command::Massey { space: s, cap } => document::massey(&space(s)?, *cap)?,
        Command::Criteria { space: s } => document::criteria(&space(s)?)?,
        Command::ScanDimensions { from, to } => document::scan(*from, *to)?,
    };
    doc["schema"] = json!(SCHEMA);
    Ok(doc)
}
