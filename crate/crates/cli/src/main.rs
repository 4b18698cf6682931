use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ghostage::classify::{check_level, classify_junior, ClassifyOptions};
use ghostage::props::{run_props, Scope};
use ghostage::report::{analyze, classes_json, classes_tsv};
use ghostage::{format, Error};

#[derive(Parser)]
#[command(name = "ghostage", version, about = "Ghost automorphisms and junior strata of level curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Report on one decorated graph file.
    Analyze {
        file: PathBuf,
        /// Twist k for the genus labelling.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// List junior strata for a level.
    Classify {
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Compare the JSON table with a stored one in this directory (written if absent).
        #[arg(long)]
        snapshot: Option<PathBuf>,
        /// Include non-maximal classes.
        #[arg(long)]
        all: bool,
        /// Permit level 11.
        #[arg(long)]
        allow_large: bool,
    },
    /// Run the seeded invariant suites.
    Props {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        scope: Option<Scope>,
    },
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_BOUND: u8 = 4;

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::SizeBound { .. } => ExitCode::from(EXIT_BOUND),
        Error::UnsupportedLevel(_) | Error::BadModulus(_) | Error::NotPrime(_) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_PARSE),
    }
}

fn cmd_analyze(file: &Path, k: Option<i64>, json: bool) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let report = match format::parse(&text).and_then(|d| analyze(&d, k)) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::SUCCESS
}

fn snapshot_name(ell: u32, k: u32, all: bool) -> String {
    format!("classify_ell{ell}_k{k}{}.json", if all { "_all" } else { "" })
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    ell: u32,
    k: i64,
    max_edges: Option<usize>,
    fmt: Format,
    snapshot: Option<&Path>,
    all: bool,
    allow_large: bool,
) -> ExitCode {
    let opts = ClassifyOptions { max_edges, allow_large };
    let bound = match check_level(ell, opts) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let mut classes = match classify_junior(ell, k, opts) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if !all {
        classes.retain(|c| c.maximal);
    }
    let k = k.rem_euclid(ell as i64) as u32;
    let json = classes_json(ell, k, bound, all, &classes);
    match fmt {
        Format::Json => print!("{json}"),
        Format::Tsv => print!("{}", classes_tsv(&classes)),
    }
    let Some(dir) = snapshot else {
        return ExitCode::SUCCESS;
    };
    let path = dir.join(snapshot_name(ell, k, all));
    match std::fs::read_to_string(&path) {
        Ok(stored) if stored == json => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("snapshot drift: {}", path.display());
            ExitCode::from(EXIT_FAILURE)
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &json)) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE);
            }
            eprintln!("snapshot written: {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn cmd_props(seed: u64, scope: Option<Scope>) -> ExitCode {
    let results = run_props(seed, scope);
    let mut failed = 0;
    for r in &results {
        println!(
            "{:<10} {:<34} {:>6} cases {:>4} failures",
            r.scope, r.name, r.cases, r.failures
        );
        if let Some(f) = &r.first_failure {
            println!("    first failure: {f}");
        }
        failed += usize::from(!r.passed());
    }
    println!("{} properties, {} failed (seed {seed})", results.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file, k, json } => cmd_analyze(&file, k, json),
        Command::Classify {
            ell,
            k,
            max_edges,
            format,
            snapshot,
            all,
            allow_large,
        } => cmd_classify(ell, k, max_edges, format, snapshot.as_deref(), all, allow_large),
        Command::Props { seed, scope } => cmd_props(seed, scope),
    }
}
