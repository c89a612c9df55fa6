use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use homlev::algebra::parse_field;
use homlev_cli::render::render_report;
use homlev_cli::{parse, run_session, Config};

/// Runs a session script of ring, module and complex declarations followed
/// by commands, and reports each result.
#[derive(Parser, Debug)]
#[command(name = "homlev", version)]
struct Args {
    /// Script file, or `-` for standard input.
    script: String,
    /// Field for rings declared without one, e.g. `F2`, `F101` or `Q`.
    #[arg(long)]
    field: Option<String>,
    /// Resolution length for dimension reports.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Largest number of candidates tried exhaustively in searches.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the results as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only the corpus cases whose name contains this text.
    #[arg(long)]
    corpus_filter: Option<String>,
}

fn config(args: &Args) -> Result<Config, String> {
    let mut c = Config::default();
    if let Some(f) = &args.field {
        c.field = Some(parse_field(f).map_err(|e| e.to_string())?);
    }
    if let Some(n) = args.cutoff {
        c.cutoff = n;
    }
    if let Some(n) = args.budget {
        c.budget = n;
    }
    if let Some(n) = args.seed {
        c.seed = n;
    }
    c.corpus_filter = args.corpus_filter.clone();
    Ok(c)
}

fn read_script(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let source = match read_script(&args.script) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.script);
            return ExitCode::from(1);
        }
    };
    let session = match parse(&source, &cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run_session(&session);
    let json = report.to_json();
    print!("{}", render_report(&json));
    if let Some(path) = &args.out {
        let text = serde_json::to_string_pretty(&json).expect("results serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
