use std::process::ExitCode;

use clap::Parser;
use quotvi::cli::{execute, Settings};

/// Virtual intersection numbers on Quot schemes of curves.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// vi | localize | bees | fl | verify | pontrjagin | shift-check
    command: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Polynomial in a<i>, b<i>_<j>, f<i>, e.g. "a1^2 a2 - 3 a1^4"
    #[arg(long)]
    insertion: Option<String>,
    /// Equivariant parameter (nonzero rational)
    #[arg(long)]
    h: Option<String>,
    /// Include per-locus contributions (localize)
    #[arg(long)]
    breakdown: bool,
    /// exact | floating
    #[arg(long)]
    backend: Option<String>,
    /// Number of odd pairs (bees)
    #[arg(long)]
    s: Option<String>,
    /// Index of f_l (fl)
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// human | json
    #[arg(long)]
    format: Option<String>,
    /// Flat key = value file; flags override its entries
    #[arg(long)]
    config: Option<String>,
    /// Record wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let flags = Settings {
        command: a.command,
        r: a.r,
        n: a.n,
        g: a.g,
        d: a.d,
        insertion: a.insertion,
        h: a.h,
        breakdown: a.breakdown.then(|| "true".into()),
        backend: a.backend,
        s: a.s,
        l: a.l,
        workers: a.workers,
        format: a.format,
        out: a.out,
        timings: a.timings.then(|| "true".into()),
    };
    let r = execute(a.config.as_deref(), flags);
    match &r.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &r.text) {
                eprintln!("error [io]: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None if r.is_error => eprint!("{}", r.text),
        None => print!("{}", r.text),
    }
    ExitCode::from(r.exit_code as u8)
}
