//! `lds`: build, inspect and benchmark lattice files.
//!
//! Exit codes: 0 success, 1 invalid input or arguments, 2 I/O failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lattice_ds::analytics::{parse_fraction, to_f64, Rational};
use lattice_ds::bench::{
    build_random, markdown, run_comparison_table, run_gamma_table, run_sorted_table, write_csv, BuildConfig,
    CompareConfig, GammaTableConfig, SortedTableConfig, StatRecord, UpdateOrder,
};
use lattice_ds::jump::{search_jump, JumpStrategy};
use lattice_ds::sortedness::{degree, sort_to_degree};
use lattice_ds::textfmt::{load, save};
use lattice_ds::{Error, Execution, Key};

#[derive(Parser)]
#[command(name = "lds", version, about = "Lattice data structure toolkit")]
struct Cli {
    /// Run table trials on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a random lattice of a given height and sortedness.
    Build {
        #[arg(long)]
        height: usize,
        /// Sorted fraction, e.g. 0.9 or 9/10.
        #[arg(long, default_value = "0", value_parser = fraction)]
        beta: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Leave the staging diagonal partially filled.
        #[arg(long)]
        partial: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Look up one key.
    Search {
        file: PathBuf,
        #[arg(long)]
        key: Key,
        /// Use jump search instead of the basic walk.
        #[arg(long)]
        jump: bool,
        #[arg(long, default_value = "binary", value_parser = strategy)]
        strategy: JumpStrategy,
    },
    /// Emit an experiment table as markdown, optionally also as CSV.
    #[command(subcommand)]
    Table(TableCmd),
    /// Raise the degree of sortedness with incremental sort steps.
    Sort {
        file: PathBuf,
        #[arg(long)]
        target_alpha: usize,
        /// Write the result here instead of overwriting FILE.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a lattice file and summarize it.
    Validate { file: PathBuf },
}

#[derive(Args)]
struct TableOut {
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Average jump factor of lattices with varying sortedness.
    Sorted {
        #[arg(long, value_delimiter = ',', default_value = "10,50,100")]
        heights: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = fraction, default_value = "0.8,0.9,0.95,1.0")]
        betas: Vec<Rational>,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: TableOut,
    },
    /// Average jump factor after updates plus idle-time sort steps.
    Gamma {
        /// One height or a comma-separated list.
        #[arg(long, value_delimiter = ',', required = true)]
        height: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = fraction, default_value = "0,3,4,5,6")]
        gammas: Vec<Rational>,
        #[arg(long, default_value_t = 1)]
        epochs: usize,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// inserts-first or shuffled.
        #[arg(long, default_value = "inserts-first", value_parser = order)]
        order: UpdateOrder,
        #[command(flatten)]
        out: TableOut,
    },
    /// Search cost of basic, jump and skip-list search on the same keys.
    Compare {
        #[arg(long, value_delimiter = ',', default_value = "10,50,100")]
        heights: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = fraction, default_value = "0.8,0.9,0.95,1.0")]
        betas: Vec<Rational>,
        /// Present keys probed per configuration.
        #[arg(long, default_value_t = 10_000)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also measure wall-clock time per search (informational).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: TableOut,
    },
}

fn fraction(s: &str) -> Result<Rational, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

fn strategy(s: &str) -> Result<JumpStrategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn order(s: &str) -> Result<UpdateOrder, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn emit(rows: &[StatRecord], out: &TableOut) -> lattice_ds::Result<()> {
    if let Some(path) = &out.csv {
        let file = at_path(path, File::create(path).map_err(Error::from))?;
        write_csv(BufWriter::new(file), rows)?;
    }
    io::stdout().write_all(markdown(rows).as_bytes())?;
    Ok(())
}

/// Prefixes I/O failures with the path involved.
fn at_path<T>(path: &Path, r: lattice_ds::Result<T>) -> lattice_ds::Result<T> {
    r.map_err(|e| match e {
        Error::Io(io) => Error::Io(io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        other => other,
    })
}

fn run(cli: Cli) -> lattice_ds::Result<()> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.cmd {
        Cmd::Build { height, beta, seed, partial, out } => {
            let lat = build_random(&BuildConfig { height, beta, seed, full: !partial })?;
            at_path(&out, save(&lat, &out))?;
            println!(
                "built h={} k={} N={} degree={} -> {}",
                lat.height(),
                lat.outer_count(),
                lat.len(),
                degree(&lat).alpha,
                out.display()
            );
        }
        Cmd::Search { file, key, jump, strategy } => {
            let lat = at_path(&file, load(&file))?;
            if jump {
                let o = search_jump(&lat, key, strategy);
                let at = o.location.map_or("-".to_string(), |c| c.to_string());
                println!(
                    "{} {key} at {at}: {} jumps, {} probes, {} comparisons",
                    if o.found { "found" } else { "absent" },
                    o.jumps,
                    o.probes,
                    o.comparisons
                );
            } else {
                let o = lat.search_basic(key);
                println!(
                    "{} {key} at {}: path {} ({} comparisons)",
                    if o.found { "found" } else { "absent" },
                    o.location,
                    if o.path.is_empty() { "-".to_string() } else { o.path.to_string() },
                    o.comparisons
                );
            }
        }
        Cmd::Table(TableCmd::Sorted { heights, betas, trials, seed, out }) => {
            if let Some(b) = betas.iter().find(|b| **b < Rational::new(1, 2) || **b > Rational::from_integer(1)) {
                return Err(Error::InvalidArgument(format!("beta {} outside [0.5, 1]", to_f64(*b))));
            }
            let rows = run_sorted_table(&SortedTableConfig { heights, betas, trials, seed }, exec)?;
            emit(&rows, &out)?;
        }
        Cmd::Table(TableCmd::Gamma { height, gammas, epochs, trials, seed, order, out }) => {
            let cfg = GammaTableConfig { heights: height, gammas, epochs, trials, seed, order };
            emit(&run_gamma_table(&cfg, exec)?, &out)?;
        }
        Cmd::Table(TableCmd::Compare { heights, betas, probes, seed, timings, out }) => {
            let cfg = CompareConfig { heights, betas, probes, seed, timings };
            emit(&run_comparison_table(&cfg, exec)?, &out)?;
        }
        Cmd::Sort { file, target_alpha, out } => {
            let mut lat = at_path(&file, load(&file))?;
            let from = degree(&lat).alpha;
            let calls = sort_to_degree(&mut lat, target_alpha)?;
            let dest = out.unwrap_or(file);
            at_path(&dest, save(&lat, &dest))?;
            println!("degree {from} -> {} after {calls} sort steps -> {}", degree(&lat).alpha, dest.display());
        }
        Cmd::Validate { file } => {
            let lat = at_path(&file, load(&file))?;
            println!("valid: h={} k={} N={} degree={}", lat.height(), lat.outer_count(), lat.len(), degree(&lat).alpha);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lds: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}
