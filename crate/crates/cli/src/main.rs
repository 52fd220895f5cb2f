use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyomino_gb::generate::Constraints;
use polyideal_cli::input::parse_input;
use polyideal_cli::{cmd_random, exit, run_input, CliError, Conflicts, OrderChoice, Options, Variant};

/// Polyomino ideals of closed paths: validation, configuration census,
/// monomial orders, Gröbner certification and primitive binomial scans.
#[derive(Parser)]
#[command(name = "polyideal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print polyomino statistics and whether it is a closed path.
    Validate(FileArgs),
    /// List the configurations of a closed path and check the zig-zag criterion.
    Analyze(FileArgs),
    /// Compute a vertex order and show how its distinguished vertices were chosen.
    Order(OrderArgs),
    /// Check whether the inner 2-minors are a Gröbner basis under the order.
    GbCheck(OrderArgs),
    /// Minimal generators of the initial ideal.
    Initial(OrderArgs),
    /// Primitive binomials up to a degree bound.
    Scan(ScanArgs),
    /// Print a random closed path as a cell list.
    Random(RandomArgs),
}

#[derive(Args)]
struct FileArgs {
    /// Cell list or JSON document; `-` reads standard input.
    file: PathBuf,
    /// Print the JSON report on standard output and the summary on standard error.
    #[arg(long)]
    json: bool,
    /// Translate the cells so the bounding box starts at the origin.
    #[arg(long)]
    normalize: bool,
    /// Include per-phase timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    file: FileArgs,
    #[arg(long, value_enum, default_value_t)]
    order: OrderChoice,
    #[arg(long, value_enum, default_value_t)]
    variant: Variant,
    /// How the general construction picks between two marker pairs.
    #[arg(long, value_enum, default_value_t)]
    conflicts: Conflicts,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    order: OrderArgs,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    max_degree: u32,
}

#[derive(Args)]
struct RandomArgs {
    /// Number of cells: even and at least 8.
    #[arg(long)]
    cells: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Require (true) or forbid (false) an L-configuration.
    #[arg(long)]
    l_config: Option<bool>,
    /// Require or forbid a ladder of at least three steps.
    #[arg(long)]
    ladder3: Option<bool>,
    /// Require or forbid a W-pentomino.
    #[arg(long)]
    w_pentomino: Option<bool>,
    /// Require or forbid an RW-heptomino.
    #[arg(long)]
    rw_heptomino: Option<bool>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read_text(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Writes to standard output, treating a closed pipe as the reader being done.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn options(o: &OrderArgs) -> Options {
    Options {
        order: o.order,
        variant: o.variant,
        conflicts: o.conflicts,
        normalize: o.file.normalize,
        timings: o.file.timings,
    }
}

fn file_options(f: &FileArgs) -> Options {
    Options { normalize: f.normalize, timings: f.timings, ..Default::default() }
}

fn report(command: &str, f: &FileArgs, opts: Options, max_degree: u32) -> Result<i32, CliError> {
    let text = read_text(&f.file)?;
    let input = parse_input(&text)?;
    for d in &input.duplicates {
        eprintln!("warning: line {}: cell ({}, {}) already listed, ignored", d.line, d.cell.0, d.cell.1);
    }
    let outcome = run_input(command, &input, &opts, max_degree)?;
    if f.json {
        let json = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
        emit(&format!("{json}\n"));
        eprintln!("{}", outcome.summary);
    } else {
        emit(&format!("{}\n", outcome.summary));
    }
    Ok(outcome.exit_code)
}

fn random(r: &RandomArgs) -> Result<i32, CliError> {
    let constraints = Constraints {
        l_configuration: r.l_config,
        ladder3: r.ladder3,
        w_pentomino: r.w_pentomino,
        rw_heptomino: r.rw_heptomino,
    };
    let text = cmd_random(r.cells, r.seed, &constraints)?;
    match &r.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => emit(&text),
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(f) => report("validate", f, file_options(f), 0),
        Command::Analyze(f) => report("analyze", f, file_options(f), 0),
        Command::Order(o) => report("order", &o.file, options(o), 0),
        Command::GbCheck(o) => report("gb-check", &o.file, options(o), 0),
        Command::Initial(o) => report("initial", &o.file, options(o), 0),
        Command::Scan(s) => report("scan", &s.order.file, options(&s.order), s.max_degree),
        Command::Random(r) => random(r),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
