//! Library side of the `polyideal` command: input parsing, the commands and
//! their reports. The binary only adds argument handling.

pub mod input;
pub mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::ValueEnum;
use polyomino_gb::generate::{random_closed_path, Constraints, GenerateError};
use polyomino_gb::groebner::{certify, generators, initial_ideal, is_squarefree, GBReport};
use polyomino_gb::lattice::{Cell, LatticeError, Polyomino};
use polyomino_gb::order::{
    algorithm_numbering, choose_order, y_algorithm, y_without_rw, y_without_w_in, ConflictStrategy, NoRWVariant,
    NoWVariant, OrderError, OrderOptions, VertexOrder, YProvenance, YRule,
};
use polyomino_gb::path::{as_closed_path, census, find_l_configurations, find_ladders, find_zigzag_walks, no_zigzag_equivalence, ClosedPath, PathError};
use polyomino_gb::primitive::{graver_scan_with, Membership, ScanError};
use thiserror::Error;

use input::{format_cell_list, Input, InputError};
use report::{Census, InitialInfo, InputInfo, OrderInfo, RunReport, ScanInfo, Stats, Verdict, SCHEMA_VERSION};

/// Process exit codes, one per error family.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const NOT_CLOSED_PATH: i32 = 3;
    pub const GB_REFUTED: i32 = 4;
    pub const BOUND_EXCEEDED: i32 = 5;
    pub const ORDER_NOT_APPLICABLE: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("the cells do not form a polyomino: {0}")]
    NotPolyomino(#[from] LatticeError),
    #[error(transparent)]
    NotClosedPath(PathError),
    #[error("{0}")]
    BoundExceeded(String),
    #[error("order not applicable: {0}")]
    OrderNotApplicable(#[from] OrderError),
    #[error("{0}")]
    Scan(ScanError),
    #[error("invalid argument: {0}")]
    Argument(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Input(_) | CliError::NotPolyomino(_) | CliError::Argument(_) => exit::INPUT,
            CliError::NotClosedPath(_) => exit::NOT_CLOSED_PATH,
            CliError::BoundExceeded(_) => exit::BOUND_EXCEEDED,
            CliError::OrderNotApplicable(_) => exit::ORDER_NOT_APPLICABLE,
            CliError::Scan(ScanError::NotCertified) => exit::GB_REFUTED,
            CliError::Scan(_) => exit::INPUT,
        }
    }
}

impl From<PathError> for CliError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::SearchBudget(_) => CliError::BoundExceeded(e.to_string()),
            other => CliError::NotClosedPath(other),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        CliError::Scan(e)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OrderChoice {
    /// The first construction that applies to the closed path.
    #[default]
    Auto,
    /// Column-then-row order with no distinguished vertices.
    Q1,
    /// Skew tetromino markers; needs no W-pentomino, works on any polyomino.
    WithoutW,
    /// Pentomino and hexomino markers; needs no RW-heptomino.
    WithoutRw,
    /// The general construction; needs a W-pentomino and an RW-heptomino.
    Algorithm,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    /// `x, y` markers for tetrominoes and pentominoes.
    #[default]
    Primary,
    /// `a, b` tetromino markers and `x, z` pentomino markers.
    Alternate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Conflicts {
    #[default]
    Verified,
    First,
    Second,
}

impl From<Conflicts> for ConflictStrategy {
    fn from(c: Conflicts) -> Self {
        match c {
            Conflicts::Verified => ConflictStrategy::Verified,
            Conflicts::First => ConflictStrategy::AlwaysFirst,
            Conflicts::Second => ConflictStrategy::AlwaysSecond,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub order: OrderChoice,
    pub variant: Variant,
    pub conflicts: Conflicts,
    pub normalize: bool,
    pub timings: bool,
}

impl Options {
    fn order_options(&self) -> OrderOptions {
        let (no_w, no_rw) = match self.variant {
            Variant::Primary => (NoWVariant::XY, NoRWVariant::XY),
            Variant::Alternate => (NoWVariant::AB, NoRWVariant::XZ),
        };
        OrderOptions { no_w, no_rw, conflicts: self.conflicts.into() }
    }
}

/// A finished command: the report, a short human summary and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub summary: String,
    pub exit_code: i32,
}

/// A parsed input turned into a polyomino, with its closed-path verdict.
struct Loaded {
    poly: Polyomino,
    path: Result<ClosedPath, PathError>,
    report: RunReport,
    started: Instant,
    timings: BTreeMap<String, u128>,
}

impl Loaded {
    fn new(command: &str, input: &Input, opts: &Options) -> Result<Self, CliError> {
        let started = Instant::now();
        let mut poly = Polyomino::from_coords(input.cells.iter().copied())?;
        if opts.normalize {
            poly = poly.normalize();
        }
        let path = as_closed_path(&poly);
        let closed_path = match &path {
            Ok(cp) => Verdict {
                is_closed_path: true,
                sequence: Some(cp.cells().to_vec()),
                violated: None,
                witness: Vec::new(),
                message: None,
            },
            Err(e) => {
                let (violated, witness) = match e {
                    PathError::NotClosedPath { condition, witness } => (Some(*condition), witness.clone()),
                    PathError::SearchBudget(_) => (None, Vec::new()),
                };
                Verdict { is_closed_path: false, sequence: None, violated, witness, message: Some(e.to_string()) }
            }
        };
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            input: InputInfo {
                digest: input.digest.clone(),
                cells: input.cells.len(),
                duplicates_collapsed: input.duplicates.len(),
                normalized: opts.normalize,
                meta: input.meta.clone(),
            },
            stats: Stats::of(&poly),
            closed_path,
            census: None,
            order: None,
            groebner: None,
            initial: None,
            scan: None,
            timings_ms: None,
        };
        let mut loaded = Loaded { poly, path, report, started, timings: BTreeMap::new() };
        loaded.lap("load");
        Ok(loaded)
    }

    fn lap(&mut self, phase: &str) {
        self.timings.insert(phase.to_string(), self.started.elapsed().as_millis());
    }

    fn closed_path(&self) -> Result<&ClosedPath, CliError> {
        self.path.as_ref().map_err(|e| CliError::from(e.clone()))
    }

    fn finish(mut self, opts: &Options, summary: String, exit_code: i32) -> Outcome {
        if opts.timings {
            self.lap("total");
            self.report.timings_ms = Some(self.timings);
        }
        Outcome { report: self.report, summary, exit_code }
    }

    /// Computes the requested order and records it in the report.
    fn order(&mut self, opts: &Options) -> Result<VertexOrder, CliError> {
        let oo = opts.order_options();
        let (ord, prov) = match opts.order {
            OrderChoice::Q1 => (VertexOrder::q1(&self.poly), YProvenance::new(YRule::Qureshi)),
            OrderChoice::WithoutW => {
                let (y, prov) = y_without_w_in(&self.poly, oo.no_w)?;
                (VertexOrder::from_y(&self.poly, &y)?, prov)
            }
            OrderChoice::WithoutRw => {
                let (y, prov) = y_without_rw(self.closed_path()?, oo.no_rw)?;
                (VertexOrder::from_y(&self.poly, &y)?, prov)
            }
            OrderChoice::Algorithm => {
                let cp = self.closed_path()?;
                let numbered = algorithm_numbering(cp).ok_or(OrderError::MissingConfigurations)?;
                let (y, prov) = y_algorithm(&numbered, 2, cp.len() + 1, oo.conflicts)?;
                (VertexOrder::from_y(&self.poly, &y)?, prov)
            }
            OrderChoice::Auto => choose_order(self.closed_path()?, oo),
        };
        self.report.order = Some(OrderInfo {
            requested: value_name(opts.order),
            rule: prov.rule,
            variant: value_name(opts.variant),
            conflicts: oo.conflicts,
            y: ord.y_set().iter().copied().collect(),
            provenance: prov,
        });
        self.lap("order");
        Ok(ord)
    }

    fn certify(&mut self, ord: &VertexOrder) -> GBReport {
        let report = certify(&self.poly, ord);
        self.report.groebner = Some(report.clone());
        self.lap("certify");
        report
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn stats_line(s: &Stats) -> String {
    format!(
        "{} cells, {} vertices, {} inner intervals, {} holes{}",
        s.cells,
        s.vertices,
        s.inner_intervals,
        s.holes,
        if s.thin { ", thin" } else { "" }
    )
}

fn verdict_line(v: &Verdict) -> String {
    if v.is_closed_path {
        "closed path: yes".to_string()
    } else {
        format!("closed path: no ({})", v.message.as_deref().unwrap_or("unknown reason"))
    }
}

fn gb_line(g: &GBReport) -> String {
    let mut s = format!(
        "Gröbner basis: {} ({} generators, {} pairs, {} coprime, {} reduced, {} failures, reduced basis: {})",
        if g.is_groebner { "yes" } else { "no" },
        g.generators,
        g.total_pairs,
        g.coprime_skips,
        g.reduced_pairs,
        g.failures.len(),
        if g.is_reduced { "yes" } else { "no" }
    );
    if let Some(f) = g.failures.first() {
        let name = |iv: Option<polyomino_gb::lattice::Interval>, k: usize| iv.map_or(format!("#{k}"), |iv| iv.to_string());
        s.push_str(&format!(
            "\nwitness pair: {} and {}\nnormal form: {}",
            name(f.first_interval, f.first),
            name(f.second_interval, f.second),
            f.normal_form
        ));
    }
    s
}

fn order_line(o: &OrderInfo) -> String {
    let y: Vec<String> = o.y.iter().map(|p| p.to_string()).collect();
    format!("order: {} via {}, Y = {{{}}}", o.requested, o.rule, y.join(", "))
}

pub fn cmd_validate(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let loaded = Loaded::new("validate", input, opts)?;
    let ok = loaded.report.closed_path.is_closed_path;
    let summary = format!("{}\n{}", stats_line(&loaded.report.stats), verdict_line(&loaded.report.closed_path));
    Ok(loaded.finish(opts, summary, if ok { exit::OK } else { exit::NOT_CLOSED_PATH }))
}

pub fn cmd_analyze(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let mut loaded = Loaded::new("analyze", input, opts)?;
    let cp = loaded.closed_path()?.clone();
    let mut counts = BTreeMap::new();
    let mut configurations = Vec::new();
    let lconf = find_l_configurations(&cp);
    let ladders = find_ladders(&cp, 2);
    for c in lconf.into_iter().chain(ladders).chain(census(&cp).into_values().flatten()) {
        *counts.entry(c.kind.to_string()).or_insert(0) += 1;
        configurations.push(c);
    }
    let walks = find_zigzag_walks(&cp)?;
    let check = no_zigzag_equivalence(&cp)?;
    loaded.lap("census");
    let mut lines: Vec<String> = counts.iter().map(|(k, n)| format!("{k}: {n}")).collect();
    lines.push(format!("zig-zag walks: {}", walks.len()));
    lines.push(format!(
        "no zig-zag walk: {}; L-configuration or ladder of 3 steps: {}; agree: {}",
        check.no_zigzag, check.lconf_or_ladder3, check.agree
    ));
    loaded.report.census = Some(Census { counts, configurations, zigzag_walks: walks.len(), zigzag_check: check });
    let summary = format!("{}\n{}\n{}", stats_line(&loaded.report.stats), verdict_line(&loaded.report.closed_path), lines.join("\n"));
    Ok(loaded.finish(opts, summary, exit::OK))
}

pub fn cmd_order(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let mut loaded = Loaded::new("order", input, opts)?;
    loaded.order(opts)?;
    let info = loaded.report.order.as_ref().expect("order was just set");
    let mut lines = vec![order_line(info)];
    for e in &info.provenance.trace {
        let m: Vec<String> = e.markers.iter().map(|p| p.to_string()).collect();
        lines.push(format!("  {} {}: {}", e.rule, m.join(" "), e.reason));
    }
    let summary = lines.join("\n");
    Ok(loaded.finish(opts, summary, exit::OK))
}

pub fn cmd_gbcheck(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let mut loaded = Loaded::new("gb-check", input, opts)?;
    let ord = loaded.order(opts)?;
    let gb = loaded.certify(&ord);
    let summary = format!("{}\n{}", order_line(loaded.report.order.as_ref().unwrap()), gb_line(&gb));
    let code = if gb.is_groebner { exit::OK } else { exit::GB_REFUTED };
    Ok(loaded.finish(opts, summary, code))
}

pub fn cmd_initial(input: &Input, opts: &Options) -> Result<Outcome, CliError> {
    let mut loaded = Loaded::new("initial", input, opts)?;
    let ord = loaded.order(opts)?;
    let gb = loaded.certify(&ord);
    let init = initial_ideal(&generators(&loaded.poly), &ord, gb.is_groebner);
    let info = InitialInfo {
        certified: init.certified,
        squarefree: is_squarefree(&init.monomials),
        count: init.monomials.len(),
        monomials: init.monomials,
    };
    let summary = format!(
        "{}\n{}\ninitial ideal: {} minimal generators, squarefree: {}{}",
        order_line(loaded.report.order.as_ref().unwrap()),
        gb_line(&gb),
        info.count,
        if info.squarefree { "yes" } else { "no" },
        if info.certified { "" } else { " (leading terms only, basis not certified)" }
    );
    loaded.report.initial = Some(info);
    loaded.lap("initial");
    let code = if gb.is_groebner { exit::OK } else { exit::GB_REFUTED };
    Ok(loaded.finish(opts, summary, code))
}

pub fn cmd_scan(input: &Input, opts: &Options, max_degree: u32) -> Result<Outcome, CliError> {
    if max_degree < 2 {
        return Err(ScanError::DegreeBoundTooSmall(max_degree).into());
    }
    let mut loaded = Loaded::new("scan", input, opts)?;
    let cp = loaded.closed_path()?.clone();
    let ord = loaded.order(opts)?;
    let oracle = Membership::with_order(&cp, ord)?;
    let candidates = graver_scan_with(&oracle, max_degree)?;
    loaded.lap("scan");
    let no_zigzag = no_zigzag_equivalence(&cp)?.no_zigzag;
    let mut by_degree = BTreeMap::new();
    for c in &candidates {
        *by_degree.entry(c.degree).or_insert(0) += 1;
    }
    let non_squarefree = candidates.iter().filter(|c| !c.squarefree).count();
    let info = ScanInfo {
        max_degree,
        primitive: candidates.len(),
        by_degree,
        non_squarefree,
        no_zigzag,
        universal_basis_squarefree: (no_zigzag && non_squarefree > 0).then_some(false),
        candidates,
    };
    let mut lines = vec![
        order_line(loaded.report.order.as_ref().unwrap()),
        format!("primitive binomials up to degree {max_degree}: {}", info.primitive),
    ];
    lines.extend(info.by_degree.iter().map(|(d, n)| format!("  degree {d}: {n}")));
    lines.push(format!("not squarefree: {}", info.non_squarefree));
    if let Some(c) = info.candidates.iter().find(|c| !c.squarefree) {
        lines.push(format!("example: {}", c.binomial));
    }
    if info.universal_basis_squarefree == Some(false) {
        lines.push("the path has no zig-zag walk, so its universal Gröbner basis is not squarefree".to_string());
    }
    loaded.report.scan = Some(info);
    Ok(loaded.finish(opts, lines.join("\n"), exit::OK))
}

/// A random closed path as cell-list text, cells in path order.
pub fn cmd_random(n_cells: usize, seed: u64, constraints: &Constraints) -> Result<String, CliError> {
    let cp = random_closed_path(n_cells, seed, constraints).map_err(|e| match e {
        GenerateError::Unsatisfiable(_) => CliError::Argument(e.to_string()),
        GenerateError::GenerationTimeout(_) => CliError::BoundExceeded(e.to_string()),
    })?;
    let comments = vec![format!("random closed path: {n_cells} cells, seed {seed}")];
    Ok(format_cell_list(&comments, cp.cells().iter().map(|c: &Cell| (c.0.i, c.0.j))))
}

/// Runs one of the report commands by name. `max_degree` is used by `scan` only.
pub fn run_input(command: &str, input: &Input, opts: &Options, max_degree: u32) -> Result<Outcome, CliError> {
    match command {
        "validate" => cmd_validate(input, opts),
        "analyze" => cmd_analyze(input, opts),
        "order" => cmd_order(input, opts),
        "gb-check" => cmd_gbcheck(input, opts),
        "initial" => cmd_initial(input, opts),
        "scan" => cmd_scan(input, opts, max_degree),
        other => Err(CliError::Argument(format!("unknown command {other}"))),
    }
}

/// [`run_input`] on text in either input format.
pub fn run(command: &str, text: &str, opts: &Options, max_degree: u32) -> Result<Outcome, CliError> {
    run_input(command, &input::parse_input(text)?, opts, max_degree)
}
