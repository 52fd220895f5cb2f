//! The JSON run report.

use std::collections::BTreeMap;

use polyomino_gb::groebner::GBReport;
use polyomino_gb::lattice::{Cell, Point, Polyomino};
use polyomino_gb::order::{ConflictStrategy, YProvenance, YRule};
use polyomino_gb::path::{Configuration, PathCondition, ZigZagCheck};
use polyomino_gb::poly::Monomial;
use polyomino_gb::primitive::PrimitiveCandidate;
use serde::Serialize;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputInfo,
    pub stats: Stats,
    pub closed_path: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GBReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanInfo>,
    /// Wall-clock milliseconds per phase, only when asked for, so that
    /// reports stay byte-identical across runs by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub digest: String,
    pub cells: usize,
    pub duplicates_collapsed: usize,
    /// Whether the cells were translated to start at the origin.
    pub normalized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub cells: usize,
    pub vertices: usize,
    pub inner_intervals: usize,
    pub holes: usize,
    pub simple: bool,
    pub thin: bool,
    /// Lower-left and upper-right lattice points.
    pub bounding_box: [Point; 2],
}

impl Stats {
    pub fn of(p: &Polyomino) -> Self {
        let holes = p.holes().len();
        let bb = p.bounding_box();
        Stats {
            cells: p.len(),
            vertices: p.vertices().len(),
            inner_intervals: p.inner_intervals().len(),
            holes,
            simple: holes == 0,
            thin: p.is_thin(),
            bounding_box: [bb.lo(), bb.hi()],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub is_closed_path: bool,
    /// The cells in path order, when the polyomino is a closed path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<Cell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated: Option<PathCondition>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    /// Number of occurrences per configuration kind.
    pub counts: BTreeMap<String, usize>,
    pub configurations: Vec<Configuration>,
    pub zigzag_walks: usize,
    pub zigzag_check: ZigZagCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderInfo {
    pub requested: String,
    pub rule: YRule,
    pub variant: String,
    pub conflicts: ConflictStrategy,
    /// The distinguished vertices, placed above all others.
    pub y: Vec<Point>,
    pub provenance: YProvenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct InitialInfo {
    /// False when the generators were not certified as a Gröbner basis, in
    /// which case the monomials only generate their own leading-term ideal.
    pub certified: bool,
    pub squarefree: bool,
    pub count: usize,
    pub monomials: Vec<Monomial>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanInfo {
    pub max_degree: u32,
    pub primitive: usize,
    pub by_degree: BTreeMap<u32, usize>,
    pub non_squarefree: usize,
    /// Whether the path has no zig-zag walk. The ideal is then toric and the
    /// primitive binomials form its universal Gröbner basis.
    pub no_zigzag: bool,
    /// Set only when a non-squarefree primitive binomial was found on a path
    /// without zig-zag walks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universal_basis_squarefree: Option<bool>,
    pub candidates: Vec<PrimitiveCandidate>,
}
