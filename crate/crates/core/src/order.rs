//! Total orders on the vertex set of a polyomino and the lexicographic
//! monomial orders they induce.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::pairs_touching_reduce;
use crate::lattice::{Cell, Point, Polyomino};
use crate::path::{find_configurations, find_configurations_in, ClosedPath, ConfigKind, Configuration};
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("vertex {0} of the distinguished set is not a vertex of the polyomino")]
    YNotSubset(Point),
    #[error("ranking must list every vertex exactly once")]
    BadRanking,
    #[error("the path contains a W-pentomino")]
    HasWPentomino,
    #[error("the path contains an RW-heptomino")]
    HasRWHeptomino,
    #[error("indices {i}..{j} out of range for a path of {n} cells")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("the path needs both a W-pentomino and an RW-heptomino")]
    MissingConfigurations,
}

/// Column-then-row comparison of lattice points.
pub fn order_q1(a: Point, b: Point) -> Ordering {
    (a.i, a.j).cmp(&(b.i, b.j))
}

/// A total order on a finite vertex set, stored as ranks (0 = smallest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    ascending: Vec<Point>,
    rank: HashMap<Point, usize>,
    y_set: BTreeSet<Point>,
}

impl VertexOrder {
    /// Column-then-row order on `V(P)`.
    pub fn q1(p: &Polyomino) -> Self {
        Self::from_ascending(p.vertices().iter().copied().collect(), BTreeSet::new())
    }

    /// Vertices outside `y` first, then those in `y`; column-then-row inside each part.
    pub fn from_y(p: &Polyomino, y: &BTreeSet<Point>) -> Result<Self, OrderError> {
        if let Some(&v) = y.iter().find(|v| !p.is_vertex(**v)) {
            return Err(OrderError::YNotSubset(v));
        }
        let ascending: Vec<Point> = p
            .vertices()
            .iter()
            .filter(|v| !y.contains(v))
            .chain(y.iter())
            .copied()
            .collect();
        Ok(Self::from_ascending(ascending, y.clone()))
    }

    /// An arbitrary order given by listing `V(P)` from smallest to largest.
    pub fn from_ranking(p: &Polyomino, ascending: Vec<Point>) -> Result<Self, OrderError> {
        let set: BTreeSet<Point> = ascending.iter().copied().collect();
        if set.len() != ascending.len() || &set != p.vertices() {
            return Err(OrderError::BadRanking);
        }
        Ok(Self::from_ascending(ascending, BTreeSet::new()))
    }

    fn from_ascending(ascending: Vec<Point>, y_set: BTreeSet<Point>) -> Self {
        let rank = ascending.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        VertexOrder {
            ascending,
            rank,
            y_set,
        }
    }

    /// The distinguished set `Y` (empty for orders not built from one).
    pub fn y_set(&self) -> &BTreeSet<Point> {
        &self.y_set
    }

    pub fn ascending(&self) -> &[Point] {
        &self.ascending
    }

    pub fn contains(&self, v: Point) -> bool {
        self.rank.contains_key(&v)
    }

    /// Rank of a vertex. Panics on points outside the universe.
    pub fn rank(&self, v: Point) -> usize {
        match self.rank.get(&v) {
            Some(&r) => r,
            None => panic!("vertex {v} is outside the ordered vertex set"),
        }
    }

    pub fn cmp(&self, a: Point, b: Point) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    pub fn less(&self, a: Point, b: Point) -> bool {
        self.rank(a) < self.rank(b)
    }

    /// Largest of the given vertices.
    pub fn max_of(&self, vs: &[Point]) -> Point {
        *vs.iter().max_by_key(|v| self.rank(**v)).expect("empty vertex list")
    }

    /// Sort key for the induced lex order: `(rank, exponent)` pairs from the
    /// largest variable down. Comparing keys as sequences is lex comparison.
    pub fn lex_key(&self, m: &Monomial) -> Vec<(usize, u32)> {
        let mut key: Vec<(usize, u32)> = m.exponents().iter().map(|&(v, e)| (self.rank(v), e)).collect();
        key.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        key
    }

    pub fn cmp_monomials(&self, m: &Monomial, n: &Monomial) -> Ordering {
        self.lex_key(m).cmp(&self.lex_key(n))
    }

    /// The same order transported along a map of the plane.
    pub fn transport(&self, f: impl Fn(Point) -> Point) -> VertexOrder {
        let ascending: Vec<Point> = self.ascending.iter().map(|&v| f(v)).collect();
        let y_set = self.y_set.iter().map(|&v| f(v)).collect();
        Self::from_ascending(ascending, y_set)
    }
}

/// Which construction produced a distinguished set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum YRule {
    /// Plain column-then-row order, `Y` empty.
    Qureshi,
    NoW,
    NoRW,
    Algorithm,
}

impl fmt::Display for YRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YRule::Qureshi => "qureshi",
            YRule::NoW => "no-w",
            YRule::NoRW => "no-rw",
            YRule::Algorithm => "algorithm",
        })
    }
}

/// The marker pair added for one configuration. The `I-A` … `IV-B` labels
/// follow the table of highlighted points; tetromino pairs are not in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkerRule {
    #[serde(rename = "I-A")]
    IA,
    #[serde(rename = "II-A")]
    IIA,
    #[serde(rename = "III-A")]
    IIIA,
    #[serde(rename = "IV-A")]
    IVA,
    #[serde(rename = "I-B")]
    IB,
    #[serde(rename = "II-B")]
    IIB,
    #[serde(rename = "III-B")]
    IIIB,
    #[serde(rename = "IV-B")]
    IVB,
    #[serde(rename = "tet-xy")]
    TetXY,
    #[serde(rename = "tet-ab")]
    TetAB,
}

impl MarkerRule {
    pub fn label(self) -> &'static str {
        match self {
            MarkerRule::IA => "I-A",
            MarkerRule::IIA => "II-A",
            MarkerRule::IIIA => "III-A",
            MarkerRule::IVA => "IV-A",
            MarkerRule::IB => "I-B",
            MarkerRule::IIB => "II-B",
            MarkerRule::IIIB => "III-B",
            MarkerRule::IVB => "IV-B",
            MarkerRule::TetXY => "tet-xy",
            MarkerRule::TetAB => "tet-ab",
        }
    }

    /// Marker names picked by the rule.
    pub fn names(self) -> [&'static str; 2] {
        match self {
            MarkerRule::IA => ["x_W", "y_W"],
            MarkerRule::IIA => ["x_W", "z_W"],
            MarkerRule::IIIA | MarkerRule::IVA => ["a_D", "b_D"],
            MarkerRule::IB => ["x_T", "y_T"],
            MarkerRule::IIB => ["x_T", "z_T"],
            MarkerRule::IIIB | MarkerRule::IVB => ["x_D", "y_D"],
            MarkerRule::TetXY => ["x_C", "y_C"],
            MarkerRule::TetAB => ["a_C", "b_C"],
        }
    }
}

impl fmt::Display for MarkerRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: MarkerRule,
    pub kind: ConfigKind,
    pub cells: Vec<Cell>,
    pub markers: Vec<Point>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YProvenance {
    pub rule: YRule,
    /// First cell of the numbering used by the algorithm.
    pub start: Option<Cell>,
    pub trace: Vec<TraceEntry>,
}

impl YProvenance {
    pub fn new(rule: YRule) -> Self {
        YProvenance {
            rule,
            start: None,
            trace: Vec::new(),
        }
    }

    fn add(&mut self, y: &mut BTreeSet<Point>, c: &Configuration, rule: MarkerRule, reason: impl Into<String>) {
        let markers: Vec<Point> = rule.names().iter().map(|n| c.marker(n)).collect();
        y.extend(markers.iter().copied());
        self.trace.push(TraceEntry {
            rule,
            kind: c.kind,
            cells: c.cells.clone(),
            markers,
            reason: reason.into(),
        });
    }
}

/// Marker choice for paths without W-pentominoes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoWVariant {
    #[default]
    XY,
    AB,
}

/// W-pentomino marker choice for paths without RW-heptominoes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoRWVariant {
    #[default]
    XY,
    XZ,
}

/// How the algorithm picks between the two marker pairs of a W-pentomino or
/// RW-heptomino met after the first phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConflictStrategy {
    /// Try the `I` pair and keep it when every S-pair through the new markers
    /// reduces to zero under the tentative order; otherwise take the `II` pair.
    #[default]
    Verified,
    AlwaysFirst,
    AlwaysSecond,
}

/// Union of skew tetromino markers, for paths with no W-pentomino.
pub fn y_without_w(cp: &ClosedPath, variant: NoWVariant) -> Result<(BTreeSet<Point>, YProvenance), OrderError> {
    y_without_w_in(cp.polyomino(), variant)
}

/// The same construction on any polyomino, for experiments beyond closed paths.
pub fn y_without_w_in(p: &Polyomino, variant: NoWVariant) -> Result<(BTreeSet<Point>, YProvenance), OrderError> {
    if !find_configurations_in(p, ConfigKind::WPentomino).is_empty() {
        return Err(OrderError::HasWPentomino);
    }
    let rule = match variant {
        NoWVariant::XY => MarkerRule::TetXY,
        NoWVariant::AB => MarkerRule::TetAB,
    };
    let mut y = BTreeSet::new();
    let mut prov = YProvenance::new(YRule::NoW);
    for kind in [ConfigKind::LDSkewTetH, ConfigKind::LDSkewTetV] {
        for c in find_configurations_in(p, kind) {
            prov.add(&mut y, &c, rule, "skew tetromino");
        }
    }
    Ok((y, prov))
}

/// Hexomino and W-pentomino markers, for paths with no RW-heptomino.
pub fn y_without_rw(cp: &ClosedPath, variant: NoRWVariant) -> Result<(BTreeSet<Point>, YProvenance), OrderError> {
    if !find_configurations(cp, ConfigKind::RWHeptomino).is_empty() {
        return Err(OrderError::HasRWHeptomino);
    }
    let mut y = BTreeSet::new();
    let mut prov = YProvenance::new(YRule::NoRW);
    for c in find_configurations(cp, ConfigKind::LDSkewHexH) {
        prov.add(&mut y, &c, MarkerRule::IIIA, "skew hexomino");
    }
    for c in find_configurations(cp, ConfigKind::LDSkewHexV) {
        prov.add(&mut y, &c, MarkerRule::IVA, "skew hexomino");
    }
    let w_rule = match variant {
        NoRWVariant::XY => MarkerRule::IA,
        NoRWVariant::XZ => MarkerRule::IIA,
    };
    for c in find_configurations(cp, ConfigKind::WPentomino) {
        prov.add(&mut y, &c, w_rule, "W-pentomino");
    }
    Ok((y, prov))
}

/// State of one run of the sweep over cells `A_i … A_j` (1-based, cyclic).
struct Sweep<'a> {
    cp: &'a ClosedPath,
    strategy: ConflictStrategy,
    w_mid: BTreeMap<Cell, Configuration>,
    rw_mid: BTreeMap<Cell, Configuration>,
    hexes: Vec<Configuration>,
    y: BTreeSet<Point>,
    prov: YProvenance,
}

impl Sweep<'_> {
    fn cell(&self, k: usize) -> Cell {
        self.cp.at(k as i64 - 1)
    }

    fn is_w(&self, k: usize) -> bool {
        self.w_mid.contains_key(&self.cell(k))
    }

    fn is_rw(&self, k: usize) -> bool {
        self.rw_mid.contains_key(&self.cell(k))
    }

    fn first(&self, from: usize, to: usize, pred: impl Fn(&Self, usize) -> bool) -> Option<usize> {
        (from..=to).find(|&k| pred(self, k))
    }

    /// Hexominoes whose six cells are `A_k … A_{k+5}`.
    fn hexes_at(&self, k: usize) -> Vec<Configuration> {
        self.hexes
            .iter()
            .filter(|h| self.cp.is_run(k as i64 - 1, &h.cells))
            .cloned()
            .collect()
    }

    fn add_hexes(&mut self, k: usize, phase_b: bool) {
        for h in self.hexes_at(k) {
            let rule = match (h.kind, phase_b) {
                (ConfigKind::LDSkewHexH, false) => MarkerRule::IIIA,
                (ConfigKind::LDSkewHexV, false) => MarkerRule::IVA,
                (ConfigKind::LDSkewHexH, true) => MarkerRule::IIIB,
                _ => MarkerRule::IVB,
            };
            self.prov.add(&mut self.y, &h, rule, format!("hexomino starting at A_{k}"));
        }
    }

    /// Last index `m ≤ upto` whose cell has a vertex in the current set.
    fn lookback(&self, i: usize, upto: usize) -> Option<usize> {
        (i..=upto)
            .rev()
            .find(|&m| self.cell(m).vertices().iter().any(|v| self.y.contains(v)))
    }

    fn choose(&mut self, c: &Configuration, first: MarkerRule, second: MarkerRule, context: String) {
        let take_first = match self.strategy {
            ConflictStrategy::AlwaysFirst => true,
            ConflictStrategy::AlwaysSecond => false,
            ConflictStrategy::Verified => {
                let tentative: Vec<Point> = first.names().iter().map(|n| c.marker(n)).collect();
                let mut y = self.y.clone();
                y.extend(tentative.iter().copied());
                let p = self.cp.polyomino();
                let ord = VertexOrder::from_y(p, &y).expect("markers are vertices");
                pairs_touching_reduce(p, &ord, &tentative)
            }
        };
        let (rule, why) = if take_first {
            (first, "no conflict")
        } else {
            (second, "conflict")
        };
        self.prov.add(&mut self.y, c, rule, format!("{context}, {why}"));
    }

    /// Step 4: W-pentomino and hexomino markers of the `A` row up to the first heptomino.
    fn opening(&mut self, i: usize, q: usize) {
        for k in i..=q {
            if let Some(w) = self.w_mid.get(&self.cell(k)).cloned() {
                self.prov.add(&mut self.y, &w, MarkerRule::IIA, format!("W-pentomino at A_{k} before any heptomino"));
            }
            self.add_hexes(k, false);
        }
    }

    /// Steps 9: heptomino phase from `A_q` to `A_r`.
    fn heptomino_phase(&mut self, i: usize, q: usize, r: usize) {
        let m = self.lookback(i, q);
        for k in q..=r {
            if let Some(t) = self.rw_mid.get(&self.cell(k)).cloned() {
                let ctx = format!("RW-heptomino at A_{k}, lookback A_{}", fmt_index(m));
                self.choose(&t, MarkerRule::IB, MarkerRule::IIB, ctx);
            }
            self.add_hexes(k, true);
        }
    }

    /// Steps 14: pentomino phase from `A_r` to `A_q`.
    fn pentomino_phase(&mut self, i: usize, r: usize, q: usize) {
        let m = self.lookback(i, r);
        for k in r..=q {
            if let Some(w) = self.w_mid.get(&self.cell(k)).cloned() {
                let ctx = format!("W-pentomino at A_{k}, lookback A_{}", fmt_index(m));
                self.choose(&w, MarkerRule::IA, MarkerRule::IIA, ctx);
            }
            self.add_hexes(k, false);
        }
    }
}

fn fmt_index(m: Option<usize>) -> String {
    m.map_or_else(|| "-".to_string(), |m| m.to_string())
}

/// The distinguished set `Y_{i,j}` built by sweeping the cells `A_i … A_j` of
/// `cp` in its current numbering (`A_1` is `cp.cells()[0]`, `A_{n+1} = A_1`).
pub fn y_algorithm(
    cp: &ClosedPath,
    i: usize,
    j: usize,
    strategy: ConflictStrategy,
) -> Result<(BTreeSet<Point>, YProvenance), OrderError> {
    let n = cp.len();
    if i < 1 || i >= j || j > n + 1 {
        return Err(OrderError::IndexOutOfRange { i, j, n });
    }
    let by_middle = |kind| -> BTreeMap<Cell, Configuration> {
        find_configurations(cp, kind)
            .into_iter()
            .map(|c| (c.middle.expect("template has a middle cell"), c))
            .collect()
    };
    let (w_mid, rw_mid) = (by_middle(ConfigKind::WPentomino), by_middle(ConfigKind::RWHeptomino));
    if w_mid.is_empty() || rw_mid.is_empty() {
        return Err(OrderError::MissingConfigurations);
    }
    let mut hexes = find_configurations(cp, ConfigKind::LDSkewHexH);
    hexes.extend(find_configurations(cp, ConfigKind::LDSkewHexV));
    let mut s = Sweep {
        cp,
        strategy,
        w_mid,
        rw_mid,
        hexes,
        y: BTreeSet::new(),
        prov: YProvenance::new(YRule::Algorithm),
    };
    s.prov.start = Some(cp.at(0));

    let Some(mut q) = s.first(i, j, Sweep::is_rw) else {
        s.opening(i, j);
        return Ok((s.y, s.prov));
    };
    s.opening(i, q);
    loop {
        let r = s.first(q + 1, j, Sweep::is_w).unwrap_or(j);
        s.heptomino_phase(i, q, r);
        if r == j {
            break;
        }
        q = s.first(r + 1, j, Sweep::is_rw).unwrap_or(j);
        s.pentomino_phase(i, r, q);
        if q == j {
            break;
        }
    }
    Ok((s.y, s.prov))
}

/// `cp` renumbered so that the cells of its W-pentomino with the least middle
/// cell read `A_1 … A_5` from the bottom up.
pub fn algorithm_numbering(cp: &ClosedPath) -> Option<ClosedPath> {
    let w = find_configurations(cp, ConfigKind::WPentomino)
        .into_iter()
        .min_by_key(|c| c.middle)?;
    let mut bottom_up = w.cells.clone();
    bottom_up.sort_by_key(|c| (c.0.j, c.0.i));
    let (a1, a2) = (bottom_up[0], bottom_up[1]);
    let start = cp.position(a1)?;
    let backwards = cp.at(start as i64 + 1) != a2;
    Some(cp.renumbered(start, backwards))
}

/// Options for [`choose_order`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderOptions {
    pub no_w: NoWVariant,
    pub no_rw: NoRWVariant,
    pub conflicts: ConflictStrategy,
}

/// The order for `cp` given by the first construction that applies.
pub fn choose_order(cp: &ClosedPath, opts: OrderOptions) -> (VertexOrder, YProvenance) {
    let (y, prov) = if let Ok(found) = y_without_w(cp, opts.no_w) {
        found
    } else if let Ok(found) = y_without_rw(cp, opts.no_rw) {
        found
    } else {
        let numbered = algorithm_numbering(cp).expect("a W-pentomino exists");
        y_algorithm(&numbered, 2, cp.len() + 1, opts.conflicts).expect("both configurations exist")
    };
    let ord = VertexOrder::from_y(cp.polyomino(), &y).expect("markers are vertices");
    (ord, prov)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Polyomino {
        Polyomino::from_coords([(0, 0)]).unwrap()
    }

    #[test]
    fn q1_examples() {
        assert_eq!(order_q1(Point::new(1, 2), Point::new(2, 0)), Ordering::Less);
        assert_eq!(order_q1(Point::new(1, 2), Point::new(1, 3)), Ordering::Less);
        assert_eq!(order_q1(Point::new(1, 2), Point::new(1, 2)), Ordering::Equal);
    }

    #[test]
    fn y_order_cases() {
        let p = unit();
        let q1 = VertexOrder::q1(&p);
        let empty = VertexOrder::from_y(&p, &BTreeSet::new()).unwrap();
        let full = VertexOrder::from_y(&p, p.vertices()).unwrap();
        assert_eq!(empty.ascending(), q1.ascending());
        assert_eq!(full.ascending(), q1.ascending());
        let y: BTreeSet<Point> = [Point::new(0, 1)].into();
        let ord = VertexOrder::from_y(&p, &y).unwrap();
        assert!(ord.less(Point::new(1, 1), Point::new(0, 1)));
        assert!(ord.less(Point::new(0, 0), Point::new(1, 1)));
        let bad: BTreeSet<Point> = [Point::new(5, 5)].into();
        assert_eq!(VertexOrder::from_y(&p, &bad), Err(OrderError::YNotSubset(Point::new(5, 5))));
    }

    #[test]
    fn lex_compares_largest_variable_first() {
        let ord = VertexOrder::q1(&unit());
        let diag = Monomial::product([Point::new(0, 0), Point::new(1, 1)]);
        let anti = Monomial::product([Point::new(0, 1), Point::new(1, 0)]);
        assert_eq!(ord.cmp_monomials(&diag, &anti), Ordering::Greater);
        let sq = Monomial::from_exponents([(Point::new(1, 0), 2)]);
        let mixed = Monomial::product([Point::new(1, 0), Point::new(0, 1)]);
        assert_eq!(ord.cmp_monomials(&sq, &mixed), Ordering::Greater);
        assert_eq!(ord.cmp_monomials(&Monomial::var(Point::new(0, 0)), &Monomial::one()), Ordering::Greater);
    }
}
