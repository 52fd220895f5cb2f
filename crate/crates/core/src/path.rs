//! Closed paths and the cell configurations that drive the choice of vertex order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Block, Cell, Direction, Interval, Point, Polyomino};

/// Which defining property of a closed path fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathCondition {
    /// More than five cells.
    Length,
    /// The cells close up into one cyclic sequence (every cell has exactly two
    /// edge-neighbours in the sequence).
    Closure,
    /// Consecutive cells share an edge.
    Adjacency,
    /// Cells are pairwise distinct.
    Distinct,
    /// Cells more than two steps apart share no vertex.
    Separation,
}

impl PathCondition {
    /// Numbering of the four list conditions; the length requirement is 0.
    pub fn index(self) -> u8 {
        match self {
            PathCondition::Length => 0,
            PathCondition::Closure => 1,
            PathCondition::Adjacency => 2,
            PathCondition::Distinct => 3,
            PathCondition::Separation => 4,
        }
    }
}

impl fmt::Display for PathCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PathCondition::Length => "a closed path needs more than five cells",
            PathCondition::Closure => "the cells do not close up into a single cycle",
            PathCondition::Adjacency => "consecutive cells do not share an edge",
            PathCondition::Distinct => "a cell is repeated",
            PathCondition::Separation => "two cells more than two steps apart share a vertex",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("not a closed path (condition {}): {condition}; witness {}", .condition.index(), fmt_cells(.witness))]
    NotClosedPath {
        condition: PathCondition,
        witness: Vec<Cell>,
    },
    #[error("zig-zag search exceeded its budget of {0} nodes")]
    SearchBudget(usize),
}

fn fmt_cells(cells: &[Cell]) -> String {
    cells.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// A validated closed path with a fixed cyclic numbering `A_1, …, A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPath {
    seq: Vec<Cell>,
    poly: Polyomino,
    index: HashMap<Cell, usize>,
}

/// Checks that `p` is a closed path and returns its canonical numbering: the
/// least cell first, then its least neighbour.
pub fn as_closed_path(p: &Polyomino) -> Result<ClosedPath, PathError> {
    let fail = |condition, witness: Vec<Cell>| Err(PathError::NotClosedPath { condition, witness });
    let nbrs = |c: Cell| -> Vec<Cell> {
        let mut v: Vec<Cell> = c.neighbors().into_iter().filter(|n| p.contains(*n)).collect();
        v.sort();
        v
    };
    for &c in p.cells() {
        let ns = nbrs(c);
        if ns.len() < 2 {
            let mut w = vec![c];
            w.extend(ns);
            return fail(PathCondition::Closure, w);
        }
        if ns.len() > 2 {
            // Some neighbour is not consecutive to `c`, yet shares an edge with it.
            let mut w = vec![c];
            w.extend(ns);
            return fail(PathCondition::Separation, w);
        }
    }
    let start = *p.cells().iter().next().unwrap();
    let mut seq = vec![start];
    let mut prev = start;
    let mut cur = nbrs(start)[0];
    while cur != start {
        seq.push(cur);
        let ns = nbrs(cur);
        let next = if ns[0] == prev { ns[1] } else { ns[0] };
        prev = cur;
        cur = next;
    }
    if seq.len() != p.len() {
        // Connected with all degrees two means a single cycle; kept as a guard.
        return fail(PathCondition::Closure, seq);
    }
    let n = seq.len();
    if n <= 5 {
        return fail(PathCondition::Length, seq);
    }
    let mut at: HashMap<Point, Vec<usize>> = HashMap::new();
    for (k, c) in seq.iter().enumerate() {
        for v in c.vertices() {
            at.entry(v).or_default().push(k);
        }
    }
    for ks in at.values() {
        for &x in ks {
            for &y in ks {
                let d = (x as i64 - y as i64).rem_euclid(n as i64) as usize;
                let d = d.min(n - d);
                if d > 2 {
                    let (x, y) = (x.min(y), x.max(y));
                    return fail(PathCondition::Separation, vec![seq[x], seq[y]]);
                }
            }
        }
    }
    let index = seq.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    Ok(ClosedPath {
        seq,
        poly: p.clone(),
        index,
    })
}

impl ClosedPath {
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.seq
    }

    pub fn polyomino(&self) -> &Polyomino {
        &self.poly
    }

    /// Cell at a cyclic 0-based position.
    pub fn at(&self, k: i64) -> Cell {
        self.seq[k.rem_euclid(self.seq.len() as i64) as usize]
    }

    pub fn position(&self, c: Cell) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// The same path renumbered to start at position `start`, optionally walked backwards.
    pub fn renumbered(&self, start: usize, backwards: bool) -> ClosedPath {
        let n = self.seq.len() as i64;
        let seq: Vec<Cell> = (0..n)
            .map(|k| {
                let k = if backwards { start as i64 - k } else { start as i64 + k };
                self.at(k)
            })
            .collect();
        let index = seq.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        ClosedPath {
            seq,
            poly: self.poly.clone(),
            index,
        }
    }

    /// Whether the cells at positions `k..k+len` (cyclic) are exactly `cells`.
    pub fn is_run(&self, k: i64, cells: &[Cell]) -> bool {
        let want: BTreeSet<Cell> = cells.iter().copied().collect();
        let got: BTreeSet<Cell> = (0..cells.len() as i64).map(|t| self.at(k + t)).collect();
        want == got
    }
}

/// The named configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigKind {
    LConfig,
    Ladder(usize),
    ZigZagWalk,
    WPentomino,
    LDSkewTetH,
    LDSkewTetV,
    LDSkewHexH,
    LDSkewHexV,
    RWHeptomino,
}

impl ConfigKind {
    /// The kinds located by template matching.
    pub const SHAPES: [ConfigKind; 6] = [
        ConfigKind::WPentomino,
        ConfigKind::LDSkewTetH,
        ConfigKind::LDSkewTetV,
        ConfigKind::LDSkewHexH,
        ConfigKind::LDSkewHexV,
        ConfigKind::RWHeptomino,
    ];
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::Ladder(n) => write!(f, "Ladder({n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// An occurrence of a configuration, with its named corner points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub cells: Vec<Cell>,
    /// Middle cell of a W-pentomino or RW-heptomino.
    pub middle: Option<Cell>,
    pub markers: BTreeMap<String, Point>,
}

impl Configuration {
    pub fn marker(&self, name: &str) -> Point {
        match self.markers.get(name) {
            Some(&p) => p,
            None => panic!("{} has no marker {name}", self.kind),
        }
    }
}

/// Windows `C_1..C_5` of the path with `C_1,C_2,C_3` and `C_3,C_4,C_5` on orthogonal lines.
pub fn find_l_configurations(cp: &ClosedPath) -> Vec<Configuration> {
    let step = |a: Cell, b: Cell| (b.0.i - a.0.i, b.0.j - a.0.j);
    let mut out = Vec::new();
    for k in 0..cp.len() as i64 {
        let w: Vec<Cell> = (0..5).map(|t| cp.at(k + t)).collect();
        let (d1, d2) = (step(w[0], w[1]), step(w[1], w[2]));
        let (d3, d4) = (step(w[2], w[3]), step(w[3], w[4]));
        if d1 == d2 && d3 == d4 && d1.0 * d3.0 + d1.1 * d3.1 == 0 {
            out.push(Configuration {
                kind: ConfigKind::LConfig,
                cells: w,
                middle: None,
                markers: BTreeMap::new(),
            });
        }
    }
    out
}

/// Two overlapping parallel blocks meet in a unit segment; returns its endpoints.
fn block_overlap(b1: &Block, b2: &Block) -> Option<(Point, Point)> {
    let v1: BTreeSet<Point> = b1.cells().iter().flat_map(|c| c.vertices()).collect();
    let v2: BTreeSet<Point> = b2.cells().iter().flat_map(|c| c.vertices()).collect();
    let common: Vec<Point> = v1.intersection(&v2).copied().collect();
    (common.len() == 2).then(|| (common[0], common[1]))
}

/// Maximal chains of maximal parallel blocks (rank ≥ 2) in which consecutive
/// blocks meet in exactly two vertices and no two consecutive meeting segments
/// lie together on one maximal edge interval. Chains with at least `min_steps` blocks are returned.
pub fn find_ladders(cp: &ClosedPath, min_steps: usize) -> Vec<Configuration> {
    let p = cp.polyomino();
    let mut out = Vec::new();
    let edge_ivs: Vec<_> = p
        .maximal_edge_intervals(Direction::Horizontal)
        .into_iter()
        .chain(p.maximal_edge_intervals(Direction::Vertical))
        .collect();
    let same_line = |s: (Point, Point), t: (Point, Point)| {
        edge_ivs
            .iter()
            .any(|e| e.contains(s.0) && e.contains(s.1) && e.contains(t.0) && e.contains(t.1))
    };
    for dir in [Direction::Horizontal, Direction::Vertical] {
        let blocks: Vec<Block> = p.maximal_blocks(dir).into_iter().filter(|b| b.is_block()).collect();
        let m = blocks.len();
        let mut adj: Vec<Vec<(usize, (Point, Point))>> = vec![Vec::new(); m];
        for x in 0..m {
            for y in 0..m {
                if x != y {
                    if let Some(seg) = block_overlap(&blocks[x], &blocks[y]) {
                        adj[x].push((y, seg));
                    }
                }
            }
        }
        // Enumerate simple chains; keep those that cannot be extended at either end.
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<(Vec<usize>, Vec<(Point, Point)>)> = (0..m).map(|x| (vec![x], vec![])).collect();
        while let Some((chain, segs)) = stack.pop() {
            let last = *chain.last().unwrap();
            let mut extended = false;
            for &(y, seg) in &adj[last] {
                if chain.contains(&y) {
                    continue;
                }
                if let Some(&prev) = segs.last() {
                    if same_line(prev, seg) {
                        continue;
                    }
                }
                extended = true;
                let mut c = chain.clone();
                c.push(y);
                let mut s = segs.clone();
                s.push(seg);
                stack.push((c, s));
            }
            if !extended {
                chains.push(chain);
            }
        }
        // A chain is maximal when no recorded chain strictly contains it as a
        // contiguous piece, in either reading direction.
        let mut keyed: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &chains {
            let mut r = c.clone();
            r.reverse();
            keyed.insert(if r < *c { r } else { c.clone() });
        }
        let all: Vec<Vec<usize>> = keyed.into_iter().collect();
        let contains = |big: &Vec<usize>, small: &Vec<usize>| {
            let mut r = small.clone();
            r.reverse();
            big.len() > small.len()
                && big.windows(small.len()).any(|w| w == small.as_slice() || w == r.as_slice())
        };
        for c in &all {
            if c.len() < min_steps.max(2) || all.iter().any(|d| contains(d, c)) {
                continue;
            }
            out.push(Configuration {
                kind: ConfigKind::Ladder(c.len()),
                cells: c.iter().flat_map(|&x| blocks[x].cells()).collect(),
                middle: None,
                markers: BTreeMap::new(),
            });
        }
    }
    out
}

/// A zig-zag walk: intervals `I_1..I_ℓ` with pivots `v_1..v_ℓ` (`v_{ℓ+1} = v_1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZagWalk {
    pub intervals: Vec<Interval>,
    pub pivots: Vec<Point>,
    pub z_corners: Vec<Point>,
    pub u_corners: Vec<Point>,
}

fn opposite(iv: &Interval, v: Point) -> Point {
    let (lo, hi) = (iv.lo(), iv.hi());
    Point::new(lo.i + hi.i - v.i, lo.j + hi.j - v.j)
}

/// The two corners of `iv` sharing a side with corner `v`.
fn side_neighbours(iv: &Interval, v: Point) -> [Point; 2] {
    let o = opposite(iv, v);
    [Point::new(o.i, v.j), Point::new(v.i, o.j)]
}

fn meet_is_point(x: &Interval, y: &Interval, v: Point) -> bool {
    match x.intersection(y) {
        Some(m) => m.lo() == v && m.hi() == v,
        None => false,
    }
}

struct ZigZagSearch<'a> {
    ivs: &'a [Interval],
    at_corner: HashMap<Point, Vec<usize>>,
    joint: HashMap<(Point, Point), bool>,
    budget: usize,
    nodes: usize,
    first_only: bool,
    found: Vec<ZigZagWalk>,
}

impl ZigZagSearch<'_> {
    /// Whether some inner interval contains both points.
    fn jointly_covered(&mut self, a: Point, b: Point) -> bool {
        let key = (a.min(b), a.max(b));
        if let Some(&v) = self.joint.get(&key) {
            return v;
        }
        let v = self.ivs.iter().any(|iv| iv.contains(a) && iv.contains(b));
        self.joint.insert(key, v);
        v
    }

    fn extend(&mut self, chain: &mut Vec<(usize, Point, Point)>) -> Result<(), PathError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(PathError::SearchBudget(self.budget));
        }
        let (first, v1, _) = chain[0];
        let &(last, _, next) = chain.last().unwrap();
        let candidates = self.at_corner.get(&next).cloned().unwrap_or_default();
        for k in candidates {
            if self.first_only && !self.found.is_empty() {
                return Ok(());
            }
            if k < first || !meet_is_point(&self.ivs[last], &self.ivs[k], next) {
                continue;
            }
            let closing_ok = chain.len() >= 2;
            if k == first {
                continue;
            }
            if chain.iter().any(|&(t, _, _)| t == k) {
                continue;
            }
            let iv = self.ivs[k];
            let z = opposite(&iv, next);
            let mut ok = true;
            for &(t, v, _) in chain.iter() {
                let zt = opposite(&self.ivs[t], v);
                if self.jointly_covered(z, zt) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for w in side_neighbours(&iv, next) {
                if w == v1 {
                    if closing_ok && meet_is_point(&iv, &self.ivs[first], v1) {
                        let mut full = chain.clone();
                        full.push((k, next, w));
                        self.found.push(walk_from(self.ivs, &full));
                    }
                    continue;
                }
                chain.push((k, next, w));
                self.extend(chain)?;
                chain.pop();
            }
        }
        Ok(())
    }
}

fn walk_from(ivs: &[Interval], chain: &[(usize, Point, Point)]) -> ZigZagWalk {
    ZigZagWalk {
        intervals: chain.iter().map(|&(k, _, _)| ivs[k]).collect(),
        pivots: chain.iter().map(|&(_, v, _)| v).collect(),
        z_corners: chain.iter().map(|&(k, v, _)| opposite(&ivs[k], v)).collect(),
        u_corners: chain.iter().map(|&(k, _, w)| opposite(&ivs[k], w)).collect(),
    }
}

/// Default node budget of the zig-zag search.
pub const ZIGZAG_BUDGET: usize = 2_000_000;

fn zigzag_search(cp: &ClosedPath, first_only: bool, budget: usize) -> Result<Vec<ZigZagWalk>, PathError> {
    let ivs = cp.polyomino().inner_intervals();
    let mut at_corner: HashMap<Point, Vec<usize>> = HashMap::new();
    for (k, iv) in ivs.iter().enumerate() {
        for v in iv.corner_points() {
            at_corner.entry(v).or_default().push(k);
        }
    }
    let mut s = ZigZagSearch {
        ivs: &ivs,
        at_corner,
        joint: HashMap::new(),
        budget,
        nodes: 0,
        first_only,
        found: Vec::new(),
    };
    for (k, iv) in ivs.iter().enumerate() {
        for v in iv.corner_points() {
            for w in side_neighbours(iv, v) {
                if first_only && !s.found.is_empty() {
                    return Ok(s.found);
                }
                let mut chain = vec![(k, v, w)];
                s.extend(&mut chain)?;
            }
        }
    }
    Ok(s.found)
}

/// Every zig-zag walk of the path, each listed once up to cyclic rotation
/// (the walk starts at its least interval). Both reading directions are kept,
/// since reversing a walk swaps the roles of its `z` and `u` corners.
pub fn find_zigzag_walks(cp: &ClosedPath) -> Result<Vec<ZigZagWalk>, PathError> {
    zigzag_search(cp, false, ZIGZAG_BUDGET)
}

/// Whether the path has at least one zig-zag walk.
pub fn has_zigzag_walk(cp: &ClosedPath) -> Result<bool, PathError> {
    Ok(!zigzag_search(cp, true, ZIGZAG_BUDGET)?.is_empty())
}

/// Both sides of the primality criterion, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZagCheck {
    pub no_zigzag: bool,
    pub lconf_or_ladder3: bool,
    pub agree: bool,
}

pub fn no_zigzag_equivalence(cp: &ClosedPath) -> Result<ZigZagCheck, PathError> {
    let no_zigzag = !has_zigzag_walk(cp)?;
    let lconf_or_ladder3 = !find_l_configurations(cp).is_empty() || !find_ladders(cp, 3).is_empty();
    Ok(ZigZagCheck {
        no_zigzag,
        lconf_or_ladder3,
        agree: no_zigzag == lconf_or_ladder3,
    })
}

/// A configuration shape anchored at a cell `(p, q)`: cell offsets and marker-point offsets.
struct Template {
    kind: ConfigKind,
    middle: Option<(i64, i64)>,
    cells: &'static [(i64, i64)],
    markers: &'static [(&'static str, (i64, i64))],
}

// Anchors: the middle cell for pentomino and heptomino shapes, the upper cell
// `B_1` of the lower block for horizontal skew shapes, the top cell `B_1` of the
// left block for vertical ones.
const TEMPLATES: &[Template] = &[
    // Horizontal pair below-left of the middle cell, vertical pair to its right.
    Template {
        kind: ConfigKind::WPentomino,
        middle: Some((0, 0)),
        cells: &[(-1, -1), (0, -1), (0, 0), (1, 0), (1, 1)],
        markers: &[("x_W", (0, 1)), ("y_W", (1, -1)), ("z_W", (2, 0))],
    },
    Template {
        kind: ConfigKind::LDSkewTetH,
        middle: None,
        cells: &[(-1, 0), (0, 0), (0, 1), (1, 1)],
        markers: &[("x_C", (0, 2)), ("y_C", (1, 2)), ("a_C", (0, 0)), ("b_C", (1, 0))],
    },
    Template {
        kind: ConfigKind::LDSkewTetV,
        middle: None,
        cells: &[(0, -1), (0, 0), (1, 0), (1, 1)],
        markers: &[("x_C", (0, 1)), ("y_C", (0, 0)), ("a_C", (2, 1)), ("b_C", (2, 0))],
    },
    Template {
        kind: ConfigKind::LDSkewHexH,
        middle: None,
        cells: &[(-2, 0), (-1, 0), (0, 0), (0, 1), (1, 1), (2, 1)],
        markers: &[("x_D", (0, 2)), ("y_D", (1, 2)), ("a_D", (0, 0)), ("b_D", (1, 0))],
    },
    Template {
        kind: ConfigKind::LDSkewHexV,
        middle: None,
        cells: &[(0, -2), (0, -1), (0, 0), (1, 0), (1, 1), (1, 2)],
        markers: &[("x_D", (0, 1)), ("y_D", (0, 0)), ("a_D", (2, 1)), ("b_D", (2, 0))],
    },
    // Vertical triple left of the middle cell, horizontal triple above-right.
    Template {
        kind: ConfigKind::RWHeptomino,
        middle: Some((0, 0)),
        cells: &[(-1, -2), (-1, -1), (-1, 0), (0, 0), (0, 1), (1, 1), (2, 1)],
        markers: &[("x_T", (1, 0)), ("y_T", (-1, 1)), ("z_T", (0, 2))],
    },
];

/// Every occurrence of `kind` in the path (template kinds only), sorted by cells.
pub fn find_configurations(cp: &ClosedPath, kind: ConfigKind) -> Vec<Configuration> {
    find_configurations_in(cp.polyomino(), kind)
}

/// [`find_configurations`] for an arbitrary polyomino.
pub fn find_configurations_in(p: &Polyomino, kind: ConfigKind) -> Vec<Configuration> {
    let mut out = Vec::new();
    for t in TEMPLATES.iter().filter(|t| t.kind == kind) {
        for &anchor in p.cells() {
            let cells: Vec<Cell> = t.cells.iter().map(|&(di, dj)| anchor.offset(di, dj)).collect();
            if !cells.iter().all(|c| p.contains(*c)) {
                continue;
            }
            let o = anchor.lower_left();
            out.push(Configuration {
                kind,
                cells,
                middle: t.middle.map(|(di, dj)| anchor.offset(di, dj)),
                markers: t
                    .markers
                    .iter()
                    .map(|&(name, (di, dj))| (name.to_string(), o.offset(di, dj)))
                    .collect(),
            });
        }
    }
    out.sort_by(|a, b| a.cells.cmp(&b.cells));
    out
}

/// Every template configuration of the path, grouped by kind.
pub fn census(cp: &ClosedPath) -> BTreeMap<ConfigKind, Vec<Configuration>> {
    ConfigKind::SHAPES.iter().map(|&k| (k, find_configurations(cp, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ring(w: i64, h: i64) -> Polyomino {
        let mut cells = Vec::new();
        for i in 0..w {
            for j in 0..h {
                if i == 0 || j == 0 || i == w - 1 || j == h - 1 {
                    cells.push((i, j));
                }
            }
        }
        Polyomino::from_coords(cells).unwrap()
    }

    #[test]
    fn ring_is_closed_path() {
        let cp = as_closed_path(&ring(3, 3)).unwrap();
        assert_eq!(cp.len(), 8);
        assert_eq!(cp.cells()[0], Cell::new(0, 0));
        assert_eq!(cp.cells()[1], Cell::new(0, 1));
        for k in 0..8 {
            assert!(cp.at(k).shares_edge(cp.at(k + 1)));
        }
        let again = as_closed_path(&Polyomino::new(cp.cells().iter().copied()).unwrap()).unwrap();
        assert_eq!(again.cells(), cp.cells());
    }

    #[test]
    fn rejects_non_paths() {
        let square = Polyomino::from_coords([(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        match as_closed_path(&square) {
            Err(PathError::NotClosedPath { condition, .. }) => assert_eq!(condition, PathCondition::Length),
            other => panic!("unexpected {other:?}"),
        }
        let strip = Polyomino::from_coords((0..7).map(|i| (i, 0))).unwrap();
        match as_closed_path(&strip) {
            Err(PathError::NotClosedPath { condition, witness }) => {
                assert_eq!(condition, PathCondition::Closure);
                assert_eq!(witness[0], Cell::new(0, 0));
            }
            other => panic!("unexpected {other:?}"),
        }
        // A 3×4 ring with its middle row filled: two cells have three neighbours.
        let mut cells: Vec<(i64, i64)> = ring(3, 4).cells().iter().map(|c| (c.0.i, c.0.j)).collect();
        cells.push((1, 1));
        let p = Polyomino::from_coords(cells).unwrap();
        assert!(matches!(
            as_closed_path(&p),
            Err(PathError::NotClosedPath { condition: PathCondition::Separation, .. })
        ));
    }

    #[test]
    fn ring_has_four_l_configurations_and_no_zigzag() {
        let cp = as_closed_path(&ring(3, 3)).unwrap();
        assert_eq!(find_l_configurations(&cp).len(), 4);
        assert!(find_zigzag_walks(&cp).unwrap().is_empty());
        assert!(find_ladders(&cp, 3).is_empty());
        let check = no_zigzag_equivalence(&cp).unwrap();
        assert_eq!(
            check,
            ZigZagCheck {
                no_zigzag: true,
                lconf_or_ladder3: true,
                agree: true
            }
        );
        let big = as_closed_path(&ring(5, 4)).unwrap();
        assert_eq!(find_l_configurations(&big).len(), 4);
        assert!(find_ladders(&big, 2).is_empty());
    }

    /// A ring of four staircases with `k` steps each.
    fn diamond(k: usize) -> ClosedPath {
        let sides = [((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))];
        let mut at = (0, 0);
        let mut cells = Vec::new();
        for (a, b) in sides {
            for _ in 0..k {
                for d in [a, b] {
                    cells.push(at);
                    at = (at.0 + d.0, at.1 + d.1);
                }
            }
        }
        as_closed_path(&Polyomino::from_coords(cells).unwrap()).unwrap()
    }

    #[test]
    fn short_staircase_ring_has_a_zigzag_walk() {
        let cp = diamond(2);
        assert_eq!(cp.len(), 16);
        assert!(find_l_configurations(&cp).is_empty());
        assert!(find_ladders(&cp, 3).is_empty());
        let walks = find_zigzag_walks(&cp).unwrap();
        assert!(!walks.is_empty());
        let ivs = cp.polyomino().inner_intervals();
        for w in &walks {
            let l = w.intervals.len();
            for t in 0..l {
                let (a, b) = (w.intervals[t], w.intervals[(t + 1) % l]);
                assert!(ivs.contains(&a));
                let meet = a.intersection(&b).unwrap();
                assert_eq!((meet.lo(), meet.hi()), (w.pivots[(t + 1) % l], w.pivots[(t + 1) % l]));
            }
        }
        let check = no_zigzag_equivalence(&cp).unwrap();
        assert_eq!((check.no_zigzag, check.lconf_or_ladder3, check.agree), (false, false, true));
    }

    #[test]
    fn longer_staircases_are_ladders() {
        let cp = diamond(3);
        assert!(find_l_configurations(&cp).is_empty());
        let ladders = find_ladders(&cp, 3);
        assert!(!ladders.is_empty());
        assert!(ladders.iter().all(|c| matches!(c.kind, ConfigKind::Ladder(s) if s >= 3)));
        let check = no_zigzag_equivalence(&cp).unwrap();
        assert_eq!((check.no_zigzag, check.lconf_or_ladder3, check.agree), (true, true, true));
    }

    #[test]
    fn no_heptomino_in_small_ring() {
        let cp = as_closed_path(&ring(3, 3)).unwrap();
        assert!(find_configurations(&cp, ConfigKind::RWHeptomino).is_empty());
    }

    #[test]
    fn markers_are_vertices_and_translate() {
        let cp = as_closed_path(&ring(5, 5)).unwrap();
        let moved = as_closed_path(&cp.polyomino().translate(3, -2)).unwrap();
        for kind in ConfigKind::SHAPES {
            let a = find_configurations(&cp, kind);
            let b = find_configurations(&moved, kind);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                for (name, p) in &x.markers {
                    assert!(cp.polyomino().is_vertex(*p));
                    assert_eq!(y.markers[name], p.offset(3, -2));
                }
            }
        }
    }
}
