//! Cells, intervals, blocks and edge intervals of polyominoes in ℤ².
//!
//! A cell is identified by its lower-left corner. Everything derived from a
//! [`Polyomino`] (vertices, inner intervals, blocks, holes) is returned in
//! lexicographic coordinate order so that reports are reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a polyomino needs at least one cell")]
    EmptyCollection,
    #[error("cells {0} and {1} are not connected")]
    Disconnected(Cell, Cell),
    #[error("interval [{0}, {1}] is not proper")]
    NotProper(Point, Point),
    #[error("interval endpoints {0} and {1} are not ordered componentwise")]
    Unordered(Point, Point),
}

/// A lattice point `(i, j)`: `i` is the column, `j` the row.
///
/// The derived ordering is column first, then row, which is exactly the
/// vertex order `<¹` used as the base tie-break of every vertex order.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Point {
    pub i: i64,
    pub j: i64,
}

impl Point {
    pub const fn new(i: i64, j: i64) -> Self {
        Point { i, j }
    }

    pub fn offset(self, di: i64, dj: i64) -> Self {
        Point::new(self.i + di, self.j + dj)
    }

    /// Componentwise `≤`.
    pub fn le(self, other: Point) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    /// Quarter turn counter-clockwise about the origin.
    pub fn rotate(self) -> Self {
        Point::new(-self.j, self.i)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl From<(i64, i64)> for Point {
    fn from((i, j): (i64, i64)) -> Self {
        Point::new(i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    /// Unit step along the direction.
    pub fn step(self) -> (i64, i64) {
        match self {
            Direction::Horizontal => (1, 0),
            Direction::Vertical => (0, 1),
        }
    }

    pub fn other(self) -> Self {
        match self {
            Direction::Horizontal => Direction::Vertical,
            Direction::Vertical => Direction::Horizontal,
        }
    }
}

/// Diagonal corners `a, b` and anti-diagonal corners `c, d` of a proper interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Corners {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
}

/// The interval `[lo, hi] = {(m, n) : lo.i ≤ m ≤ hi.i, lo.j ≤ n ≤ hi.j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    lo: Point,
    hi: Point,
}

impl Interval {
    pub fn new(lo: Point, hi: Point) -> Result<Self, LatticeError> {
        if !lo.le(hi) {
            return Err(LatticeError::Unordered(lo, hi));
        }
        Ok(Interval { lo, hi })
    }

    /// A proper interval, rejecting degenerate and unordered endpoints.
    pub fn proper(lo: Point, hi: Point) -> Result<Self, LatticeError> {
        let iv = Interval::new(lo, hi)?;
        if !iv.is_proper() {
            return Err(LatticeError::NotProper(lo, hi));
        }
        Ok(iv)
    }

    /// Smallest interval containing both points.
    pub fn spanning(p: Point, q: Point) -> Self {
        Interval {
            lo: Point::new(p.i.min(q.i), p.j.min(q.j)),
            hi: Point::new(p.i.max(q.i), p.j.max(q.j)),
        }
    }

    pub fn lo(&self) -> Point {
        self.lo
    }

    pub fn hi(&self) -> Point {
        self.hi
    }

    pub fn is_proper(&self) -> bool {
        self.lo.i < self.hi.i && self.lo.j < self.hi.j
    }

    pub fn width(&self) -> i64 {
        self.hi.i - self.lo.i
    }

    pub fn height(&self) -> i64 {
        self.hi.j - self.lo.j
    }

    pub fn corners(&self) -> Result<Corners, LatticeError> {
        if !self.is_proper() {
            return Err(LatticeError::NotProper(self.lo, self.hi));
        }
        Ok(Corners {
            a: self.lo,
            b: self.hi,
            c: Point::new(self.lo.i, self.hi.j),
            d: Point::new(self.hi.i, self.lo.j),
        })
    }

    /// The four corner points (with repetitions collapsed for degenerate intervals).
    pub fn corner_points(&self) -> BTreeSet<Point> {
        [
            self.lo,
            self.hi,
            Point::new(self.lo.i, self.hi.j),
            Point::new(self.hi.i, self.lo.j),
        ]
        .into_iter()
        .collect()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.lo.le(p) && p.le(self.hi)
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains(other.lo) && self.contains(other.hi)
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = Point::new(self.lo.i.max(other.lo.i), self.lo.j.max(other.lo.j));
        let hi = Point::new(self.hi.i.min(other.hi.i), self.hi.j.min(other.hi.j));
        lo.le(hi).then_some(Interval { lo, hi })
    }

    /// Cells of the cell interval attached to this interval.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.lo.i..self.hi.i)
            .flat_map(move |i| (self.lo.j..self.hi.j).map(move |j| Cell::new(i, j)))
    }

    pub fn rotate(&self) -> Self {
        Interval::spanning(self.lo.rotate(), self.hi.rotate())
    }

    pub fn translate(&self, di: i64, dj: i64) -> Self {
        Interval {
            lo: self.lo.offset(di, dj),
            hi: self.hi.offset(di, dj),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A unit cell `[a, a + (1,1)]`, identified by its lower-left corner `a`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Cell(pub Point);

impl Cell {
    pub const fn new(i: i64, j: i64) -> Self {
        Cell(Point::new(i, j))
    }

    pub fn lower_left(self) -> Point {
        self.0
    }

    pub fn lower_right(self) -> Point {
        self.0.offset(1, 0)
    }

    pub fn upper_left(self) -> Point {
        self.0.offset(0, 1)
    }

    pub fn upper_right(self) -> Point {
        self.0.offset(1, 1)
    }

    pub fn vertices(self) -> [Point; 4] {
        [
            self.lower_left(),
            self.lower_right(),
            self.upper_left(),
            self.upper_right(),
        ]
    }

    pub fn edges(self) -> [Edge; 4] {
        [
            Edge::new(self.lower_left(), self.upper_left()),
            Edge::new(self.upper_left(), self.upper_right()),
            Edge::new(self.lower_right(), self.upper_right()),
            Edge::new(self.lower_left(), self.lower_right()),
        ]
    }

    pub fn interval(self) -> Interval {
        Interval {
            lo: self.lower_left(),
            hi: self.upper_right(),
        }
    }

    pub fn offset(self, di: i64, dj: i64) -> Self {
        Cell(self.0.offset(di, dj))
    }

    /// The four edge-adjacent cells (west, east, south, north).
    pub fn neighbors(self) -> [Cell; 4] {
        [
            self.offset(-1, 0),
            self.offset(1, 0),
            self.offset(0, -1),
            self.offset(0, 1),
        ]
    }

    pub fn shares_edge(self, other: Cell) -> bool {
        let di = (self.0.i - other.0.i).abs();
        let dj = (self.0.j - other.0.j).abs();
        di + dj == 1
    }

    pub fn shares_vertex(self, other: Cell) -> bool {
        (self.0.i - other.0.i).abs() <= 1 && (self.0.j - other.0.j).abs() <= 1
    }

    /// Quarter turn counter-clockwise of the unit square, re-anchored at its new lower-left corner.
    pub fn rotate(self) -> Self {
        Cell(self.interval().rotate().lo())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell{}", self.0)
    }
}

/// A unit segment between two lattice points, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(Point, Point);

impl Edge {
    pub fn new(p: Point, q: Point) -> Self {
        if p <= q {
            Edge(p, q)
        } else {
            Edge(q, p)
        }
    }

    pub fn endpoints(&self) -> (Point, Point) {
        (self.0, self.1)
    }
}

/// A maximal run of cells in one row or column.
///
/// Rank-1 runs are reported too; [`Block::is_block`] tells whether the run is a
/// block in the strict sense (rank at least two).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub first: Cell,
    pub last: Cell,
    pub direction: Direction,
}

impl Block {
    pub fn rank(&self) -> usize {
        let d = match self.direction {
            Direction::Horizontal => self.last.0.i - self.first.0.i,
            Direction::Vertical => self.last.0.j - self.first.0.j,
        };
        d as usize + 1
    }

    pub fn is_block(&self) -> bool {
        self.rank() >= 2
    }

    pub fn cells(&self) -> Vec<Cell> {
        let (di, dj) = self.direction.step();
        (0..self.rank() as i64)
            .map(|k| self.first.offset(k * di, k * dj))
            .collect()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.interval().contains_interval(&cell.interval())
    }

    pub fn interval(&self) -> Interval {
        Interval::spanning(self.first.lower_left(), self.last.upper_right())
    }
}

/// A horizontal or vertical run of unit edges of a polyomino.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeInterval {
    pub start: Point,
    pub end: Point,
    pub direction: Direction,
    pub maximal: bool,
}

impl EdgeInterval {
    pub fn len(&self) -> i64 {
        (self.end.i - self.start.i) + (self.end.j - self.start.j)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: Point) -> bool {
        Interval::spanning(self.start, self.end).contains(p)
    }
}

/// A finite, edge-connected, non-empty set of cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyomino {
    cells: BTreeSet<Cell>,
    vertices: BTreeSet<Point>,
}

impl Polyomino {
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self, LatticeError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        let first = *cells.iter().next().ok_or(LatticeError::EmptyCollection)?;
        let reached = flood(first, |c| cells.contains(&c));
        if reached.len() != cells.len() {
            let stray = cells.iter().find(|c| !reached.contains(c)).copied().unwrap();
            return Err(LatticeError::Disconnected(first, stray));
        }
        let vertices = cells.iter().flat_map(|c| c.vertices()).collect();
        Ok(Polyomino { cells, vertices })
    }

    pub fn from_coords<I: IntoIterator<Item = (i64, i64)>>(coords: I) -> Result<Self, LatticeError> {
        Polyomino::new(coords.into_iter().map(|(i, j)| Cell::new(i, j)))
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn vertices(&self) -> &BTreeSet<Point> {
        &self.vertices
    }

    pub fn is_vertex(&self, p: Point) -> bool {
        self.vertices.contains(&p)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.cells.iter().flat_map(|c| c.edges()).collect()
    }

    pub fn has_edge(&self, p: Point, q: Point) -> bool {
        // A unit edge belongs to E(P) iff one of the two cells it bounds is in P.
        let e = Edge::new(p, q);
        let (lo, hi) = e.endpoints();
        if lo.j == hi.j && hi.i - lo.i == 1 {
            self.contains(Cell(lo)) || self.contains(Cell(lo.offset(0, -1)))
        } else if lo.i == hi.i && hi.j - lo.j == 1 {
            self.contains(Cell(lo)) || self.contains(Cell(lo.offset(-1, 0)))
        } else {
            false
        }
    }

    /// Lower-left and upper-right corners of the bounding box of the vertex set.
    pub fn bounding_box(&self) -> Interval {
        let lo_i = self.vertices.iter().map(|p| p.i).min().unwrap();
        let lo_j = self.vertices.iter().map(|p| p.j).min().unwrap();
        let hi_i = self.vertices.iter().map(|p| p.i).max().unwrap();
        let hi_j = self.vertices.iter().map(|p| p.j).max().unwrap();
        Interval {
            lo: Point::new(lo_i, lo_j),
            hi: Point::new(hi_i, hi_j),
        }
    }

    /// `[a, b]` is inner when every cell of its cell interval is in `P`.
    pub fn is_inner(&self, iv: &Interval) -> bool {
        iv.is_proper() && iv.cells().all(|c| self.contains(c))
    }

    /// Every inner interval of `P`, sorted by `(lo, hi)`.
    pub fn inner_intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for &start in &self.cells {
            // Grow a rectangle anchored at `start`: for each width keep the
            // largest height whose rows are all present.
            let mut max_height = i64::MAX;
            let mut w = 0;
            while self.contains(start.offset(w, 0)) && max_height > 0 {
                let mut h = 0;
                while h < max_height && self.contains(start.offset(w, h)) {
                    h += 1;
                }
                max_height = max_height.min(h);
                for hh in 1..=max_height {
                    out.push(Interval {
                        lo: start.lower_left(),
                        hi: start.lower_left().offset(w + 1, hh),
                    });
                }
                w += 1;
            }
        }
        out.sort();
        out
    }

    /// Maximal runs of cells in the given direction; every cell lies in exactly one run.
    pub fn maximal_blocks(&self, direction: Direction) -> Vec<Block> {
        let (di, dj) = direction.step();
        let mut out = Vec::new();
        for &c in &self.cells {
            if self.contains(c.offset(-di, -dj)) {
                continue;
            }
            let mut last = c;
            while self.contains(last.offset(di, dj)) {
                last = last.offset(di, dj);
            }
            out.push(Block {
                first: c,
                last,
                direction,
            });
        }
        out.sort();
        out
    }

    /// The maximal block in `direction` that contains `cell`.
    pub fn block_of(&self, cell: Cell, direction: Direction) -> Option<Block> {
        if !self.contains(cell) {
            return None;
        }
        let (di, dj) = direction.step();
        let mut first = cell;
        while self.contains(first.offset(-di, -dj)) {
            first = first.offset(-di, -dj);
        }
        let mut last = cell;
        while self.contains(last.offset(di, dj)) {
            last = last.offset(di, dj);
        }
        Some(Block {
            first,
            last,
            direction,
        })
    }

    /// Maximal horizontal or vertical edge intervals.
    pub fn maximal_edge_intervals(&self, direction: Direction) -> Vec<EdgeInterval> {
        let (di, dj) = direction.step();
        let mut out = Vec::new();
        for &p in &self.vertices {
            let prev = p.offset(-di, -dj);
            let next = p.offset(di, dj);
            if self.has_edge(prev, p) || !self.has_edge(p, next) {
                continue;
            }
            let mut end = next;
            while self.has_edge(end, end.offset(di, dj)) {
                end = end.offset(di, dj);
            }
            out.push(EdgeInterval {
                start: p,
                end,
                direction,
                maximal: true,
            });
        }
        out.sort();
        out
    }

    /// The maximal edge interval in `direction` through `p`, if any edge of `P` in that direction touches `p`.
    pub fn edge_interval_through(&self, p: Point, direction: Direction) -> Option<EdgeInterval> {
        let (di, dj) = direction.step();
        let mut start = p;
        while self.has_edge(start.offset(-di, -dj), start) {
            start = start.offset(-di, -dj);
        }
        let mut end = p;
        while self.has_edge(end, end.offset(di, dj)) {
            end = end.offset(di, dj);
        }
        (start != end).then_some(EdgeInterval {
            start,
            end,
            direction,
            maximal: true,
        })
    }

    /// Finite maximal edge-connected components of the complement.
    pub fn holes(&self) -> Vec<BTreeSet<Cell>> {
        let bb = self.bounding_box();
        // One ring of cells beyond the bounding box belongs to the unbounded component.
        let lo = bb.lo().offset(-1, -1);
        let hi = bb.hi();
        let inside = |c: Cell| {
            let p = c.lower_left();
            lo.i <= p.i && p.i <= hi.i && lo.j <= p.j && p.j <= hi.j
        };
        let free = |c: Cell| inside(c) && !self.contains(c);
        let outer = flood(Cell(lo), free);
        let mut seen: BTreeSet<Cell> = outer;
        let mut holes = Vec::new();
        for i in lo.i..=hi.i {
            for j in lo.j..=hi.j {
                let c = Cell::new(i, j);
                if free(c) && !seen.contains(&c) {
                    let comp = flood(c, free);
                    seen.extend(comp.iter().copied());
                    holes.push(comp);
                }
            }
        }
        holes.sort();
        holes
    }

    pub fn is_simple(&self) -> bool {
        self.holes().is_empty()
    }

    /// Translation moving the lower-left corner of the bounding box to the origin.
    pub fn normalize(&self) -> Polyomino {
        let lo = self.bounding_box().lo();
        self.translate(-lo.i, -lo.j)
    }

    pub fn translate(&self, di: i64, dj: i64) -> Polyomino {
        Polyomino::new(self.cells.iter().map(|c| c.offset(di, dj))).expect("translation preserves validity")
    }

    /// Quarter turn counter-clockwise about the origin.
    pub fn rotate(&self) -> Polyomino {
        Polyomino::new(self.cells.iter().map(|c| c.rotate())).expect("rotation preserves validity")
    }

    /// True when no 2×2 square of cells is contained in `P`.
    pub fn is_thin(&self) -> bool {
        !self.cells.iter().any(|&c| {
            self.contains(c.offset(1, 0)) && self.contains(c.offset(0, 1)) && self.contains(c.offset(1, 1))
        })
    }

    /// For every vertex, the pair (vertical, horizontal) of maximal edge
    /// intervals through it, as indices into the sorted interval lists.
    pub fn edge_interval_labels(&self) -> BTreeMap<Point, (usize, usize)> {
        let vert = self.maximal_edge_intervals(Direction::Vertical);
        let horiz = self.maximal_edge_intervals(Direction::Horizontal);
        self.vertices
            .iter()
            .map(|&p| {
                let v = vert.iter().position(|e| e.contains(p)).expect("every vertex lies on a vertical edge");
                let h = horiz.iter().position(|e| e.contains(p)).expect("every vertex lies on a horizontal edge");
                (p, (v, h))
            })
            .collect()
    }
}

/// Breadth-first flood fill over edge-adjacent cells accepted by `inside`.
fn flood<F: Fn(Cell) -> bool>(start: Cell, inside: F) -> BTreeSet<Cell> {
    let mut seen = BTreeSet::new();
    if !inside(start) {
        return seen;
    }
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbors() {
            if inside(n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}
