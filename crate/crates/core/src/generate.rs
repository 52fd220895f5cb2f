//! Seeded random closed paths.
//!
//! Start from a rectangular ring of the requested length and apply local
//! moves (corner flips, bumps and their inverses), keeping only moves whose
//! result is still a closed path. Thin polyominoes for negative controls are
//! grown cell by cell.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Cell, Polyomino};
use crate::path::{as_closed_path, find_configurations, find_l_configurations, find_ladders, ClosedPath, ConfigKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("closed paths have an even number of cells, at least 8 (asked for {0})")]
    Unsatisfiable(usize),
    #[error("no closed path meeting the constraints after {0} attempts")]
    GenerationTimeout(usize),
}

/// Optional requirements on a generated path: `Some(true)` forces the feature, `Some(false)` forbids it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraints {
    pub l_configuration: Option<bool>,
    pub ladder3: Option<bool>,
    pub w_pentomino: Option<bool>,
    pub rw_heptomino: Option<bool>,
}

impl Constraints {
    pub fn accepts(&self, cp: &ClosedPath) -> bool {
        let want = |flag: Option<bool>, has: &dyn Fn() -> bool| flag.map_or(true, |f| f == has());
        want(self.l_configuration, &|| !find_l_configurations(cp).is_empty())
            && want(self.ladder3, &|| !find_ladders(cp, 3).is_empty())
            && want(self.w_pentomino, &|| !find_configurations(cp, ConfigKind::WPentomino).is_empty())
            && want(self.rw_heptomino, &|| !find_configurations(cp, ConfigKind::RWHeptomino).is_empty())
    }
}

/// Attempts made before giving up on the constraints.
pub const MAX_ATTEMPTS: usize = 400;

/// A random closed path with exactly `n` cells, reproducible from `seed`.
pub fn random_closed_path(n: usize, seed: u64, constraints: &Constraints) -> Result<ClosedPath, GenerateError> {
    if n < 8 || n % 2 == 1 {
        return Err(GenerateError::Unsatisfiable(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let cp = one_path(n, &mut rng);
        if constraints.accepts(&cp) {
            return Ok(cp);
        }
    }
    Err(GenerateError::GenerationTimeout(MAX_ATTEMPTS))
}

fn rectangle_ring(w: i64, h: i64) -> BTreeSet<Cell> {
    let mut cells = BTreeSet::new();
    for i in 0..w {
        for j in 0..h {
            if i == 0 || j == 0 || i == w - 1 || j == h - 1 {
                cells.insert(Cell::new(i, j));
            }
        }
    }
    cells
}

fn validate(cells: &BTreeSet<Cell>) -> Option<ClosedPath> {
    let p = Polyomino::new(cells.iter().copied()).ok()?;
    as_closed_path(&p).ok()
}

const DIRS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// One candidate move at a random position; `None` when it breaks the path.
fn propose(cp: &ClosedPath, rng: &mut ChaCha8Rng) -> Option<BTreeSet<Cell>> {
    let n = cp.len() as i64;
    let k = rng.gen_range(0..n);
    let (prev, cur, next) = (cp.at(k - 1), cp.at(k), cp.at(k + 1));
    let mut cells: BTreeSet<Cell> = cp.cells().iter().copied().collect();
    let d1 = (cur.0.i - prev.0.i, cur.0.j - prev.0.j);
    let d2 = (next.0.i - cur.0.i, next.0.j - cur.0.j);
    match rng.gen_range(0..3) {
        // Corner flip: move a turning cell to the opposite corner of its 2×2 square.
        0 if d1 != d2 => {
            let flipped = Cell::new(prev.0.i + next.0.i - cur.0.i, prev.0.j + next.0.j - cur.0.j);
            cells.remove(&cur);
            cells.insert(flipped);
        }
        // Bump: replace a straight cell by a three-cell detour.
        1 if d1 == d2 => {
            let &&(ei, ej) = DIRS.iter().filter(|e| e.0 * d1.0 + e.1 * d1.1 == 0).collect::<Vec<_>>().choose(rng)?;
            cells.remove(&cur);
            for c in [prev, cur, next] {
                cells.insert(c.offset(ei, ej));
            }
        }
        // Flatten: undo a bump whose apex is `cur`.
        2 if d1 == d2 => {
            let (pp, nn) = (cp.at(k - 2), cp.at(k + 2));
            let e = (prev.0.i - pp.0.i, prev.0.j - pp.0.j);
            if (nn.0.i - next.0.i, nn.0.j - next.0.j) != (-e.0, -e.1) || e.0 * d1.0 + e.1 * d1.1 != 0 {
                return None;
            }
            for c in [prev, cur, next] {
                cells.remove(&c);
            }
            cells.insert(cur.offset(-e.0, -e.1));
        }
        _ => return None,
    }
    Some(cells)
}

fn one_path(n: usize, rng: &mut ChaCha8Rng) -> ClosedPath {
    let half = (n as i64 + 4) / 2;
    let w = rng.gen_range(3..=half - 3);
    let mut cp = validate(&rectangle_ring(w, half - w)).expect("rectangular rings are closed paths");
    let slack = 4usize;
    let steps = 30 * n;
    let mut t = 0;
    while t < steps || cp.len() != n {
        t += 1;
        if t > 50 * steps {
            break;
        }
        let Some(cells) = propose(&cp, rng) else { continue };
        let len = cells.len();
        if len > n + slack || len + slack < n {
            continue;
        }
        if t >= steps && len.abs_diff(n) > cp.len().abs_diff(n) {
            continue;
        }
        if let Some(next) = validate(&cells) {
            cp = next;
        }
    }
    if cp.len() == n {
        cp
    } else {
        validate(&rectangle_ring(w, half - w)).unwrap()
    }
}

/// A random thin polyomino (no 2×2 square of cells) grown cell by cell from
/// the origin, with between `min_cells` and `max_cells` cells. Growth stops
/// early when 100 proposals in a row are rejected.
pub fn random_thin_polyomino(min_cells: usize, max_cells: usize, seed: u64) -> Polyomino {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(min_cells.max(1)..=max_cells.max(min_cells).max(1));
    let mut cells: BTreeSet<Cell> = [Cell::new(0, 0)].into();
    let mut stuck = 0;
    while cells.len() < n && stuck < 100 {
        let all: Vec<Cell> = cells.iter().copied().collect();
        let c = *all.choose(&mut rng).expect("at least one cell");
        let nb = c.neighbors()[rng.gen_range(0..4)];
        if cells.contains(&nb) {
            stuck += 1;
            continue;
        }
        let mut grown = cells.clone();
        grown.insert(nb);
        if Polyomino::new(grown.iter().copied()).expect("growth keeps it connected").is_thin() {
            cells = grown;
        } else {
            stuck += 1;
        }
    }
    Polyomino::new(cells).expect("connected by construction")
}
