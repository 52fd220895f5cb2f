//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use polyomino_gb::groebner::generators;
use polyomino_gb::lattice::{Cell, Interval, Point, Polyomino};
use polyomino_gb::order::VertexOrder;
use polyomino_gb::overlap::{classify_overlap, lemma_predicate, Layout, Pattern};
use polyomino_gb::poly::{s_polynomial, Polynomial, Reducer};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random orders drawn per rotation, extra-rectangle subset and pair order.
pub const ORDERS: usize = 1000;

/// Node budget for the exhaustive reduction search.
const REDUCTION_BUDGET: usize = 200_000;

pub fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
    Interval::proper(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
}

fn rotated(x: &Interval, k: usize) -> Interval {
    (0..k).fold(*x, |y, _| y.rotate())
}

/// Standard layouts with the extra rectangles that make the conditional intervals inner.
fn layouts() -> Vec<(Layout, Interval, Interval, Vec<Interval>)> {
    vec![
        (Layout::SharedTopRight, iv((0, 0), (3, 2)), iv((1, -2), (3, 2)), vec![iv((0, -2), (1, 0))]),
        (Layout::SideBySide, iv((0, 0), (2, 3)), iv((2, 1), (4, 3)), vec![iv((2, 0), (4, 1))]),
        (Layout::StackedOffset, iv((0, 0), (2, 2)), iv((0, 2), (3, 4)), vec![iv((2, 0), (3, 2))]),
        (Layout::Nested, iv((0, 0), (3, 3)), iv((0, 1), (2, 3)), vec![]),
        (Layout::Diagonal, iv((0, 0), (2, 2)), iv((2, 2), (4, 4)), vec![iv((2, 0), (4, 2)), iv((0, 2), (2, 4))]),
    ]
}

/// Union of the parts, joined if necessary by a detour around the lower right.
fn polyomino(parts: &[Interval], k: usize) -> Polyomino {
    let mut cells: BTreeSet<Cell> = parts.iter().flat_map(|x| x.cells().collect::<Vec<_>>()).collect();
    if Polyomino::new(cells.clone()).is_err() {
        let detour = (-1..=5).map(|i| (i, -2)).chain((-1..=3).map(|j| (5, j))).chain([(-1, -1), (-1, 0), (4, 3)]);
        let turn = |c: Cell| (0..k).fold(c, |x, _| x.rotate());
        cells.extend(detour.map(|(i, j)| turn(Cell::new(i, j))));
    }
    Polyomino::new(cells).unwrap()
}

fn subsets<T: Clone>(xs: &[T]) -> Vec<Vec<T>> {
    (0..1usize << xs.len())
        .map(|m| xs.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, x)| x.clone()).collect())
        .collect()
}

fn shuffled_order(p: &Polyomino, verts: &mut [Point], rng: &mut ChaCha8Rng) -> VertexOrder {
    verts.shuffle(rng);
    VertexOrder::from_ranking(p, verts.to_vec()).unwrap()
}

#[derive(Debug, Default)]
pub struct LayoutSweep {
    pub layout: Option<Layout>,
    /// Orders drawn, per rotation.
    pub drawn: [usize; 4],
    /// Orders whose leading terms were not coprime, so the predicate applies.
    pub checked: usize,
    pub reduce_to_zero: usize,
    pub disagreements: Vec<String>,
}

/// Compares the lemma predicate with reduction for every layout, rotation and pair order.
pub fn lemma_sweep(seed: u64) -> Vec<LayoutSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (layout, i1, i2, extras) in layouts() {
        let mut sweep = LayoutSweep { layout: Some(layout), ..Default::default() };
        for k in 0..4 {
            for extra in subsets(&extras) {
                let (j1, j2) = (rotated(&i1, k), rotated(&i2, k));
                let mut parts = vec![j1, j2];
                parts.extend(extra.iter().map(|x| rotated(x, k)));
                let p = polyomino(&parts, k);
                assert!(p.is_inner(&j1) && p.is_inner(&j2));
                let basis = generators(&p);
                for (x, y) in [(j1, j2), (j2, j1)] {
                    let cfg = classify_overlap(&x, &y);
                    assert_eq!(cfg.pattern, Pattern::OneShared(layout));
                    let (f, g) = (Polynomial::inner_minor(&x).unwrap(), Polynomial::inner_minor(&y).unwrap());
                    let mut verts: Vec<Point> = p.vertices().iter().copied().collect();
                    for _ in 0..ORDERS {
                        let ord = shuffled_order(&p, &mut verts, &mut rng);
                        sweep.drawn[k] += 1;
                        if f.leading_monomial(&ord).unwrap().is_coprime(&g.leading_monomial(&ord).unwrap()) {
                            continue;
                        }
                        let s = s_polynomial(&f, &g, &ord).unwrap();
                        let reducer = Reducer::new(&basis, &ord).unwrap();
                        let truth = reducer.reduces_to_zero(&s, REDUCTION_BUDGET).expect("search budget");
                        let predicted = lemma_predicate(&cfg, &ord, &p).unwrap();
                        if predicted != truth {
                            sweep.disagreements.push(format!("rotation {k} pair {x} {y} order {:?}", ord.ascending()));
                        }
                        sweep.checked += 1;
                        sweep.reduce_to_zero += truth as usize;
                    }
                }
            }
        }
        out.push(sweep);
    }
    out
}

/// Two intervals sharing a side: S-polynomials that fail to reduce to zero, out of those drawn.
pub fn shared_side_sweep(seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (i1, i2) = (iv((0, 0), (2, 2)), iv((2, 0), (3, 2)));
    let (mut drawn, mut failures) = (0, 0);
    for k in 0..4 {
        let (j1, j2) = (rotated(&i1, k), rotated(&i2, k));
        let p = polyomino(&[j1, j2], k);
        assert_eq!(classify_overlap(&j1, &j2).pattern, Pattern::TwoShared);
        let basis = generators(&p);
        let (f, g) = (Polynomial::inner_minor(&j1).unwrap(), Polynomial::inner_minor(&j2).unwrap());
        let mut verts: Vec<Point> = p.vertices().iter().copied().collect();
        for _ in 0..ORDERS {
            let ord = shuffled_order(&p, &mut verts, &mut rng);
            let s = s_polynomial(&f, &g, &ord).unwrap();
            let reducer = Reducer::new(&basis, &ord).unwrap();
            drawn += 1;
            if reducer.reduces_to_zero(&s, REDUCTION_BUDGET) != Some(true) {
                failures += 1;
            }
        }
    }
    (drawn, failures)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Reads a cell-list fixture: one `i j` pair per line, `#` starts a comment line.
pub fn read_cells(name: &str) -> Polyomino {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let coords = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<i64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        });
    Polyomino::from_coords(coords).unwrap()
}
