//! How two inner intervals sharing corners sit relative to each other, and the
//! order conditions under which their S-polynomial reduces to zero.
//!
//! Every pair sharing exactly one corner is brought, by a quarter-turn rotation
//! and possibly by swapping the two intervals, into one of five standard
//! layouts. Throughout, `[a, b]` has anti-diagonal corners `c = (a.i, b.j)` and
//! `d = (b.i, a.j)`, and `[α, β]` has `γ = (α.i, β.j)` and `δ = (β.i, α.j)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Interval, Point, Polyomino};
use crate::order::VertexOrder;
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OverlapError {
    #[error("the pair is not one of the one-shared-corner layouts")]
    PatternMismatch,
}

/// The five one-shared-corner layouts, in their standard position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layout {
    /// `β = b`, `γ` inside the top edge of `[a, b]`, `[α, β]` reaching below it.
    SharedTopRight,
    /// `γ = b`, `α` inside the right edge of `[a, b]`.
    SideBySide,
    /// `α = c`, `b` inside the segment from `α` to `δ`.
    StackedOffset,
    /// `γ = c` with `δ` in the interior of `[a, b]`.
    Nested,
    /// `α = b`: the intervals touch at a single point.
    Diagonal,
}

impl Layout {
    pub const ALL: [Layout; 5] = [
        Layout::SharedTopRight,
        Layout::SideBySide,
        Layout::StackedOffset,
        Layout::Nested,
        Layout::Diagonal,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// Neither interval has a corner inside the other.
    DisjointCorners,
    TwoShared,
    OneShared(Layout),
    Containment,
    Other,
}

/// The named points of a classified pair, in the original coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub alpha: Point,
    pub beta: Point,
    pub gamma: Point,
    pub delta: Point,
    pub h: Point,
    pub r: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapConfiguration {
    pub first: Interval,
    pub second: Interval,
    pub pattern: Pattern,
    /// Quarter turns taking the pair to its standard position (0..4, labels A–D).
    pub rotation: u8,
    /// Whether the two intervals play swapped roles in the standard position.
    pub swapped: bool,
    pub roles: Option<Roles>,
}

impl OverlapConfiguration {
    pub fn rotation_label(&self) -> char {
        (b'A' + self.rotation) as char
    }
}

fn rot(p: Point, k: u8) -> Point {
    (0..k).fold(p, |q, _| q.rotate())
}

fn unrot(p: Point, k: u8) -> Point {
    rot(p, (4 - k) % 4)
}

fn rot_interval(iv: &Interval, k: u8) -> Interval {
    (0..k).fold(*iv, |x, _| x.rotate())
}

fn between(lo: i64, x: i64, hi: i64) -> bool {
    lo < x && x < hi
}

/// Recognises a standard layout and returns it with `h` and `r`.
fn standard(i1: &Interval, i2: &Interval) -> Option<(Layout, Point, Point)> {
    let (a, b) = (i1.lo(), i1.hi());
    let c = Point::new(a.i, b.j);
    let (al, be) = (i2.lo(), i2.hi());
    let delta = Point::new(be.i, al.j);
    let gamma = Point::new(al.i, be.j);
    if be == b && between(a.i, al.i, b.i) && al.j < a.j {
        return Some((Layout::SharedTopRight, Point::new(al.i, a.j), Point::new(a.i, al.j)));
    }
    if gamma == b && al.i == b.i && between(a.j, al.j, b.j) {
        return Some((Layout::SideBySide, Point::new(a.i, al.j), Point::new(be.i, a.j)));
    }
    if al == c && delta.j == b.j && b.i < delta.i {
        return Some((Layout::StackedOffset, Point::new(b.i, be.j), Point::new(be.i, a.j)));
    }
    if gamma == c && between(a.i, delta.i, b.i) && between(a.j, delta.j, b.j) {
        return Some((Layout::Nested, Point::new(delta.i, a.j), Point::new(b.i, delta.j)));
    }
    if al == b {
        return Some((Layout::Diagonal, Point::new(be.i, a.j), Point::new(a.i, be.j)));
    }
    None
}

/// Classifies an ordered pair of proper intervals.
pub fn classify_overlap(first: &Interval, second: &Interval) -> OverlapConfiguration {
    let mut cfg = OverlapConfiguration {
        first: *first,
        second: *second,
        pattern: Pattern::Other,
        rotation: 0,
        swapped: false,
        roles: None,
    };
    let (c1, c2) = (first.corner_points(), second.corner_points());
    let shared = c1.intersection(&c2).count();
    if shared == 2 {
        cfg.pattern = Pattern::TwoShared;
        return cfg;
    }
    if shared == 1 {
        for k in 0..4u8 {
            for swapped in [false, true] {
                let (j1, j2) = if swapped { (second, first) } else { (first, second) };
                let (r1, r2) = (rot_interval(j1, k), rot_interval(j2, k));
                if let Some((layout, h, r)) = standard(&r1, &r2) {
                    let back = |p: Point| unrot(p, k);
                    let (a, b, al, be) = (r1.lo(), r1.hi(), r2.lo(), r2.hi());
                    cfg.pattern = Pattern::OneShared(layout);
                    cfg.rotation = k;
                    cfg.swapped = swapped;
                    cfg.roles = Some(Roles {
                        a: back(a),
                        b: back(b),
                        c: back(Point::new(a.i, b.j)),
                        d: back(Point::new(b.i, a.j)),
                        alpha: back(al),
                        beta: back(be),
                        gamma: back(Point::new(al.i, be.j)),
                        delta: back(Point::new(be.i, al.j)),
                        h: back(h),
                        r: back(r),
                    });
                    return cfg;
                }
            }
        }
    }
    if first.contains_interval(second) || second.contains_interval(first) {
        cfg.pattern = Pattern::Containment;
    } else if shared == 0 && !c1.iter().any(|&p| second.contains(p)) && !c2.iter().any(|&p| first.contains(p)) {
        cfg.pattern = Pattern::DisjointCorners;
    }
    cfg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    A,
    B,
    C,
    D,
    Al,
    Be,
    Ga,
    De,
    H,
    R,
}

impl Roles {
    fn get(&self, role: Role) -> Point {
        match role {
            Role::A => self.a,
            Role::B => self.b,
            Role::C => self.c,
            Role::D => self.d,
            Role::Al => self.alpha,
            Role::Be => self.beta,
            Role::Ga => self.gamma,
            Role::De => self.delta,
            Role::H => self.h,
            Role::R => self.r,
        }
    }
}

/// One disjunct: a comparison of the two S-polynomial terms, an optional
/// inner interval (given by opposite corners), and `u, v < s` or `u, v < t`.
struct Condition {
    first_smaller: bool,
    inner: Option<(Role, Role)>,
    uv: (Role, Role),
    st: (Role, Role),
}

const fn cond(first_smaller: bool, inner: Option<(Role, Role)>, uv: (Role, Role), st: (Role, Role)) -> Condition {
    Condition {
        first_smaller,
        inner,
        uv,
        st,
    }
}

struct Rule {
    /// The two terms of the S-polynomial, `first` and `second`.
    terms: [[Role; 3]; 2],
    conditions: [Condition; 4],
}

use Role::*;

fn rule(layout: Layout) -> Rule {
    match layout {
        Layout::SharedTopRight => Rule {
            terms: [[A, Ga, De], [Al, C, D]],
            conditions: [
                cond(true, None, (H, De), (Al, D)),
                cond(true, Some((R, H)), (R, Ga), (Al, C)),
                cond(false, None, (H, C), (A, Ga)),
                cond(false, Some((R, H)), (R, D), (A, De)),
            ],
        },
        Layout::SideBySide => Rule {
            terms: [[A, Al, Be], [De, C, D]],
            conditions: [
                cond(true, None, (H, Be), (C, De)),
                cond(true, Some((D, De)), (R, Al), (De, D)),
                cond(false, None, (H, D), (A, Al)),
                cond(false, Some((D, De)), (R, C), (A, Be)),
            ],
        },
        Layout::StackedOffset => Rule {
            terms: [[D, De, Ga], [Be, A, B]],
            conditions: [
                cond(true, None, (H, De), (B, Be)),
                cond(true, Some((D, De)), (R, Ga), (A, Be)),
                cond(false, None, (H, A), (D, Ga)),
                cond(false, Some((D, De)), (R, B), (D, De)),
            ],
        },
        Layout::Nested => Rule {
            terms: [[D, Al, Be], [De, A, B]],
            conditions: [
                cond(true, None, (H, Al), (A, De)),
                cond(true, None, (R, Be), (De, B)),
                cond(false, None, (R, A), (Al, D)),
                cond(false, None, (H, B), (D, Be)),
            ],
        },
        Layout::Diagonal => Rule {
            terms: [[A, Ga, De], [Be, D, C]],
            conditions: [
                cond(true, Some((D, De)), (H, Ga), (Be, D)),
                cond(true, Some((C, Ga)), (R, De), (Be, C)),
                cond(false, Some((C, Ga)), (R, D), (A, Ga)),
                cond(false, Some((D, De)), (C, H), (A, De)),
            ],
        },
    }
}

/// Which of the four conditions hold for `cfg` under `ord` in `p`.
pub fn lemma_conditions(cfg: &OverlapConfiguration, ord: &VertexOrder, p: &Polyomino) -> Result<[bool; 4], OverlapError> {
    let (Pattern::OneShared(layout), Some(roles)) = (cfg.pattern, cfg.roles) else {
        return Err(OverlapError::PatternMismatch);
    };
    let rule = rule(layout);
    let term = |k: usize| Monomial::product(rule.terms[k].iter().map(|&x| roles.get(x)));
    let first_smaller = ord.cmp_monomials(&term(0), &term(1)).is_lt();
    let below = |u: Role, v: Role, s: Role| {
        let s = roles.get(s);
        ord.less(roles.get(u), s) && ord.less(roles.get(v), s)
    };
    let mut out = [false; 4];
    for (k, c) in rule.conditions.iter().enumerate() {
        let inner_ok = c
            .inner
            .map_or(true, |(x, y)| p.is_inner(&Interval::spanning(roles.get(x), roles.get(y))));
        let (u, v) = c.uv;
        let (s, t) = c.st;
        out[k] = c.first_smaller == first_smaller && inner_ok && (below(u, v, s) || below(u, v, t));
    }
    Ok(out)
}

/// The disjunction of the lemma conditions: whether the S-polynomial of the
/// pair reduces to zero, assuming the leading terms share a variable.
pub fn lemma_predicate(cfg: &OverlapConfiguration, ord: &VertexOrder, p: &Polyomino) -> Result<bool, OverlapError> {
    Ok(lemma_conditions(cfg, ord, p)?.iter().any(|&x| x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::proper(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn basic_patterns() {
        let i = iv((0, 0), (2, 2));
        assert_eq!(classify_overlap(&i, &i).pattern, Pattern::Containment);
        // α = d, γ = b
        assert_eq!(classify_overlap(&i, &iv((2, 0), (4, 2))).pattern, Pattern::TwoShared);
        assert_eq!(classify_overlap(&i, &iv((5, 5), (6, 6))).pattern, Pattern::DisjointCorners);
    }

    #[test]
    fn shared_top_right_in_standard_position() {
        let cfg = classify_overlap(&iv((0, 0), (3, 2)), &iv((1, -1), (3, 2)));
        assert_eq!(cfg.pattern, Pattern::OneShared(Layout::SharedTopRight));
        assert_eq!(cfg.rotation_label(), 'A');
        assert!(!cfg.swapped);
        let r = cfg.roles.unwrap();
        assert_eq!((r.h, r.r), (Point::new(1, 0), Point::new(0, -1)));
    }

    #[test]
    fn every_layout_is_found_in_every_rotation() {
        let examples = [
            (iv((0, 0), (3, 2)), iv((1, -1), (3, 2)), Layout::SharedTopRight),
            (iv((0, 0), (2, 3)), iv((2, 1), (4, 3)), Layout::SideBySide),
            (iv((0, 0), (2, 2)), iv((0, 2), (3, 4)), Layout::StackedOffset),
            (iv((0, 0), (3, 3)), iv((0, 1), (2, 3)), Layout::Nested),
            (iv((0, 0), (1, 1)), iv((1, 1), (2, 3)), Layout::Diagonal),
        ];
        for (i1, i2, layout) in examples {
            for k in 0..4u8 {
                let (r1, r2) = (rot_interval(&i1, k), rot_interval(&i2, k));
                for (x, y) in [(r1, r2), (r2, r1)] {
                    let cfg = classify_overlap(&x, &y);
                    assert_eq!(cfg.pattern, Pattern::OneShared(layout), "{x:?} {y:?}");
                }
            }
        }
    }
}
