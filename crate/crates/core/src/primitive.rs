//! Degree-bounded search for primitive binomials of a closed path's ideal.
//!
//! Membership is decided by reduction modulo the inner 2-minors under a
//! certified order. Candidates are pairs of coprime monomials of equal degree
//! that meet every maximal edge interval the same number of times.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::{certify, generators};
use crate::lattice::Point;
use crate::order::{choose_order, OrderOptions, VertexOrder};
use crate::path::ClosedPath;
use crate::poly::{Monomial, Polynomial, Reducer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("degree bound must be at least 2 (got {0})")]
    DegreeBoundTooSmall(u32),
    #[error("the inner 2-minors are not a Gröbner basis under the chosen order")]
    NotCertified,
    #[error("the binomial is not in the ideal")]
    NotMember,
}

/// Decides membership in the ideal of a closed path by reduction.
pub struct Membership {
    basis: Vec<Polynomial>,
    ord: VertexOrder,
    vertices: Vec<Point>,
    labels: BTreeMap<Point, (usize, usize)>,
}

impl Membership {
    /// Uses the order picked by [`choose_order`], which must certify.
    pub fn new(cp: &ClosedPath) -> Result<Self, ScanError> {
        let (ord, _) = choose_order(cp, OrderOptions::default());
        Self::with_order(cp, ord)
    }

    pub fn with_order(cp: &ClosedPath, ord: VertexOrder) -> Result<Self, ScanError> {
        let p = cp.polyomino();
        if !certify(p, &ord).is_groebner {
            return Err(ScanError::NotCertified);
        }
        Ok(Membership {
            basis: generators(p),
            ord,
            vertices: p.vertices().iter().copied().collect(),
            labels: p.edge_interval_labels(),
        })
    }

    pub fn order(&self) -> &VertexOrder {
        &self.ord
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        Reducer::new(&self.basis, &self.ord).expect("generators are nonzero").normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_binomial(&self, plus: &Monomial, minus: &Monomial) -> bool {
        plus == minus || self.contains(&Polynomial::binomial(plus.clone(), minus.clone()))
    }

    /// Sorted vertical and horizontal edge-interval labels of the variables of `m`.
    fn balance_key(&self, m: &Monomial) -> (Vec<usize>, Vec<usize>) {
        let (mut v, mut h) = (Vec::new(), Vec::new());
        for x in m.factors() {
            let (a, b) = self.labels[&x];
            v.push(a);
            h.push(b);
        }
        v.sort_unstable();
        h.sort_unstable();
        (v, h)
    }
}

/// A member binomial `plus − minus` found by the scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveCandidate {
    pub plus: Monomial,
    pub minus: Monomial,
    /// The binomial, terms sorted by the membership order.
    pub binomial: String,
    pub degree: u32,
    pub squarefree: bool,
    pub certified_member: bool,
    pub certified_primitive: bool,
}

/// All divisors of `m`, including `1` and `m`.
fn divisors(m: &Monomial) -> Vec<Monomial> {
    m.exponents().iter().fold(vec![Monomial::one()], |acc, &(v, e)| {
        acc.iter()
            .flat_map(|d| (0..=e).map(move |k| d.mul(&Monomial::from_exponents([(v, k)]))))
            .collect()
    })
}

/// Whether no other binomial `g⁺ − g⁻` of the ideal has `g⁺ | plus` and `g⁻ | minus`.
pub fn is_primitive(oracle: &Membership, plus: &Monomial, minus: &Monomial) -> Result<bool, ScanError> {
    if !oracle.contains_binomial(plus, minus) || plus == minus {
        return Err(ScanError::NotMember);
    }
    let (dp, dm) = (divisors(plus), divisors(minus));
    let found = dp.par_iter().any(|gp| {
        dm.iter()
            .any(|gm| (gp != plus || gm != minus) && gp != gm && oracle.contains_binomial(gp, gm))
    });
    Ok(!found)
}

/// Every multiset of `d` vertices from `vs`.
fn monomials_of_degree(vs: &[Point], d: u32) -> Vec<Monomial> {
    fn go(vs: &[Point], from: usize, left: u32, cur: &mut Vec<Point>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::product(cur.iter().copied()));
            return;
        }
        for k in from..vs.len() {
            cur.push(vs[k]);
            go(vs, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vs, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Orients a pair so that `plus` is the larger monomial.
fn oriented(oracle: &Membership, x: &Monomial, y: &Monomial) -> (Monomial, Monomial) {
    if oracle.ord.cmp_monomials(x, y).is_ge() {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

/// Coprime member binomials with both parts of degree exactly `d`.
/// With `balanced` false every coprime pair is tested, otherwise only pairs
/// with matching edge-interval labels.
pub fn member_binomials(oracle: &Membership, d: u32, balanced: bool) -> BTreeSet<(Monomial, Monomial)> {
    let monos = monomials_of_degree(&oracle.vertices, d);
    let mut buckets: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Monomial>> = BTreeMap::new();
    for m in monos {
        let key = if balanced { oracle.balance_key(&m) } else { Default::default() };
        buckets.entry(key).or_default().push(m);
    }
    // The basis is certified, so u − v is a member exactly when u and v have
    // the same normal form.
    buckets
        .par_iter()
        .flat_map_iter(|(_, ms)| {
            let nfs: Vec<Polynomial> = ms.iter().map(|m| oracle.normal_form(&Polynomial::monomial(m.clone(), 1))).collect();
            let mut found = Vec::new();
            for x in 0..ms.len() {
                for y in x + 1..ms.len() {
                    if nfs[x] == nfs[y] && ms[x].is_coprime(&ms[y]) {
                        found.push(oriented(oracle, &ms[x], &ms[y]));
                    }
                }
            }
            found
        })
        .collect()
}

/// Primitive binomials of degree at most `max_degree`, ordered by degree and then by parts.
pub fn graver_scan_with(oracle: &Membership, max_degree: u32) -> Result<Vec<PrimitiveCandidate>, ScanError> {
    if max_degree < 2 {
        return Err(ScanError::DegreeBoundTooSmall(max_degree));
    }
    let mut out = Vec::new();
    for d in 2..=max_degree {
        let members: Vec<(Monomial, Monomial)> = member_binomials(oracle, d, true).into_iter().collect();
        let flags: Vec<bool> = members
            .par_iter()
            .map(|(u, v)| is_primitive(oracle, u, v).expect("scan output is a member"))
            .collect();
        for ((plus, minus), primitive) in members.into_iter().zip(flags) {
            if !primitive {
                continue;
            }
            let binomial = Polynomial::binomial(plus.clone(), minus.clone()).render(&oracle.ord);
            out.push(PrimitiveCandidate {
                squarefree: plus.is_squarefree() && minus.is_squarefree(),
                binomial,
                degree: d,
                plus,
                minus,
                certified_member: true,
                certified_primitive: true,
            });
        }
    }
    Ok(out)
}

/// [`graver_scan_with`] under the order chosen for `cp`.
pub fn graver_scan(cp: &ClosedPath, max_degree: u32) -> Result<Vec<PrimitiveCandidate>, ScanError> {
    if max_degree < 2 {
        return Err(ScanError::DegreeBoundTooSmall(max_degree));
    }
    graver_scan_with(&Membership::new(cp)?, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Polyomino;
    use crate::path::as_closed_path;

    fn ring() -> ClosedPath {
        let cells = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)];
        as_closed_path(&Polyomino::from_coords(cells).unwrap()).unwrap()
    }

    fn pt(i: i64, j: i64) -> Point {
        Point::new(i, j)
    }

    #[test]
    fn divisor_count() {
        let m = Monomial::from_exponents([(pt(0, 0), 2), (pt(1, 1), 1)]);
        assert_eq!(divisors(&m).len(), 6);
    }

    #[test]
    fn membership_basics() {
        let oracle = Membership::new(&ring()).unwrap();
        let g = Polynomial::inner_minor(&crate::lattice::Interval::proper(pt(0, 0), pt(1, 3)).unwrap()).unwrap();
        assert!(oracle.contains(&g));
        assert!(oracle.contains(&g.scale(&1.into(), &Monomial::var(pt(2, 2)))));
        assert!(!oracle.contains(&Polynomial::monomial(Monomial::var(pt(0, 0)), 1)));
        let (plus, minus) = g.binomial_parts().unwrap();
        assert!(is_primitive(&oracle, &plus, &minus).unwrap());
        let x = Monomial::var(pt(2, 2));
        assert!(!is_primitive(&oracle, &plus.mul(&x), &minus.mul(&x)).unwrap_or(false));
    }

    #[test]
    fn degree_two_scan_is_the_generators() {
        let cp = ring();
        let found = graver_scan(&cp, 2).unwrap();
        let gens: Vec<Polynomial> = generators(cp.polyomino()).into_iter().collect();
        assert_eq!(found.len(), gens.len());
        for c in found {
            let b = Polynomial::binomial(c.plus, c.minus);
            assert!(gens.contains(&b) || gens.contains(&b.neg()));
        }
        assert_eq!(graver_scan(&cp, 1), Err(ScanError::DegreeBoundTooSmall(1)));
    }
}
