//! Buchberger certification of the inner 2-minors.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{Interval, Point, Polyomino};
use crate::order::VertexOrder;
use crate::poly::{s_polynomial, Monomial, Polynomial, Reducer};

/// The inner 2-minors of `P`, one per inner interval, in interval order.
pub fn generators(p: &Polyomino) -> Vec<Polynomial> {
    p.inner_intervals()
        .iter()
        .map(|iv| Polynomial::inner_minor(iv).expect("inner intervals are proper"))
        .collect()
}

/// Whether the leading monomials of `f` and `g` share no variable.
pub fn coprime_criterion(f: &Polynomial, g: &Polynomial, ord: &VertexOrder) -> bool {
    match (f.leading_monomial(ord), g.leading_monomial(ord)) {
        (Ok(a), Ok(b)) => a.is_coprime(&b),
        _ => false,
    }
}

/// A pair whose S-polynomial does not reduce to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFailure {
    pub first: usize,
    pub second: usize,
    pub first_interval: Option<Interval>,
    pub second_interval: Option<Interval>,
    pub s_polynomial: String,
    pub normal_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GBReport {
    pub generators: usize,
    pub total_pairs: usize,
    pub coprime_skips: usize,
    pub reduced_pairs: usize,
    pub failures: Vec<PairFailure>,
    pub is_groebner: bool,
    pub is_reduced: bool,
}

/// Runs the Buchberger criterion over every unordered pair of `basis`.
/// `intervals`, when given, labels failures with the intervals of the two generators.
pub fn buchberger_check(basis: &[Polynomial], ord: &VertexOrder, intervals: Option<&[Interval]>) -> GBReport {
    let reducer = Reducer::new(basis, ord).expect("basis elements are nonzero");
    let leads = reducer.leads();
    let m = basis.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (x + 1..m).map(move |y| (x, y))).collect();
    let results: Vec<Option<PairFailure>> = pairs
        .par_iter()
        .filter(|&&(x, y)| !leads[x].0.is_coprime(&leads[y].0))
        .map(|&(x, y)| {
            let s = s_polynomial(&basis[x], &basis[y], ord).expect("nonzero generators");
            let nf = reducer.normal_form(&s);
            (!nf.is_zero()).then(|| PairFailure {
                first: x,
                second: y,
                first_interval: intervals.map(|ivs| ivs[x]),
                second_interval: intervals.map(|ivs| ivs[y]),
                s_polynomial: s.render(ord),
                normal_form: nf.render(ord),
            })
        })
        .collect();
    let reduced_pairs = results.len();
    let failures: Vec<PairFailure> = results.into_iter().flatten().collect();
    let is_groebner = failures.is_empty();
    GBReport {
        generators: m,
        total_pairs: pairs.len(),
        coprime_skips: pairs.len() - reduced_pairs,
        reduced_pairs,
        is_reduced: is_groebner && is_reduced_basis(basis, ord),
        failures,
        is_groebner,
    }
}

/// Certifies the inner 2-minors of `p` under `ord`.
pub fn certify(p: &Polyomino, ord: &VertexOrder) -> GBReport {
    let ivs = p.inner_intervals();
    buchberger_check(&generators(p), ord, Some(&ivs))
}

/// Whether every S-pair involving a generator whose interval contains one of
/// `points` reduces to zero. Used to test a tentative choice of markers.
pub fn pairs_touching_reduce(p: &Polyomino, ord: &VertexOrder, points: &[Point]) -> bool {
    let ivs = p.inner_intervals();
    let basis = generators(p);
    let reducer = Reducer::new(&basis, ord).expect("basis elements are nonzero");
    let leads = reducer.leads();
    let touched: Vec<usize> = (0..ivs.len())
        .filter(|&x| points.iter().any(|&v| ivs[x].contains(v)))
        .collect();
    touched.par_iter().all(|&x| {
        (0..basis.len()).all(|y| {
            if x == y || leads[x].0.is_coprime(&leads[y].0) {
                return true;
            }
            let s = s_polynomial(&basis[x], &basis[y], ord).expect("nonzero generators");
            reducer.normal_form(&s).is_zero()
        })
    })
}

/// Unit leading coefficients (up to sign) and no term of any element divisible
/// by the leading monomial of another element.
pub fn is_reduced_basis(basis: &[Polynomial], ord: &VertexOrder) -> bool {
    let Ok(leads) = basis.iter().map(|g| g.leading_term(ord)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    if !leads.iter().all(|(_, c)| c.abs().is_one()) {
        return false;
    }
    basis.iter().enumerate().all(|(x, g)| {
        g.terms()
            .all(|(t, _)| leads.iter().enumerate().all(|(y, (l, _))| x == y || !l.divides(t)))
    })
}

/// Minimal generators of the ideal of leading monomials of `basis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialIdeal {
    pub monomials: Vec<Monomial>,
    /// False when `basis` was not certified, so the monomials only generate
    /// the ideal of its leading terms.
    pub certified: bool,
}

pub fn initial_ideal(basis: &[Polynomial], ord: &VertexOrder, certified: bool) -> InitialIdeal {
    let leads: BTreeSet<Monomial> = basis.iter().filter_map(|g| g.leading_monomial(ord).ok()).collect();
    let monomials = leads
        .iter()
        .filter(|m| !leads.iter().any(|l| l != *m && l.divides(m)))
        .cloned()
        .collect();
    InitialIdeal { monomials, certified }
}

pub fn is_squarefree(ms: &[Monomial]) -> bool {
    ms.iter().all(Monomial::is_squarefree)
}

/// Leading coefficient made positive, as used for reduced bases.
pub fn monic(basis: &[Polynomial], ord: &VertexOrder) -> Vec<Polynomial> {
    basis
        .iter()
        .map(|g| match g.leading_term(ord) {
            Ok((_, c)) if c.is_negative() => g.neg(),
            _ => g.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_cell_is_trivially_groebner() {
        let p = Polyomino::from_coords([(0, 0)]).unwrap();
        let r = certify(&p, &VertexOrder::q1(&p));
        assert!(r.is_groebner && r.is_reduced);
        assert_eq!(r.total_pairs, 0);
        let ii = initial_ideal(&generators(&p), &VertexOrder::q1(&p), true);
        assert_eq!(ii.monomials, vec![Monomial::product([Point::new(0, 0), Point::new(1, 1)])]);
    }

    #[test]
    fn square_block_counts() {
        let p = Polyomino::from_coords([(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(generators(&p).len(), 9);
    }

    #[test]
    fn squarefree_test() {
        let a = Monomial::product([Point::new(0, 0), Point::new(1, 1)]);
        let b = Monomial::from_exponents([(Point::new(0, 0), 2)]);
        assert!(is_squarefree(&[a.clone()]));
        assert!(!is_squarefree(&[a, b]));
    }
}
