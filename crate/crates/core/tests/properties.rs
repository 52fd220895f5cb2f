use std::cmp::Ordering;
use std::collections::BTreeSet;

use polyomino_gb::generate::{random_closed_path, Constraints};
use polyomino_gb::groebner::certify;
use polyomino_gb::lattice::Point;
use polyomino_gb::order::{choose_order, OrderOptions};
use polyomino_gb::path::{as_closed_path, census};
use polyomino_gb::poly::Monomial;
use proptest::prelude::*;

fn path(n: usize, seed: u64) -> Option<polyomino_gb::path::ClosedPath> {
    random_closed_path(n, seed, &Constraints::default()).ok()
}

fn monomial(vertices: &[Point], picks: &[(usize, u32)]) -> Monomial {
    Monomial::from_exponents(picks.iter().map(|&(k, e)| (vertices[k % vertices.len()], e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chosen_order_is_a_monomial_order(
        half in 4usize..12,
        seed in 0u64..10_000,
        a in prop::collection::vec((0usize..500, 1u32..3), 0..4),
        b in prop::collection::vec((0usize..500, 1u32..3), 0..4),
        c in prop::collection::vec((0usize..500, 1u32..3), 0..4),
    ) {
        let Some(cp) = path(2 * half, seed) else { return Ok(()) };
        let (ord, _) = choose_order(&cp, OrderOptions::default());
        let vs: Vec<Point> = cp.polyomino().vertices().iter().copied().collect();
        let (a, b, c) = (monomial(&vs, &a), monomial(&vs, &b), monomial(&vs, &c));
        prop_assert_eq!(ord.cmp_monomials(&a, &b), ord.cmp_monomials(&b, &a).reverse());
        prop_assert_eq!(ord.cmp_monomials(&a, &b) == Ordering::Equal, a == b);
        prop_assert_eq!(ord.cmp_monomials(&a, &b), ord.cmp_monomials(&a.mul(&c), &b.mul(&c)));
        prop_assert_ne!(ord.cmp_monomials(&Monomial::one(), &a), Ordering::Greater);
        if ord.cmp_monomials(&a, &b) != Ordering::Greater && ord.cmp_monomials(&b, &c) != Ordering::Greater {
            prop_assert_ne!(ord.cmp_monomials(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn translation_moves_everything_along(half in 4usize..14, seed in 0u64..10_000, di in -50i64..50, dj in -50i64..50) {
        let Some(cp) = path(2 * half, seed) else { return Ok(()) };
        let p = cp.polyomino();
        let q = p.translate(di, dj);
        let moved = as_closed_path(&q).unwrap();
        let (ord, prov) = choose_order(&cp, OrderOptions::default());
        let (ord2, prov2) = choose_order(&moved, OrderOptions::default());
        prop_assert_eq!(prov.rule, prov2.rule);
        let shifted: BTreeSet<Point> = ord.y_set().iter().map(|v| v.offset(di, dj)).collect();
        prop_assert_eq!(&shifted, ord2.y_set());
        prop_assert_eq!(q.inner_intervals().len(), p.inner_intervals().len());
        let kinds = |c: &polyomino_gb::path::ClosedPath| census(c).into_iter().map(|(k, v)| (k, v.len())).collect::<Vec<_>>();
        prop_assert_eq!(kinds(&cp), kinds(&moved));
    }

    #[test]
    fn rotation_keeps_closed_paths(half in 4usize..14, seed in 0u64..10_000) {
        let Some(cp) = path(2 * half, seed) else { return Ok(()) };
        let mut p = cp.polyomino().clone();
        for _ in 0..4 {
            p = p.rotate();
            prop_assert!(as_closed_path(&p).is_ok());
            prop_assert_eq!(p.inner_intervals().len(), cp.polyomino().inner_intervals().len());
            prop_assert!(p.is_thin());
        }
        prop_assert_eq!(p, cp.polyomino().clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_paths_are_certified(half in 4usize..16, seed in 0u64..100_000) {
        let Some(cp) = path(2 * half, seed) else { return Ok(()) };
        let (ord, _) = choose_order(&cp, OrderOptions::default());
        let report = certify(cp.polyomino(), &ord);
        prop_assert!(report.is_groebner, "{:?}", report.failures.first());
        prop_assert!(report.is_reduced);
        prop_assert_eq!(report.generators, cp.polyomino().inner_intervals().len());
    }
}
