//! The lemma conditions agree with actual reduction of the S-polynomial.

mod common;

use common::{lemma_sweep, shared_side_sweep, ORDERS};

#[test]
fn lemma_conditions_match_reduction() {
    for sweep in lemma_sweep(2024) {
        let layout = sweep.layout.unwrap();
        assert!(sweep.disagreements.is_empty(), "{layout:?}: {:?}", &sweep.disagreements[..1]);
        assert!(sweep.drawn.iter().all(|&d| d >= ORDERS));
        assert!(sweep.checked >= ORDERS, "{layout:?}: only {} non-coprime samples", sweep.checked);
        assert!(
            sweep.reduce_to_zero > 0 && sweep.reduce_to_zero < sweep.checked,
            "{layout:?}: {}/{} reduce",
            sweep.reduce_to_zero,
            sweep.checked
        );
    }
}

#[test]
fn two_shared_corners_always_reduce() {
    let (drawn, failures) = shared_side_sweep(7);
    assert_eq!(drawn, 4 * ORDERS);
    assert_eq!(failures, 0);
}
