//! Cross-route agreement on a small knot corpus: the closed-form spun
//! matrix must equal the Jacobian of the spun presentation entry by
//! entry, and both routes must produce the same elementary ideal.

use twistspin_core::alexander::{
    alexander_ideal, alexander_matrix, twist_roll_spin_matrix, twist_roll_spin_presentation,
    GroupPresentation,
};
use twistspin_core::knots::{braid_to_presentation, BraidWord};

fn corpus() -> Vec<(&'static str, GroupPresentation)> {
    [
        ("unknot", "B2: s1"),
        ("trefoil", "B2: s1 s1 s1"),
        ("figure-eight", "B3: s1 s2^-1 s1 s2^-1"),
        ("T(2,5)", "B2: s1 s1 s1 s1 s1"),
        ("T(3,4)", "B3: s1 s2 s1 s2 s1 s2 s1 s2"),
    ]
    .into_iter()
    .map(|(name, word)| {
        let braid = BraidWord::parse(word).expect("corpus braids parse");
        (name, braid_to_presentation(&braid).expect("corpus closures are knots"))
    })
    .collect()
}

#[test]
fn spun_matrix_equals_spun_jacobian() {
    for (name, presentation) in corpus() {
        for m in [1, 2, 3, 6] {
            for n in [0, 1, 2] {
                let closed = twist_roll_spin_matrix(&presentation, m, n).unwrap();
                let spun = twist_roll_spin_presentation(&presentation, m, n).unwrap();
                let jacobian = alexander_matrix(&spun).unwrap();
                assert_eq!(
                    closed.rows(),
                    jacobian.rows(),
                    "{name}, m = {m}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn spun_ideals_agree_between_routes() {
    for (name, presentation) in corpus() {
        for (m, n) in [(1, 0), (2, 1), (6, 2)] {
            let via_matrix =
                twist_roll_spin_matrix(&presentation, m, n).unwrap().first_elementary_ideal();
            let spun = twist_roll_spin_presentation(&presentation, m, n).unwrap();
            let via_presentation = alexander_ideal(&spun).unwrap();
            assert_eq!(via_matrix, via_presentation, "{name}, m = {m}, n = {n}");
        }
    }
}

#[test]
fn negative_twist_matches_positive() {
    for (name, presentation) in corpus() {
        for m in [1, 2, 6] {
            for n in [0, 2] {
                let pos =
                    twist_roll_spin_matrix(&presentation, m, n).unwrap().first_elementary_ideal();
                let neg =
                    twist_roll_spin_matrix(&presentation, -m, n).unwrap().first_elementary_ideal();
                assert_eq!(pos, neg, "{name}, m = {m}, n = {n}");
            }
        }
    }
}
