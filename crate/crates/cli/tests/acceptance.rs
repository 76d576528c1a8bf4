//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with the measured scope. Timed criteria assert their budgets.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistspin_core::alexander::{
    alexander_ideal, bounds_rational_homology_ball, check_ideal_inclusion,
    twist_roll_spin_presentation, GroupPresentation,
};
use twistspin_core::degree::{
    deg_brieskorn_closed_form, deg_brieskorn_via_floer, deg_torus_knot, deg_twist_roll_spin,
    lspace_obstruction, Obstruction,
};
use twistspin_core::floer::brieskorn_summary;
use twistspin_core::fox::{fox_derivative_word, FreeWord, GroupRing};
use twistspin_core::knots::{braid_to_presentation, torus_knot, BraidWord};

fn family(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).filter(|r| r % 2 != 0 && r % 3 != 0)
}

/// (k, closed-form degree) for a family member r with gcd(r,6) = 1.
fn family_k(r: i64) -> (i64, i64) {
    match r % 12 {
        1 => (r / 12, 4 * (r / 12) + 1),
        5 => ((r - 5) / 12, 4 * ((r - 5) / 12) + 1),
        7 => ((r + 5) / 12, 4 * ((r + 5) / 12) - 1),
        11 => ((r + 1) / 12, 4 * ((r + 1) / 12) - 1),
        _ => panic!("r = {r} is not in the family"),
    }
}

fn closure(word: &str) -> GroupPresentation {
    let braid = BraidWord::parse(word).expect("corpus braids parse");
    braid_to_presentation(&braid).expect("corpus closures are knots")
}

#[test]
fn criterion_01_family_degree_table() {
    let start = Instant::now();
    let mut rows = 0;
    for r in family(5, 97) {
        let (_, summary) = brieskorn_summary(2, 3, r).unwrap();
        let pipeline = (1 + 4 * summary.anti_invariant_euler).abs();
        let (_, closed) = family_k(r);
        assert_eq!(pipeline, closed, "r = {r}");
        assert_eq!(deg_brieskorn_closed_form(r).unwrap().value, closed, "r = {r}");
        rows += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "sweep took {elapsed:?}");
    println!("PASS criterion 1: degree table agrees on {rows} family members in {elapsed:?}");
}

#[test]
fn criterion_02_floer_ranks() {
    let mut rows = 0;
    for r in family(5, 97) {
        let (_, summary) = brieskorn_summary(2, 3, r).unwrap();
        let (k, _) = family_k(r);
        let expected = match r % 12 {
            1 | 5 => 2 * k,
            _ => 2 * k - 1,
        };
        assert_eq!(summary.total_rank, expected, "r = {r}");
        rows += 1;
    }
    println!("PASS criterion 2: reduced ranks match the closed form on {rows} family members");
}

#[test]
fn criterion_03_torus_knot_degrees() {
    let mut pairs = 0;
    for p in (3..=11i64).step_by(2) {
        for q in ((p + 2)..=11).step_by(2) {
            if num_gcd(p, q) != 1 {
                continue;
            }
            assert_eq!(deg_torus_knot(p, q).unwrap().value, 1, "T({p},{q})");
            pairs += 1;
        }
    }
    assert!(pairs >= 8);
    println!("PASS criterion 3: degree 1 for all {pairs} odd coprime torus knots up to (9,11)");
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn random_word(rng: &mut ChaCha8Rng, generators: i32, max_len: usize) -> FreeWord {
    let len = rng.gen_range(1..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=generators);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    FreeWord::from_letters(&letters)
}

#[test]
fn criterion_04_fox_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f0c);
    let generators = 4;

    for trial in 0..1000 {
        let word = random_word(&mut rng, generators, 40);
        let mut lhs = GroupRing::zero();
        for i in 1..=generators as usize {
            let xi_minus_1 = GroupRing::from_word(FreeWord::generator(i)).sub(&GroupRing::one());
            lhs = lhs.add(&fox_derivative_word(i, &word).mul(&xi_minus_1));
        }
        let rhs = GroupRing::from_word(word.clone()).sub(&GroupRing::one());
        assert_eq!(lhs, rhs, "fundamental identity, trial {trial}, word {word}");
    }

    for trial in 0..1000 {
        let word = random_word(&mut rng, generators, 40);
        let i = rng.gen_range(1..=generators as usize);
        let j = rng.gen_range(1..=generators as usize);
        let xj = FreeWord::generator(j);
        let comm = FreeWord::commutator(&word, &xj);
        let lhs = fox_derivative_word(i, &comm);
        let conj = word.mul(&xj).mul(&word.inverse());
        let mut rhs = GroupRing::one()
            .sub(&GroupRing::from_word(conj))
            .mul(&fox_derivative_word(i, &word));
        if i == j {
            rhs = rhs
                .add(&GroupRing::from_word(word.clone()).sub(&GroupRing::from_word(comm.clone())));
        }
        assert_eq!(lhs, rhs, "commutator identity, trial {trial}, word {word}, i={i}, j={j}");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "identities took {elapsed:?}");
    println!("PASS criterion 4: both identities hold on 1000 random words each in {elapsed:?}");
}

#[test]
fn criterion_05_torus_alexander_oracle() {
    let mut pairs = 0;
    for p in 2..=7i64 {
        for q in (p + 1)..=7 {
            if num_gcd(p, q) != 1 {
                continue;
            }
            let (presentation, closed) = torus_knot(p, q).unwrap();
            let pipeline = alexander_ideal(&presentation).unwrap();
            assert_eq!(pipeline, closed, "T({p},{q})");
            pairs += 1;
        }
    }
    println!("PASS criterion 5: pipeline matches the closed-form polynomial on {pairs} torus knots");
}

#[test]
fn criterion_06_roll_invariance() {
    for (name, word) in [("trefoil", "B2: s1 s1 s1"), ("figure-eight", "B3: s1 s2^-1 s1 s2^-1")] {
        let presentation = closure(word);
        let base = alexander_ideal(&presentation).unwrap();
        for n in 0..=3 {
            let rolled = twist_roll_spin_presentation(&presentation, 0, n).unwrap();
            let ideal = alexander_ideal(&rolled).unwrap();
            assert_eq!(ideal, base, "{name}, n = {n}");
        }
    }
    println!("PASS criterion 6: roll-spin ideals are independent of n for trefoil and figure-eight");
}

#[test]
fn criterion_07_ideal_inclusion() {
    let start = Instant::now();
    let corpus = [
        ("unknot", "B2: s1"),
        ("trefoil", "B2: s1 s1 s1"),
        ("figure-eight", "B3: s1 s2^-1 s1 s2^-1"),
        ("T(2,5)", "B2: s1 s1 s1 s1 s1"),
        ("T(3,4)", "B3: s1 s2 s1 s2 s1 s2 s1 s2"),
    ];
    let mut cases = 0;
    for (name, word) in corpus {
        let presentation = closure(word);
        for m in [1, 2, 3, 6] {
            for n in [0, 1, 2] {
                assert!(
                    check_ideal_inclusion(&presentation, m, n).unwrap(),
                    "{name}, m = {m}, n = {n}"
                );
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "inclusions took {elapsed:?}");
    println!("PASS criterion 7: ideal inclusion holds in all {cases} cases in {elapsed:?}");
}

#[test]
fn criterion_08_ball_criterion_truth_table() {
    let presentation = closure("B2: s1 s1 s1");
    let delta = alexander_ideal(&presentation).unwrap();
    for m in 1..=12 {
        let got = bounds_rational_homology_ball(&delta, m).unwrap();
        let want = m != 6 && m != 12;
        assert_eq!(got, want, "m = {m}");
    }
    println!("PASS criterion 8: trefoil fiber criterion false exactly at m = 6, 12 within 1..=12");
}

#[test]
fn criterion_09_obstruction_corollary() {
    let spins = [(2, 0), (6, 0), (0, 1), (2, 2), (10, 0), (4, 3)];
    let mut cases = 0;
    for r in family(7, 97) {
        let base = deg_brieskorn_via_floer(2, 3, r).unwrap();
        for (m, n) in spins {
            assert_eq!((m + 2 * n) % 4, 2, "spin table entry ({m},{n})");
            let spun = deg_twist_roll_spin(&base, m, n).unwrap();
            assert_eq!(
                lspace_obstruction(&spun),
                Obstruction::Obstructed,
                "r = {r}, m = {m}, n = {n}"
            );
            cases += 1;
        }
    }
    println!("PASS criterion 9: OBSTRUCTED for all {cases} family twist-roll-spins");
}

fn capture(args: &[&str], threads: Option<&str>) -> Vec<u8> {
    let mut command = Command::new(env!("CARGO_BIN_EXE_twistspin"));
    command.args(args);
    match threads {
        Some(n) => command.env("TWISTSPIN_THREADS", n),
        None => command.env_remove("TWISTSPIN_THREADS"),
    };
    let output = command.output().expect("binary runs");
    assert!(output.status.success(), "{args:?} failed: {output:?}");
    output.stdout
}

#[test]
fn criterion_10_json_determinism() {
    let invocations: [&[&str]; 4] = [
        &["sweep", "--r-max", "97", "--format", "json"],
        &["deg", "--brieskorn", "2", "3", "7", "--format", "json"],
        &["gradedroot", "--brieskorn", "2", "3", "13", "--dump", "--format", "json"],
        &["alex", "--torus", "2", "3", "--format", "json"],
    ];
    for args in invocations {
        let reference = capture(args, None);
        assert!(!reference.is_empty());
        for threads in [None, Some("1"), Some("4")] {
            for _ in 0..2 {
                assert_eq!(capture(args, threads), reference, "{args:?}, threads {threads:?}");
            }
        }
    }
    println!("PASS criterion 10: JSON output byte-identical across runs and thread counts");
}
