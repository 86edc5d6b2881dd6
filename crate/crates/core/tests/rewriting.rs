mod support;

use gpq::backends::{dihedral_group_with, free_abelian_oracle, WordOracle};
use gpq::ball::{pi1_kill_radius, KillRadius, SearchCaps};
use gpq::rewriting::{
    ball_null_homotopy_witness, certify_local_confluence, d8_system, free_reduction_system,
    z2_system, BallWitness, ConfluenceVerdict, RewritingSystem, Strategy,
};
use gpq::{Presentation, Word};
use rand::Rng;

const STEPS: usize = 100_000;

fn d8_presentation() -> Presentation {
    let rs = d8_system();
    let a = rs.alphabet().clone();
    Presentation::new("d8", a.clone(), vec![a.parse_word("(a d)^4").unwrap()]).unwrap()
}

fn z2_presentation() -> Presentation {
    let rs = z2_system();
    let a = rs.alphabet().clone();
    Presentation::new("z2", a.clone(), vec![a.parse_word("a b a' b'").unwrap()]).unwrap()
}

fn words_upto(rs: &RewritingSystem, n: usize) -> Vec<Word> {
    (0..=n)
        .flat_map(|k| support::all_words(rs.alphabet(), k))
        .collect()
}

#[test]
fn reduction_is_deterministic_and_irreducible() {
    let mut rng = support::rng(5);
    for rs in [
        d8_system(),
        z2_system(),
        free_reduction_system(&gpq::Alphabet::plain(&["x", "y"])),
    ] {
        let a = rs.alphabet().clone();
        for _ in 0..300 {
            let len = rng.gen_range(0..=20);
            let w = support::random_word(&mut rng, &a, len);
            for strategy in [Strategy::LeftmostInnermost, Strategy::LeftmostOutermost] {
                let (nf, tr) = rs.reduce(&w, strategy, STEPS).unwrap();
                let (again, tr2) = rs.reduce(&w, strategy, STEPS).unwrap();
                assert_eq!(nf, again);
                assert_eq!(tr, tr2);
                assert!(rs.is_irreducible(&nf));
                assert!(tr.replays(&rs, &w));
            }
        }
    }
}

#[test]
fn geodesic_traces_never_lengthen() {
    let mut rng = support::rng(6);
    for rs in [d8_system(), z2_system()] {
        assert!(rs.is_geodesic());
        let a = rs.alphabet().clone();
        for _ in 0..500 {
            let len = rng.gen_range(0..=24);
            let w = support::random_word(&mut rng, &a, len);
            let (_, tr) = rs.reduce(&w, Strategy::default(), STEPS).unwrap();
            assert!(tr.is_length_monotone(), "{}", a.format(&w));
        }
    }
}

/// Normal forms agree exactly when the independent oracle says `u v^-1 = 1`.
fn agrees_with_oracle(rs: &RewritingSystem, oracle: &dyn WordOracle, l: usize) {
    assert!(matches!(
        certify_local_confluence(rs, STEPS, l),
        ConfluenceVerdict::Certified { .. }
    ));
    let a = rs.alphabet();
    let words = words_upto(rs, l / 2);
    let nfs: Vec<Word> = words
        .iter()
        .map(|w| rs.normal_form(w, STEPS).unwrap())
        .collect();
    for (u, nu) in words.iter().zip(&nfs) {
        for (v, nv) in words.iter().zip(&nfs) {
            let trivial = oracle.is_identity(&u.then(&a.inverse(v)));
            assert_eq!(nu == nv, trivial, "{} vs {}", a.format(u), a.format(v));
        }
    }
}

#[test]
fn certified_systems_solve_the_word_problem() {
    agrees_with_oracle(
        &d8_system(),
        &dihedral_group_with(8, ["a", "d"]).unwrap(),
        8,
    );
    agrees_with_oracle(&z2_system(), &free_abelian_oracle(2), 8);
}

#[test]
fn d8_example_trace() {
    let rs = d8_system();
    let a = rs.alphabet();
    let w = a.parse_word("a d a d a").unwrap();
    let (nf, tr) = rs.reduce(&w, Strategy::default(), STEPS).unwrap();
    assert_eq!(a.compact(&nf), "dad");
    let table = dihedral_group_with(8, ["a", "d"]).unwrap();
    assert!(table.equal(&nf, &w));
    assert!(tr.is_length_monotone());
}

#[test]
fn witness_implies_kill_radius() {
    let rs = d8_system();
    let p = d8_presentation();
    let oracle = dihedral_group_with(8, ["a", "d"]).unwrap();
    for r in 0..=2 {
        let w = ball_null_homotopy_witness(&rs, &p, r, 5_000_000, STEPS).unwrap();
        let BallWitness::Certified { traces, .. } = w else {
            panic!("r = {r}: {w:?}")
        };
        assert!(traces
            .iter()
            .all(|(_, t)| t.is_length_monotone() && t.max_length() <= 2 * r + 1));
        let k = pi1_kill_radius(&oracle, &p, r, r, SearchCaps::default()).unwrap();
        assert_eq!(k, KillRadius::Found(r));
    }
    let z = z2_system();
    let zp = z2_presentation();
    for r in 0..=1 {
        assert!(matches!(
            ball_null_homotopy_witness(&z, &zp, r, 5_000_000, STEPS).unwrap(),
            BallWitness::Certified { .. }
        ));
        let k = pi1_kill_radius(&free_abelian_oracle(2), &zp, r, r, SearchCaps::default()).unwrap();
        assert_eq!(k, KillRadius::Found(r));
    }
}
