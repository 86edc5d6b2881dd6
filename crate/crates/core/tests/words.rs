mod support;

use gpq::format::{parse_presentation, print_presentation};
use gpq::grigorchuk::{relator_family, substitution, Family, Variant};
use gpq::words::tietze::{apply_move, Derivation, TietzeError, TietzeMove};
use gpq::{Alphabet, Letter, Presentation, Word};
use proptest::prelude::*;

fn mixed() -> Alphabet {
    Alphabet::new([("a", false), ("b", false), ("s", true)]).unwrap()
}

fn word_strategy(a: Alphabet, max: usize) -> impl Strategy<Value = Word> {
    let letters = a.letters();
    prop::collection::vec(prop::sample::select(letters), 0..=max).prop_map(Word::from)
}

fn positive_acd(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..3, 0..=max).prop_map(|v| v.into_iter().map(Letter::pos).collect())
}

proptest! {
    #[test]
    fn free_reduce_idempotent_and_shrinking(w in word_strategy(mixed(), 30)) {
        let a = mixed();
        let r = a.free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(a.free_reduce(&r), r.clone());
        // no adjacent cancelling pair survives
        for pair in r.windows(2) {
            prop_assert_ne!(a.inverse_letter(pair[0]), pair[1]);
        }
    }

    #[test]
    fn free_reduce_cancels_inserted_inverse(w in word_strategy(mixed(), 15), v in word_strategy(mixed(), 15)) {
        let a = mixed();
        let long = Word::concat([&w, &a.inverse(&w), &v]);
        prop_assert_eq!(a.free_reduce(&long), a.free_reduce(&v));
    }

    #[test]
    fn substitution_is_exact_concatenation(u in positive_acd(20), v in positive_acd(20)) {
        let s = substitution(Variant::Acd);
        prop_assert_eq!(s.apply(&u.then(&v)).unwrap(), s.apply(&u).unwrap().then(&s.apply(&v).unwrap()));
    }

    #[test]
    fn iterate_semigroup_law(w in positive_acd(20), m in 0usize..=6, n in 0usize..=6) {
        let s = substitution(Variant::Acd);
        let lhs = s.iterate(&s.iterate(&w, n).unwrap(), m).unwrap();
        prop_assert_eq!(lhs, s.iterate(&w, m + n).unwrap());
    }

    #[test]
    fn print_parse_round_trip(rels in prop::collection::vec(word_strategy(mixed(), 8), 0..5)) {
        let p = Presentation::new("p", mixed(), rels).unwrap();
        let back = parse_presentation(&print_presentation(&p)).unwrap().presentation;
        prop_assert_eq!(back.relators(), p.relators());
    }
}

#[test]
fn lysenok_family_grows() {
    let lens: Vec<usize> = (0..8)
        .map(|n| relator_family(Variant::Acd, Family::W, n).len())
        .collect();
    assert!(lens.windows(2).all(|p| p[0] < p[1]), "{lens:?}");
}

/// A random T1 or T3 move that is valid on `p`.
fn random_valid_move(
    rng: &mut rand_chacha::ChaCha8Rng,
    p: &Presentation,
    fresh: usize,
) -> TietzeMove {
    use rand::Rng;
    let a = p.alphabet();
    if p.relators().is_empty() || rng.gen_bool(0.5) {
        let len = rng.gen_range(0..5);
        TietzeMove::AddGenerator {
            name: format!("y{fresh}"),
            involutive: false,
            defining: support::random_word(rng, a, len),
            generator_at: rng.gen_bool(0.5).then(|| rng.gen_range(0..=a.len())),
            relator_at: rng
                .gen_bool(0.5)
                .then(|| rng.gen_range(0..=p.relators().len())),
        }
    } else {
        let mut factors = Vec::new();
        for _ in 0..rng.gen_range(1..3) {
            let len = rng.gen_range(0..4);
            factors.push(gpq::words::tietze::DerivationFactor {
                conjugator: support::random_word(rng, a, len),
                relator: rng.gen_range(0..p.relators().len()),
                inverted: rng.gen_bool(0.5),
            });
        }
        let derivation = Derivation(factors);
        let product = derivation.expand(p).unwrap();
        let relator = if rng.gen_bool(0.5) {
            a.free_reduce(&product)
        } else {
            product
        };
        TietzeMove::AddRelator {
            relator,
            derivation,
            at: rng
                .gen_bool(0.5)
                .then(|| rng.gen_range(0..=p.relators().len())),
        }
    }
}

#[test]
fn tietze_moves_invert_exactly() {
    let mut rng = support::rng(11);
    let start = parse_presentation("gens a, b, s!;\nrel a b a' b';\nrel s a s a';\n")
        .unwrap()
        .presentation;
    let mut p = start.clone();
    for i in 0..500 {
        let mv = random_valid_move(&mut rng, &p, i);
        let (q, undo) = apply_move(&p, &mv).unwrap_or_else(|e| panic!("move {i} {mv:?}: {e}"));
        let (back, _) = apply_move(&q, &undo).unwrap();
        assert_eq!(back, p, "move {i} did not invert");
        // keep walking from the new presentation half the time
        if i % 2 == 0 {
            p = q;
        }
    }
}

#[test]
fn invalid_t2_t4_rejected() {
    let p = parse_presentation("gens a, b;\nrel a b a' b';\nrel a a;\n")
        .unwrap()
        .presentation;
    // b occurs in the commutator, which is not a defining relator
    let t2 = apply_move(&p, &TietzeMove::RemoveGenerator { name: "b".into() });
    assert!(matches!(t2, Err(TietzeError::InvalidMove(_))));
    // a relator may not certify itself
    let self_cite = TietzeMove::RemoveRelator {
        index: 1,
        derivation: Derivation::single(Word::empty(), 1, false),
    };
    assert!(apply_move(&p, &self_cite).is_err());
    // the commutator does not derive a^2
    let wrong = TietzeMove::RemoveRelator {
        index: 1,
        derivation: Derivation::single(Word::empty(), 0, false),
    };
    assert_eq!(
        apply_move(&p, &wrong).unwrap_err(),
        TietzeError::DerivationDoesNotReduce
    );
}
