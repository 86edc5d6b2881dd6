mod support;

use std::collections::HashSet;

use gpq::endo::{
    britton_pinch_reduce, expand_relators, order_less, sigma_decode, stable_letter_count,
    stable_projection, EndoError,
};
use gpq::grigorchuk::{lysenok, substitution, Variant};
use gpq::{Letter, Substitution, Word};
use rand::Rng;

/// Positive words `v` with `|σ(v)| <= max`, by extending only while the
/// image stays short; returns their images.
fn images_upto(s: &Substitution, max: usize) -> HashSet<Word> {
    let mut out = HashSet::new();
    let mut layer = vec![Word::empty()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for v in layer {
            for g in 0..s.source().len() {
                let mut w = v.clone();
                w.push(Letter::pos(g));
                if s.image_len(&w) <= max {
                    next.push(w);
                }
            }
            out.insert(s.apply(&v).unwrap());
        }
        layer = next;
    }
    out
}

#[test]
fn decode_inverts_encode() {
    let mut rng = support::rng(21);
    for v in [Variant::Acd, Variant::Abd] {
        let s = substitution(v);
        for _ in 0..1000 {
            let len = rng.gen_range(0..=100);
            let w = support::random_positive_word(&mut rng, s.source(), len);
            let d = sigma_decode(&s, &s.apply(&w).unwrap()).unwrap();
            assert_eq!(d.word, w);
        }
    }
}

#[test]
fn non_images_are_rejected() {
    let mut rng = support::rng(22);
    for v in [Variant::Acd, Variant::Abd] {
        let s = substitution(v);
        let images = images_upto(&s, 12);
        let mut rejected = 0;
        while rejected < 100 {
            let len = rng.gen_range(1..=12);
            let w = support::random_positive_word(&mut rng, s.source(), len);
            if images.contains(&w) {
                assert_eq!(s.apply(&sigma_decode(&s, &w).unwrap().word).unwrap(), w);
                continue;
            }
            assert_eq!(sigma_decode(&s, &w), Err(EndoError::NotInImage));
            rejected += 1;
        }
    }
}

#[test]
fn expansion_is_nested_and_counted() {
    let ep = lysenok();
    let mut prev: Vec<String> = Vec::new();
    for d in 0..=4 {
        let texts: Vec<String> = expand_relators(&ep, d)
            .into_iter()
            .map(|r| r.text)
            .collect();
        assert!(
            prev.iter().all(|t| texts.contains(t)),
            "depth {d} drops a relator"
        );
        // one stable letter: |R| (d + 1) composites
        assert_eq!(texts.len(), ep.q().len() + ep.r().len() * (d + 1));
        prev = texts;
    }
    let e = expand_relators(&ep, 2);
    assert!(e
        .iter()
        .filter(|r| r.redundant)
        .all(|r| r.relator == Some(0)));
}

#[test]
fn stable_projection_is_a_monoid_map() {
    let ep = lysenok();
    let all = ep.combined_alphabet();
    let l = ep.stable_alphabet();
    let mut rng = support::rng(23);
    for _ in 0..1000 {
        let (lu, lv) = (rng.gen_range(0..=20), rng.gen_range(0..=20));
        let u = support::random_word(&mut rng, &all, lu);
        let v = support::random_word(&mut rng, &all, lv);
        let lhs = stable_projection(&ep, &u.then(&v));
        let rhs = l.free_reduce(&stable_projection(&ep, &u).then(&stable_projection(&ep, &v)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn order_is_strict_partial() {
    let ep = gpq::endo::EndomorphicPresentation::new(
        "two",
        gpq::Alphabet::involutive(&["a"]),
        vec![],
        vec![
            Substitution::endo(
                "s",
                gpq::Alphabet::involutive(&["a"]),
                vec![Word::from(vec![Letter::pos(0)])],
            )
            .unwrap(),
            Substitution::endo(
                "t",
                gpq::Alphabet::involutive(&["a"]),
                vec![Word::from(vec![Letter::pos(0)])],
            )
            .unwrap(),
        ],
        vec![],
    )
    .unwrap();
    let l = ep.stable_alphabet();
    let mut words: Vec<Word> = (0..=4).flat_map(|n| support::all_words(&l, n)).collect();
    words.retain(|w| l.free_reduce(w) == *w);
    for x in &words {
        assert!(!order_less(&l, x, x));
    }
    for x in &words {
        for y in &words {
            if !order_less(&l, x, y) {
                continue;
            }
            assert!(!order_less(&l, y, x), "asymmetry");
            for z in &words {
                if order_less(&l, y, z) {
                    assert!(order_less(&l, x, z), "transitivity");
                }
            }
        }
    }
}

#[test]
fn britton_steps_remove_stable_letters() {
    let ep = lysenok();
    let all = ep.combined_alphabet();
    let t = all.index_of("t").unwrap();
    let s = &ep.phis()[0];
    let mut rng = support::rng(24);
    for _ in 0..300 {
        // build t-nested words that contain pinches of both kinds
        let mut w = Word::empty();
        for _ in 0..rng.gen_range(1..4) {
            let len = rng.gen_range(0..6);
            let mid = support::random_positive_word(&mut rng, ep.alphabet(), len);
            if rng.gen_bool(0.5) {
                w.push(Letter::pos(t));
                w.extend_from(&mid);
                w.push(Letter::neg(t));
            } else {
                w.push(Letter::neg(t));
                w.extend_from(&s.apply(&mid).unwrap());
                w.push(Letter::pos(t));
            }
            w.extend_from(&support::random_positive_word(&mut rng, ep.alphabet(), 2));
        }
        let out = britton_pinch_reduce(&ep, &w, 100).unwrap();
        assert_eq!(out.status, gpq::endo::BrittonStatus::Reduced);
        for step in &out.trace {
            assert!(step.replays());
            assert_eq!(
                stable_letter_count(&ep, &step.after) + 2,
                stable_letter_count(&ep, &step.before)
            );
        }
        assert_eq!(stable_letter_count(&ep, &out.word), 0);
    }
}
