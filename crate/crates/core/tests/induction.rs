mod support;

use gpq::backends::{dihedral_group_with, FiniteGroupTable, WordOracle};
use gpq::grigorchuk::GrigorchukData;
use gpq::induction::{
    basic_relation, conjugate_relation, hall_compose, induce_presentation, SplitExtensionData,
};
use gpq::{Alphabet, Presentation, Word};
use rand::Rng;

const LIMIT: usize = 10_000;

fn pres(name: &str, a: &Alphabet, rels: &[&str]) -> Presentation {
    Presentation::new(
        name,
        a.clone(),
        rels.iter().map(|t| a.parse_word(t).unwrap()).collect(),
    )
    .unwrap()
}

/// Split extensions of finite groups with positive relators, with `|G|`.
fn examples() -> Vec<(SplitExtensionData, usize)> {
    let z2 = |name: &str| FiniteGroupTable::cyclic(2, name).unwrap();
    let mut out = Vec::new();

    let a = Alphabet::involutive(&["x", "s"]);
    let klein = pres("klein", &a, &["x x", "s s", "x s x s"]);
    out.push((
        SplitExtensionData::with_named_lifts(klein, z2("s"), vec![0, 1]).unwrap(),
        4,
    ));

    let a = Alphabet::new([("r", false), ("s", true)]).unwrap();
    let d8 = pres("d8", &a, &["r r r r", "s s", "r s r s"]);
    out.push((
        SplitExtensionData::with_named_lifts(d8, z2("s"), vec![0, 1]).unwrap(),
        8,
    ));

    let a = Alphabet::new([("x", false), ("s", true)]).unwrap();
    let z6 = pres("z6", &a, &["x x x", "s s", "x s x x s"]);
    out.push((
        SplitExtensionData::with_named_lifts(z6, z2("s"), vec![0, 1]).unwrap(),
        6,
    ));

    let a = Alphabet::involutive(&["a", "d"]);
    let d8 = pres("d8ad", &a, &["(a d)^4"]);
    out.push((
        SplitExtensionData::with_named_lifts(d8, z2("d"), vec![0, 1]).unwrap(),
        8,
    ));

    let a = Alphabet::involutive(&["x", "s", "u"]);
    let cube = pres("z2cubed", &a, &["x s x s", "x u x u", "s u s u"]);
    let v4 = FiniteGroupTable::from_permutations(
        Alphabet::involutive(&["s", "u"]),
        vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
    )
    .unwrap();
    out.push((
        SplitExtensionData::with_named_lifts(cube, v4, vec![0, 1, 2]).unwrap(),
        8,
    ));

    let a = Alphabet::involutive(&["a", "d"]);
    let d16 = pres("d16", &a, &["(a d)^8"]);
    // onto D8 would not split (every order-8 subgroup holds the centre)
    out.push((
        SplitExtensionData::with_named_lifts(d16, z2("d"), vec![0, 1]).unwrap(),
        16,
    ));
    out
}

#[test]
fn presented_groups_have_the_expected_order() {
    for (d, g) in examples() {
        assert_eq!(
            support::group_order(d.presentation(), LIMIT),
            Some(g),
            "{}",
            d.presentation().name
        );
    }
}

#[test]
fn induced_presentation_presents_the_kernel() {
    for (d, g) in examples() {
        let ind = induce_presentation(&d).unwrap();
        let f = d.quotient().order();
        let s = d.presentation().generator_count();
        assert_eq!(ind.full.letters.len(), f * s);
        let order = support::group_order(&ind.simplified.presentation, LIMIT);
        assert_eq!(order, Some(g / f), "{}", d.presentation().name);
    }
}

#[test]
fn klein_kernel_is_cyclic_of_order_two() {
    let (d, _) = examples().remove(0);
    let ind = induce_presentation(&d).unwrap();
    assert_eq!(ind.full.letters.len(), 4);
    assert_eq!(
        support::group_order(&ind.simplified.presentation, LIMIT),
        Some(2)
    );
}

#[test]
fn basic_relation_counts_non_section_letters() {
    let g = GrigorchukData::new();
    let d = &g.split;
    let a = d.presentation().alphabet();
    let mut rng = support::rng(31);
    for _ in 0..500 {
        let len = rng.gen_range(0..30);
        let mut w = support::random_positive_word(&mut rng, a, len);
        // close the word up in F with the lift of the inverse
        let f = d.project(&w);
        w.extend_from(&d.lifts()[d.quotient().inv(f)]);
        let expected = w.iter().filter(|l| !d.is_section_generator(l.gen)).count();
        assert_eq!(
            basic_relation(&w, d).unwrap().len(),
            expected,
            "{}",
            a.format(&w)
        );
    }
}

#[test]
fn conjugation_is_an_action_on_random_relations() {
    let g = GrigorchukData::new();
    let d = &g.split;
    let f = d.quotient();
    let a = d.presentation().alphabet();
    let mut rng = support::rng(32);
    for _ in 0..20 {
        let len = rng.gen_range(1..20);
        let mut w = support::random_positive_word(&mut rng, a, len);
        w.extend_from(&d.lifts()[f.inv(d.project(&w))]);
        let t = basic_relation(&w, d).unwrap();
        for x in 0..f.order() {
            for y in 0..f.order() {
                let lhs = conjugate_relation(&conjugate_relation(&t, y, f), x, f);
                assert_eq!(lhs, conjugate_relation(&t, f.mul(x, y), f));
            }
        }
    }
}

#[test]
fn hall_extensions_have_the_expected_order() {
    let k = Alphabet::plain(&["k"]);
    let m = Alphabet::plain(&["m"]);
    let kw = |t: &str| k.parse_word(t).unwrap();
    // Z/2 x Z/2
    let g = hall_compose(
        &pres("k", &k, &["k k"]),
        &pres("f", &m, &["m m"]),
        &[Word::empty()],
        &[vec![kw("k")]],
    )
    .unwrap();
    assert_eq!(support::group_order(&g, LIMIT), Some(4));
    // Z/3 by Z/2 acting by inversion: S3; trivially: Z/6
    let pk = pres("k", &k, &["k k k"]);
    let pf = pres("f", &m, &["m m"]);
    let s3 = hall_compose(&pk, &pf, &[Word::empty()], &[vec![kw("k k")]]).unwrap();
    assert_eq!(support::group_order(&s3, LIMIT), Some(6));
    let z6 = hall_compose(&pk, &pf, &[Word::empty()], &[vec![kw("k")]]).unwrap();
    assert_eq!(support::group_order(&z6, LIMIT), Some(6));
    // non-split: Z/4 as Z/2 by Z/2 with m^2 = k
    let z4 = hall_compose(&pres("k", &k, &["k k"]), &pf, &[kw("k")], &[vec![kw("k")]]).unwrap();
    assert_eq!(support::group_order(&z4, LIMIT), Some(4));
}

#[test]
fn coset_enumeration_oracle_sanity() {
    let a = Alphabet::involutive(&["a", "d"]);
    for (m, rel) in [(2, "(a d)^2"), (4, "(a d)^4"), (8, "(a d)^8")] {
        let p = pres("d", &a, &[rel]);
        assert_eq!(support::group_order(&p, LIMIT), Some(2 * m));
        assert_eq!(
            dihedral_group_with(2 * m, ["a", "d"])
                .unwrap()
                .alphabet()
                .len(),
            2
        );
    }
    assert_eq!(
        support::group_order(&pres("free", &Alphabet::plain(&["x"]), &[]), 50),
        None
    );
}
