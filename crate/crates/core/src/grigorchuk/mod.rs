//! The Grigorchuk group through its recursive presentations.
//!
//! Three alphabets are in play: `{a,b,c,d}`, `{a,c,d}` and `{a,b,d}`, each
//! with its own substitution `σ`. The subgroup `B = <<b>>` has quotient
//! `D8 = <a,d>`, and `A = <<d>>` has quotient `D16 = <a,c>`. The isomorphism
//! `ψ: A -> B x B` is carried by the map `φ0` between these quotients.

mod transport;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::backends::{dihedral_group_with, FiniteGroupTable, WordOracle};
use crate::endo::EndomorphicPresentation;
use crate::induction::SplitExtensionData;
use crate::words::{Alphabet, Letter, Presentation, Substitution, Word};

pub use transport::{transport_induced_relation, Expansion, Factor};
pub use verify::{
    family_correspondence, run_full_verification, verify_sigma_identity, CaseId, Correspondence,
    EqualityLevel, VerificationReport, VerificationRun, VerificationSummary,
};

/// `ψ` on the generators of `G0`: `(generator, first, second)`.
pub const PSI: [(&str, &str, &str); 6] = [
    ("b", "a", "c"),
    ("c", "a", "d"),
    ("d", "1", "b"),
    ("aba", "c", "a"),
    ("aca", "d", "a"),
    ("ada", "b", "1"),
];

/// Generators of `B = <<b>>`.
pub const B_GENERATORS: [&str; 4] = ["b", "aba", "(bada)^2", "(abad)^2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Abcd,
    Acd,
    Abd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    W,
    Z,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Abcd => "abcd",
            Variant::Acd => "acd",
            Variant::Abd => "abd",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "abcd" => Ok(Variant::Abcd),
            "acd" => Ok(Variant::Acd),
            "abd" => Ok(Variant::Abd),
            _ => Err(format!("unknown variant `{s}` (expected abcd, acd or abd)")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::W => "w",
            Family::Z => "z",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "w" => Ok(Family::W),
            "z" => Ok(Family::Z),
            _ => Err(format!("unknown family `{s}` (expected w or z)")),
        }
    }
}

fn word(a: &Alphabet, text: &str) -> Word {
    a.parse_word(text)
        .expect("fixed word over a fixed alphabet")
}

pub fn alphabet(v: Variant) -> Alphabet {
    match v {
        Variant::Abcd => Alphabet::involutive(&["a", "b", "c", "d"]),
        Variant::Acd => Alphabet::involutive(&["a", "c", "d"]),
        Variant::Abd => Alphabet::involutive(&["a", "b", "d"]),
    }
}

/// The substitution `σ` of each variant.
pub fn substitution(v: Variant) -> Substitution {
    let a = alphabet(v);
    let images: &[&str] = match v {
        Variant::Abcd => &["a c a", "d", "b", "c"],
        Variant::Acd => &["a c a", "c d", "c"],
        Variant::Abd => &["a b d a", "d", "b d"],
    };
    let images = images.iter().map(|t| word(&a, t)).collect();
    Substitution::endo("t", a, images).expect("positive nonempty images")
}

/// `w_0 = (ad)^4` and the second seed of the variant.
pub fn seed(v: Variant, family: Family) -> Word {
    let a = alphabet(v);
    match (family, v) {
        (Family::W, _) => word(&a, "(a d)^4"),
        (Family::Z, Variant::Abd) => word(&a, "(a d a b d a b d)^4"),
        (Family::Z, _) => word(&a, "(a d a c a c)^4"),
    }
}

/// `σ^n` of the family's seed, unreduced.
pub fn relator_family(v: Variant, family: Family, n: usize) -> Word {
    substitution(v)
        .iterate(&seed(v, family), n)
        .expect("seeds are positive")
}

/// `σ^n` of the seed's primitive root with the seed's exponent, so that
/// `relator_family = root^k`.
pub fn relator_family_power(v: Variant, family: Family, n: usize) -> (Word, usize) {
    let (root, k) = seed(v, family).primitive_root();
    (
        substitution(v)
            .iterate(&root, n)
            .expect("seeds are positive"),
        k,
    )
}

/// `(u)^k` as written for the family: `(abdabd)^4` rather than `(abd)^8`.
pub fn family_text(v: Variant, family: Family, n: usize) -> String {
    let (root, k) = relator_family_power(v, family, n);
    format!("({})^{k}", alphabet(v).compact(&root))
}

/// The presentation of the variant truncated at `σ^depth`: generator
/// squares, `bcd` for the four-letter variant, then `w_n, z_n` for
/// `n = 0..=depth`.
pub fn presentation(v: Variant, depth: usize) -> Presentation {
    let a = alphabet(v);
    let mut rels: Vec<Word> = (0..a.len())
        .map(|g| Word::from(vec![Letter::pos(g); 2]))
        .collect();
    if v == Variant::Abcd {
        rels.push(word(&a, "b c d"));
    }
    for n in 0..=depth {
        rels.push(relator_family(v, Family::W, n));
        rels.push(relator_family(v, Family::Z, n));
    }
    Presentation::new(format!("grigorchuk-{v}"), a, rels).expect("words over the variant alphabet")
}

fn letterwise(from: Variant, to: Variant, images: &[&str], w: &Word) -> Word {
    let (src, dst) = (alphabet(from), alphabet(to));
    let images: Vec<Word> = images.iter().map(|t| word(&dst, t)).collect();
    let mut out = Word::empty();
    for l in w.iter() {
        debug_assert!(!l.inv || src.is_involutive(l.gen));
        out.extend_from(&images[l.gen]);
    }
    dst.free_reduce(&out)
}

/// `φ0` extended to `{a,b,d}` by `b -> d`: letterwise `a -> aca`, `b -> d`,
/// `d -> c`, then reduced.
pub fn phi0_hat(w: &Word) -> Word {
    letterwise(Variant::Abd, Variant::Acd, &["a c a", "d", "c"], w)
}

/// `b -> cd`, reduced.
pub fn translate_bd_to_cd(w: &Word) -> Word {
    letterwise(Variant::Abd, Variant::Acd, &["a", "c d", "d"], w)
}

/// `c -> bd`, reduced; inverse of [`translate_bd_to_cd`] modulo `bcd`.
pub fn translate_cd_to_bd(w: &Word) -> Word {
    letterwise(Variant::Acd, Variant::Abd, &["a", "b d", "d"], w)
}

/// `σ_acd`, `σ_abd` and the finite quotients, assembled once.
#[derive(Debug, Clone)]
pub struct GrigorchukData {
    pub sigma_abcd: Substitution,
    pub sigma_acd: Substitution,
    pub sigma_abd: Substitution,
    /// `G/B = <a, d>`.
    pub d8: FiniteGroupTable,
    /// `G/A = <a, c>`.
    pub d16: FiniteGroupTable,
    /// `P_G(a,b,d)` at depth 0 over `D8` with `p(b) = e`.
    pub split: SplitExtensionData,
    /// `φ0(x)` as a reduced `{a,c,d}`-word, per `D8` element.
    phi0_words: Vec<Word>,
}

impl Default for GrigorchukData {
    fn default() -> Self {
        Self::new()
    }
}

impl GrigorchukData {
    pub fn new() -> Self {
        let d8 = dihedral_group_with(8, ["a", "d"]).expect("order 8");
        let d16 = dihedral_group_with(16, ["a", "c"]).expect("order 16");
        let (a, d) = (
            d8.element("a").expect("generator"),
            d8.element("d").expect("generator"),
        );
        let split = SplitExtensionData::with_named_lifts(
            presentation(Variant::Abd, 0),
            d8.clone(),
            vec![a, 0, d],
        )
        .expect("B has a complement");
        let acd = alphabet(Variant::Acd);
        let phi0 = Substitution::new(
            "phi0",
            d8.alphabet().clone(),
            acd.clone(),
            vec![word(&acd, "a c a"), word(&acd, "c")],
        )
        .expect("positive images");
        let phi0_words = (0..d8.order())
            .map(|x| acd.free_reduce(&phi0.apply(d8.word_of(x)).expect("positive")))
            .collect();
        GrigorchukData {
            sigma_abcd: substitution(Variant::Abcd),
            sigma_acd: substitution(Variant::Acd),
            sigma_abd: substitution(Variant::Abd),
            d8,
            d16,
            split,
            phi0_words,
        }
    }

    /// `φ0(x)` for `x` in `D8`, as the image of its canonical word.
    pub fn phi0_word(&self, x: usize) -> &Word {
        &self.phi0_words[x]
    }

    /// `φ1(x)`, letterwise `a -> c`, `d -> aca` on the canonical word.
    pub fn phi1_word(&self, x: usize) -> Word {
        let acd = alphabet(Variant::Acd);
        let mut out = Word::empty();
        for l in self.d8.word_of(x).iter() {
            let img = if self.d8.alphabet().name(l.gen) == "a" {
                "c"
            } else {
                "a c a"
            };
            out.extend_from(&word(&acd, img));
        }
        acd.free_reduce(&out)
    }

    /// Element of `D16` named by an `{a,c}`-word over the `{a,c,d}` alphabet.
    pub fn in_d16(&self, w: &Word) -> Option<usize> {
        let acd = alphabet(Variant::Acd);
        w.iter().try_fold(0, |acc, l| {
            let g = self.d16.alphabet().index_of(acd.name(l.gen))?;
            Some(self.d16.mul(acc, self.d16.generator_element(g)))
        })
    }

    /// `φ0: D8 -> D16` is an injective homomorphism with image `<c, aca>`.
    pub fn phi0_is_isomorphism(&self) -> bool {
        let img: Vec<usize> = (0..self.d8.order())
            .map(|x| self.in_d16(self.phi0_word(x)).expect("φ0 lands in <a,c>"))
            .collect();
        let injective = {
            let mut s = img.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == img.len()
        };
        let multiplicative = (0..self.d8.order()).all(|x| {
            (0..self.d8.order()).all(|y| img[self.d8.mul(x, y)] == self.d16.mul(img[x], img[y]))
        });
        let generated = {
            let c = self.d16.element("c").expect("generator");
            let aca = self
                .in_d16(&word(&alphabet(Variant::Acd), "a c a"))
                .expect("in D16");
            let mut sub = vec![0];
            let mut i = 0;
            while i < sub.len() {
                for g in [c, aca] {
                    let y = self.d16.mul(sub[i], g);
                    if !sub.contains(&y) {
                        sub.push(y);
                    }
                }
                i += 1;
            }
            sub.sort_unstable();
            let mut im = img.clone();
            im.sort_unstable();
            sub == im
        };
        injective && multiplicative && generated
    }

    /// `φ1(x) = a φ0(x) a` in `D16` for every `x`.
    pub fn phi1_is_conjugate_of_phi0(&self) -> bool {
        let a = self.d16.element("a").expect("generator");
        (0..self.d8.order()).all(|x| {
            let lhs = self.in_d16(&self.phi1_word(x));
            let rhs = self
                .in_d16(self.phi0_word(x))
                .map(|p| self.d16.mul(self.d16.mul(a, p), a));
            lhs.is_some() && lhs == rhs
        })
    }
}

/// The endomorphic presentation `<a!, c!, d! | | t | a^2, (ad)^4, (adacac)^4>`
/// with `t` acting by `σ_acd`.
pub fn lysenok() -> EndomorphicPresentation {
    let a = alphabet(Variant::Acd);
    let r = ["a a", "(a d)^4", "(a d a c a c)^4"]
        .iter()
        .map(|t| word(&a, t))
        .collect();
    EndomorphicPresentation::new("lysenok", a, vec![], vec![substitution(Variant::Acd)], r)
        .expect("stable letter t is fresh")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_members() {
        let abd = alphabet(Variant::Abd);
        assert_eq!(
            abd.compact(&relator_family(Variant::Abd, Family::W, 0)),
            "adadadad"
        );
        assert_eq!(
            relator_family(Variant::Abd, Family::W, 1),
            word(&abd, "(a b d a b d)^4")
        );
        let acd = alphabet(Variant::Acd);
        assert_eq!(
            relator_family(Variant::Acd, Family::Z, 0),
            word(&acd, "(a d a c a c)^4")
        );
        assert_eq!(family_text(Variant::Abd, Family::W, 1), "(abdabd)^4");
        assert_eq!(family_text(Variant::Acd, Family::Z, 0), "(adacac)^4");
        let (root, k) = relator_family_power(Variant::Abd, Family::Z, 2);
        assert_eq!(root.pow(k), relator_family(Variant::Abd, Family::Z, 2));
        let lens: Vec<usize> = (0..5)
            .map(|n| relator_family(Variant::Abd, Family::W, n).len())
            .collect();
        assert_eq!(lens, [8, 24, 56, 128, 280]);
        let lens: Vec<usize> = (0..5)
            .map(|n| relator_family(Variant::Abd, Family::Z, n).len())
            .collect();
        assert_eq!(lens, [32, 80, 184, 408, 880]);
    }

    #[test]
    fn letter_maps() {
        let abd = alphabet(Variant::Abd);
        let acd = alphabet(Variant::Acd);
        assert_eq!(phi0_hat(&word(&abd, "a d")), word(&acd, "a c a c"));
        assert_eq!(phi0_hat(&word(&abd, "b")), word(&acd, "d"));
        assert!(phi0_hat(&Word::empty()).is_empty());
        assert_eq!(translate_bd_to_cd(&word(&abd, "b")), word(&acd, "c d"));
        assert_eq!(translate_bd_to_cd(&word(&abd, "b d")), word(&acd, "c"));
        assert_eq!(
            translate_bd_to_cd(&word(&abd, "a b d a")),
            word(&acd, "a c a")
        );
        assert_eq!(translate_cd_to_bd(&word(&acd, "c d")), word(&abd, "b"));
    }

    #[test]
    fn quotient_maps() {
        let g = GrigorchukData::new();
        assert!(g.phi0_is_isomorphism());
        assert!(g.phi1_is_conjugate_of_phi0());
        let acd = alphabet(Variant::Acd);
        assert_eq!(
            g.phi0_word(g.d8.element("a").unwrap()),
            &word(&acd, "a c a")
        );
        assert_eq!(g.phi0_word(g.d8.element("d").unwrap()), &word(&acd, "c"));
    }

    #[test]
    fn variants_parse() {
        assert_eq!("acd".parse::<Variant>().unwrap(), Variant::Acd);
        assert!("xyz".parse::<Variant>().is_err());
        assert_eq!(Family::Z.to_string(), "z");
        let p = presentation(Variant::Abcd, 1);
        assert_eq!(p.relators().len(), 4 + 1 + 4);
    }
}
