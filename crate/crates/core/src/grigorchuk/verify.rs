use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::transport::{transport_with_trace, Expansion, Factor};
use super::{alphabet, relator_family, translate_bd_to_cd, Family, GrigorchukData, Variant};
use crate::backends::{FiniteGroupTable, FreeProductOracle, WordOracle};
use crate::induction::{basic_relation, conjugate_relation};
use crate::words::{Alphabet, Word};

/// The group in which two `{a,c,d}`-words are compared, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityLevel {
    /// Free product of three `Z/2`: letter-exact after cancelling `xx`.
    Free,
    /// `Z/2<a> * V4<c,d>`, i.e. also `cd = dc`.
    Klein,
    /// `D16<a,c> * Z/2<d>`, i.e. also `(ac)^8 = 1`.
    Dihedral,
}

impl EqualityLevel {
    pub const ALL: [EqualityLevel; 3] = [
        EqualityLevel::Free,
        EqualityLevel::Klein,
        EqualityLevel::Dihedral,
    ];
}

/// Word oracles for the three levels on the `{a,c,d}` alphabet.
struct Levels {
    acd: Alphabet,
    klein: FreeProductOracle,
    dihedral: FreeProductOracle,
}

impl Levels {
    fn new(g: &GrigorchukData) -> Self {
        let acd = alphabet(Variant::Acd);
        let z2a = FiniteGroupTable::cyclic(2, "a").expect("order 2");
        let z2d = FiniteGroupTable::cyclic(2, "d").expect("order 2");
        let v4 = FiniteGroupTable::from_permutations(
            Alphabet::involutive(&["c", "d"]),
            vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
        )
        .expect("Klein four");
        Levels {
            klein: FreeProductOracle::new(acd.clone(), vec![z2a, v4]).expect("partition of a,c,d"),
            dihedral: FreeProductOracle::new(acd.clone(), vec![g.d16.clone(), z2d])
                .expect("partition of a,c,d"),
            acd,
        }
    }

    fn closes(&self, level: EqualityLevel, u: &Word, v: &Word) -> bool {
        match level {
            EqualityLevel::Free => self.acd.freely_equal(u, v),
            EqualityLevel::Klein => self.klein.equal(u, v),
            EqualityLevel::Dihedral => self.dihedral.equal(u, v),
        }
    }

    fn strongest(&self, u: &Word, v: &Word) -> (Option<EqualityLevel>, Vec<EqualityLevel>) {
        let all: Vec<EqualityLevel> = EqualityLevel::ALL
            .into_iter()
            .filter(|&l| self.closes(l, u, v))
            .collect();
        (all.first().copied(), all)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaseId {
    pub n: usize,
    pub family: Family,
    pub factor: Factor,
    /// Name of the `D8` element conjugating the basic relation.
    pub x: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: CaseId,
    /// `C σ(r_n) C^-1`, reduced, with `b` read as `cd`.
    pub expected: String,
    /// The transported relation `^x T(r_n)`, reduced.
    pub computed: String,
    pub equal: bool,
    /// Strongest level at which the two words agree.
    pub level: Option<EqualityLevel>,
    pub closes_at: Vec<EqualityLevel>,
    /// `^x T(r_n)` as y-letters.
    pub relation: String,
    pub expansions: Vec<Expansion>,
}

impl VerificationReport {
    /// Rebuilds `computed` from `relation` and `expansions` alone.
    pub fn replays(&self) -> bool {
        let acd = alphabet(Variant::Acd);
        let table: HashMap<&str, &str> = self
            .expansions
            .iter()
            .map(|e| (e.letter.as_str(), e.word.as_str()))
            .collect();
        let mut out = Word::empty();
        for y in self.relation.split_whitespace() {
            let Some(text) = table.get(y) else {
                return false;
            };
            let Ok(w) = parse_compact(&acd, text) else {
                return false;
            };
            out.extend_from(&w);
        }
        acd.compact(&acd.free_reduce(&out)) == self.computed
    }
}

fn parse_compact(a: &Alphabet, text: &str) -> Result<Word, crate::ParseError> {
    let spaced: Vec<String> = text.chars().map(String::from).collect();
    a.parse_word(&spaced.join(" "))
}

/// Transports `^x T(r_n)` from the chosen factor of `B x B` into `A` and
/// compares it with `C σ(r_n) C^-1`.
pub fn verify_sigma_identity(
    n: usize,
    family: Family,
    factor: Factor,
    x: usize,
    g: &GrigorchukData,
) -> VerificationReport {
    verify_with(n, family, factor, x, g, &Levels::new(g))
}

fn verify_with(
    n: usize,
    family: Family,
    factor: Factor,
    x: usize,
    g: &GrigorchukData,
    levels: &Levels,
) -> VerificationReport {
    let acd = &levels.acd;
    let r = relator_family(Variant::Abd, family, n);
    let t = basic_relation(&r, &g.split).expect("relators close up in D8");
    let tx = conjugate_relation(&t, x, &g.d8);
    let (computed, expansions) = transport_with_trace(&tx, factor, g);
    let c = g.transport_conjugator(x, factor);
    let next = translate_bd_to_cd(&relator_family(Variant::Abd, family, n + 1));
    let expected = acd.free_reduce(&Word::concat([&c, &next, &acd.inverse(&c)]));
    let (level, closes_at) = levels.strongest(&expected, &computed);
    let names: Vec<String> = tx.iter().map(|y| y.name(&g.split)).collect();
    VerificationReport {
        case: CaseId {
            n,
            family,
            factor,
            x: g.d8.name(x).to_string(),
        },
        expected: acd.compact(&expected),
        computed: acd.compact(&computed),
        equal: level.is_some(),
        level,
        closes_at,
        relation: names.join(" "),
        expansions,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub total: usize,
    pub equal: usize,
    pub failed: usize,
    /// Reports whose strongest closing level is free, Klein, dihedral.
    pub strongest_free: usize,
    pub strongest_klein: usize,
    pub strongest_dihedral: usize,
    /// Reports closing at each level, independently.
    pub closes_free: usize,
    pub closes_klein: usize,
    pub closes_dihedral: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRun {
    pub max_n: usize,
    pub summary: VerificationSummary,
    pub log: Vec<String>,
    pub reports: Vec<VerificationReport>,
}

impl VerificationRun {
    pub fn all_equal(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Every case `n in 1..=max_n`, both families, both factors, all of `D8`,
/// in that nesting order.
pub fn run_full_verification(max_n: usize) -> VerificationRun {
    let g = GrigorchukData::new();
    let levels = Levels::new(&g);
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for family in [Family::W, Family::Z] {
            for factor in [Factor::First, Factor::Second] {
                for x in 0..g.d8.order() {
                    cases.push((n, family, factor, x));
                }
            }
        }
    }
    let reports: Vec<VerificationReport> = cases
        .par_iter()
        .map(|&(n, family, factor, x)| verify_with(n, family, factor, x, &g, &levels))
        .collect();
    let mut s = VerificationSummary {
        total: reports.len(),
        ..Default::default()
    };
    for r in &reports {
        if r.equal {
            s.equal += 1;
        } else {
            s.failed += 1;
        }
        match r.level {
            Some(EqualityLevel::Free) => s.strongest_free += 1,
            Some(EqualityLevel::Klein) => s.strongest_klein += 1,
            Some(EqualityLevel::Dihedral) => s.strongest_dihedral += 1,
            None => {}
        }
        s.closes_free += r.closes_at.contains(&EqualityLevel::Free) as usize;
        s.closes_klein += r.closes_at.contains(&EqualityLevel::Klein) as usize;
        s.closes_dihedral += r.closes_at.contains(&EqualityLevel::Dihedral) as usize;
    }
    let log = vec!["n = 0 skipped: w_0 = (ad)^4 has no b, so T(w_0) is empty".to_string()];
    VerificationRun {
        max_n,
        summary: s,
        log,
        reports,
    }
}

/// How `b -> cd` carries the `{a,b,d}` relator families onto the `{a,c,d}` ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub n: usize,
    pub family: Family,
    pub level: Option<EqualityLevel>,
}

pub fn family_correspondence(max_n: usize) -> Vec<Correspondence> {
    let g = GrigorchukData::new();
    let levels = Levels::new(&g);
    let mut out = Vec::new();
    for n in 0..=max_n {
        for family in [Family::W, Family::Z] {
            let lhs = translate_bd_to_cd(&relator_family(Variant::Abd, family, n));
            let rhs = relator_family(Variant::Acd, family, n);
            out.push(Correspondence {
                n,
                family,
                level: levels.strongest(&lhs, &rhs).0,
            });
        }
    }
    out
}
