//! Text format for presentations.
//!
//! ```text
//! # comment
//! name d8;
//! gens a!, d!;                 # `!` marks an involutive generator
//! rel (a d)^4;
//! rule a d a d -> d a d a;
//! sub sigma: a -> a c a; c -> c d; d -> c;
//! ```
//!
//! Endomorphic presentations start with `endo gens ...;` and list `Q`, `R`
//! and one `phi <stable letter>: ...;` per endomorphism. Words are
//! space-separated generator names; `x'` is an inverse, `( ... )^k` repeats,
//! and `1` is the empty word. The printer emits the canonical form that
//! [`parse_document`] reads back to the same value.

use itertools::Itertools;

use thiserror::Error;

use crate::endo::EndomorphicPresentation;
use crate::words::{Alphabet, Letter, Presentation, Substitution, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A rewriting rule as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleDecl {
    pub lhs: Word,
    pub rhs: Word,
}

/// Contents of an ordinary presentation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub substitutions: Vec<Substitution>,
    pub rules: Vec<RuleDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Plain(PresentationFile),
    Endomorphic(EndomorphicPresentation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Bang,
    Comma,
    Semi,
    Colon,
    Arrow,
    LParen,
    RParen,
    Caret,
    Prime,
    Minus,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| {
                out.push(Spanned {
                    tok,
                    line: lineno + 1,
                    column,
                })
            };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                // conjugate-letter names such as `b^[ad]`
                if i + 1 < chars.len() && chars[i] == '^' && chars[i + 1] == '[' {
                    let close = chars[i..]
                        .iter()
                        .position(|&ch| ch == ']')
                        .ok_or(ParseError {
                            line: lineno + 1,
                            column: i + 1,
                            message: "unterminated `^[` in name".into(),
                        })?;
                    i += close + 1;
                }
                let name: String = chars[start..i].iter().collect();
                push(&mut out, Tok::Name(name));
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<i64>().map_err(|_| ParseError {
                    line: lineno + 1,
                    column,
                    message: format!("integer out of range: {s}"),
                })?;
                push(&mut out, Tok::Int(v));
                continue;
            }
            let tok = match c {
                '!' => Tok::Bang,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '^' => Tok::Caret,
                '\'' => Tok::Prime,
                '-' if chars.get(i + 1) == Some(&'>') => {
                    i += 1;
                    Tok::Arrow
                }
                '-' => Tok::Minus,
                other => {
                    return Err(ParseError {
                        line: lineno + 1,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            push(&mut out, tok);
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|s| &s.tok)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column),
            None => self
                .toks
                .last()
                .map(|s| (s.line, s.column + 1))
                .unwrap_or((1, 1)),
        };
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    /// `;` or end of input.
    fn end_statement(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Semi) => {
                self.pos += 1;
                Ok(())
            }
            None => Ok(()),
            _ => Err(self.err("expected `;`")),
        }
    }

    fn word(&mut self, alpha: &Alphabet) -> Result<Word, ParseError> {
        let mut out = Word::empty();
        loop {
            let atom = match self.peek() {
                Some(Tok::Name(n)) => {
                    let g = alpha
                        .index_of(n)
                        .ok_or_else(|| self.err(format!("unknown generator `{n}`")))?;
                    self.pos += 1;
                    let mut l = Letter::pos(g);
                    if self.peek() == Some(&Tok::Prime) {
                        self.pos += 1;
                        l = alpha.inverse_letter(l);
                    }
                    Word::from(vec![l])
                }
                Some(Tok::Int(1)) => {
                    self.pos += 1;
                    Word::empty()
                }
                Some(Tok::LParen) => {
                    self.pos += 1;
                    let inner = self.word(alpha)?;
                    self.expect(Tok::RParen, "`)`")?;
                    inner
                }
                _ => break,
            };
            let atom = if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                let neg = if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let k = match self.bump() {
                    Some(Tok::Int(k)) => k,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("expected an exponent"));
                    }
                };
                let base = if neg { alpha.inverse(&atom) } else { atom };
                base.pow(k as usize)
            } else {
                atom
            };
            out.extend_from(&atom);
        }
        Ok(out)
    }

    fn word_list(&mut self, alpha: &Alphabet) -> Result<Vec<Word>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Semi) | None) {
            return Ok(out);
        }
        loop {
            out.push(self.word(alpha)?);
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn gens(&mut self) -> Result<Alphabet, ParseError> {
        let mut letters = Vec::new();
        let at = self.pos;
        if !matches!(self.peek(), Some(Tok::Semi) | None) {
            loop {
                let n = self.name()?;
                let inv = if self.peek() == Some(&Tok::Bang) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                letters.push((n, inv));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Alphabet::new(letters).map_err(|e| {
            self.pos = at;
            self.err(e.to_string())
        })
    }

    /// Entries `l -> word;` of a substitution, up to the first token pair
    /// that is not `name ->`.
    fn substitution(&mut self, name: String, alpha: &Alphabet) -> Result<Substitution, ParseError> {
        let at = self.pos;
        let mut images: Vec<Option<Word>> = vec![None; alpha.len()];
        loop {
            let l = self.name()?;
            let g = alpha
                .index_of(&l)
                .ok_or_else(|| self.err(format!("unknown generator `{l}`")))?;
            self.expect(Tok::Arrow, "`->`")?;
            let img = self.word(alpha)?;
            if images[g].replace(img).is_some() {
                return Err(self.err(format!("image of `{l}` given twice")));
            }
            self.end_statement()?;
            if !(matches!(self.peek(), Some(Tok::Name(_))) && self.peek2() == Some(&Tok::Arrow)) {
                break;
            }
        }
        let mut imgs = Vec::with_capacity(alpha.len());
        for (g, img) in images.into_iter().enumerate() {
            match img {
                Some(w) => imgs.push(w),
                None => {
                    self.pos = at;
                    return Err(self.err(format!("no image for `{}`", alpha.name(g))));
                }
            }
        }
        Substitution::endo(name, alpha.clone(), imgs).map_err(|e| {
            self.pos = at;
            self.err(e.to_string())
        })
    }
}

/// Parses a presentation file or an endomorphic presentation file.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut label = String::new();
    let mut alpha: Option<Alphabet> = None;
    let mut endo = false;
    let mut rels = Vec::new();
    let mut subs = Vec::new();
    let mut rules = Vec::new();
    let mut q = Vec::new();
    let mut r = Vec::new();
    let mut phis = Vec::new();

    while p.peek().is_some() {
        let kw_at = p.pos;
        let kw = p.name()?;
        let need_alpha = |p: &Parser, alpha: &Option<Alphabet>| -> Result<Alphabet, ParseError> {
            alpha.clone().ok_or_else(|| p.err("`gens` must come first"))
        };
        match kw.as_str() {
            "name" => {
                label = p.name()?;
                p.end_statement()?;
            }
            "endo" | "gens" => {
                if kw == "endo" {
                    endo = true;
                    let g = p.name()?;
                    if g != "gens" {
                        p.pos -= 1;
                        return Err(p.err("expected `gens` after `endo`"));
                    }
                }
                if alpha.is_some() {
                    p.pos = kw_at;
                    return Err(p.err("generators declared twice"));
                }
                alpha = Some(p.gens()?);
                p.end_statement()?;
            }
            "rel" if !endo => {
                let a = need_alpha(&p, &alpha)?;
                rels.extend(p.word_list(&a)?);
                p.end_statement()?;
            }
            "rule" if !endo => {
                let a = need_alpha(&p, &alpha)?;
                let lhs = p.word(&a)?;
                p.expect(Tok::Arrow, "`->`")?;
                let rhs = p.word(&a)?;
                p.end_statement()?;
                rules.push(RuleDecl { lhs, rhs });
            }
            "sub" if !endo => {
                let a = need_alpha(&p, &alpha)?;
                let n = p.name()?;
                p.expect(Tok::Colon, "`:`")?;
                subs.push(p.substitution(n, &a)?);
            }
            "Q" if endo => {
                let a = need_alpha(&p, &alpha)?;
                q.extend(p.word_list(&a)?);
                p.end_statement()?;
            }
            "R" if endo => {
                let a = need_alpha(&p, &alpha)?;
                r.extend(p.word_list(&a)?);
                p.end_statement()?;
            }
            "phi" if endo => {
                let a = need_alpha(&p, &alpha)?;
                let n = p.name()?;
                p.expect(Tok::Colon, "`:`")?;
                phis.push(p.substitution(n, &a)?);
            }
            other => {
                p.pos = kw_at;
                return Err(p.err(format!("unexpected `{other}`")));
            }
        }
    }

    let alpha = alpha.ok_or_else(|| p.err("missing `gens`"))?;
    if endo {
        let ep =
            EndomorphicPresentation::new(label, alpha, q, phis, r).map_err(|e| ParseError {
                line: 1,
                column: 1,
                message: e.to_string(),
            })?;
        Ok(Document::Endomorphic(ep))
    } else {
        let presentation = Presentation::new(label, alpha, rels).map_err(|e| ParseError {
            line: 1,
            column: 1,
            message: e.to_string(),
        })?;
        Ok(Document::Plain(PresentationFile {
            presentation,
            substitutions: subs,
            rules,
        }))
    }
}

/// Parses a file that must be an ordinary presentation.
pub fn parse_presentation(text: &str) -> Result<PresentationFile, ParseError> {
    match parse_document(text)? {
        Document::Plain(f) => Ok(f),
        Document::Endomorphic(_) => Err(ParseError {
            line: 1,
            column: 1,
            message: "expected an ordinary presentation, found `endo`".into(),
        }),
    }
}

impl Alphabet {
    /// Parses a single word in the file syntax.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let toks = lex(text)?;
        let mut p = Parser { toks, pos: 0 };
        let w = p.word(self)?;
        if p.peek().is_some() {
            return Err(p.err("trailing input after word"));
        }
        Ok(w)
    }
}

fn gens_line(a: &Alphabet) -> String {
    a.names()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            if a.is_involutive(i) {
                format!("{n}!")
            } else {
                n.clone()
            }
        })
        .join(", ")
}

fn sub_line(keyword: &str, s: &Substitution) -> String {
    let a = s.source();
    let entries = (0..a.len())
        .map(|g| format!("{} -> {};", a.name(g), s.target().format(s.image(g))))
        .join(" ");
    format!("{keyword} {}: {entries}\n", s.name)
}

pub fn print_presentation_file(f: &PresentationFile) -> String {
    let p = &f.presentation;
    let a = p.alphabet();
    let mut out = String::new();
    if !p.name.is_empty() {
        out.push_str(&format!("name {};\n", p.name));
    }
    out.push_str(&format!("gens {};\n", gens_line(a)));
    for r in p.relators() {
        out.push_str(&format!("rel {};\n", a.format(r)));
    }
    for s in &f.substitutions {
        out.push_str(&sub_line("sub", s));
    }
    for rule in &f.rules {
        out.push_str(&format!(
            "rule {} -> {};\n",
            a.format(&rule.lhs),
            a.format(&rule.rhs)
        ));
    }
    out
}

pub fn print_presentation(p: &Presentation) -> String {
    print_presentation_file(&PresentationFile {
        presentation: p.clone(),
        substitutions: Vec::new(),
        rules: Vec::new(),
    })
}

pub fn print_endomorphic(ep: &EndomorphicPresentation) -> String {
    let a = ep.alphabet();
    let list = |ws: &[Word]| ws.iter().map(|w| a.format(w)).join(", ");
    let mut out = String::new();
    if !ep.name.is_empty() {
        out.push_str(&format!("name {};\n", ep.name));
    }
    out.push_str(&format!("endo gens {};\n", gens_line(a)));
    if ep.q().is_empty() {
        out.push_str("Q;\n");
    } else {
        out.push_str(&format!("Q {};\n", list(ep.q())));
    }
    if ep.r().is_empty() {
        out.push_str("R;\n");
    } else {
        out.push_str(&format!("R {};\n", list(ep.r())));
    }
    for s in ep.phis() {
        out.push_str(&sub_line("phi", s));
    }
    out
}

pub fn print_document(d: &Document) -> String {
    match d {
        Document::Plain(f) => print_presentation_file(f),
        Document::Endomorphic(ep) => print_endomorphic(ep),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_involutive_relator() {
        let f = parse_presentation("gens a!, c!, d!; rel (a d)^4").unwrap();
        let a = f.presentation.alphabet();
        assert_eq!(a.len(), 3);
        assert!((0..3).all(|g| a.is_involutive(g)));
        assert_eq!(f.presentation.relators().len(), 1);
        assert_eq!(f.presentation.relators()[0].len(), 8);
    }

    #[test]
    fn parses_grigorchuk_substitution() {
        let f = parse_presentation("gens a!, c!, d!;\nsub sigma: a->a c a; c->c d; d->c").unwrap();
        let s = &f.substitutions[0];
        let a = s.source();
        assert_eq!(s.name, "sigma");
        assert_eq!(a.compact(s.image(0)), "aca");
        assert_eq!(a.compact(s.image(1)), "cd");
        assert_eq!(a.compact(s.image(2)), "c");
    }

    #[test]
    fn unbalanced_paren_is_an_error() {
        let err = parse_presentation("gens a;\nrel (a").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_presentation("gens a; rel b;").unwrap_err();
        assert!(err.message.contains("unknown generator"));
        assert_eq!((err.line, err.column), (1, 13));
    }

    #[test]
    fn inverse_and_power_syntax() {
        let a = Alphabet::plain(&["a", "b"]);
        assert_eq!(a.format(&a.parse_word("(a b)^-1").unwrap()), "b' a'");
        assert_eq!(a.format(&a.parse_word("a^0 b").unwrap()), "b");
        assert!(a.parse_word("1").unwrap().is_empty());
    }

    #[test]
    fn canonical_print_round_trips() {
        let text = "# D8\nname d8;\ngens a!, d!;\nrel (a d)^4;\nrule a d a d -> d a d a;\nrule a a -> 1;\n";
        let f = parse_presentation(text).unwrap();
        let printed = print_presentation_file(&f);
        assert_eq!(parse_presentation(&printed).unwrap(), f);
        assert_eq!(
            print_presentation_file(&parse_presentation(&printed).unwrap()),
            printed
        );
    }

    #[test]
    fn endomorphic_round_trip() {
        let text = "name lysenok; endo gens a!, c!, d!; Q; R a a, (a d)^4, (a d a c a c)^4;\n\
                    phi t: a -> a c a; c -> c d; d -> c;";
        let d = parse_document(text).unwrap();
        let Document::Endomorphic(ep) = &d else {
            panic!("expected endo")
        };
        assert_eq!(ep.r().len(), 3);
        assert_eq!(ep.stable_names(), vec!["t".to_string()]);
        let printed = print_document(&d);
        assert_eq!(parse_document(&printed).unwrap(), d);
    }

    #[test]
    fn conjugate_letter_names_lex() {
        let f = parse_presentation("gens b^[e], b^[ad]; rel b^[ad] b^[e]';").unwrap();
        assert_eq!(f.presentation.alphabet().name(1), "b^[ad]");
        assert_eq!(
            f.presentation
                .alphabet()
                .format(&f.presentation.relators()[0]),
            "b^[ad] b^[e]'"
        );
    }
}
