//! Text form of phrases: `decls ; body`.
//!
//! `decls` is a list of `LETTER:symbol` tokens. The body separates components
//! with `|` and phrases with `||`; `_` is an empty component and `()` is a
//! phrase with no components. In compact mode letters are single uppercase
//! characters written without separators; in token mode they are identifiers
//! separated by whitespace.

use std::collections::BTreeMap;
use std::fmt;

use super::{Letter, Nanomultiphrase, Nanophrase, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum LetterMode {
    /// Token mode when a declared letter is not a single uppercase character.
    #[default]
    Auto,
    Compact,
    Token,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Parsed {
    Phrase(Nanophrase),
    Multi(Nanomultiphrase),
}

#[derive(Debug, PartialEq)]
enum Item {
    Letter(String, usize),
    CompSep,
    PhraseSep,
    Empty,
    EmptyPhrase,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn is_symbol_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ':' | ';' | '|' | '(' | ')' | ',')
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

fn is_compact_name(s: &str) -> bool {
    s.len() == 1 && s.as_bytes()[0].is_ascii_uppercase()
}

struct Decl {
    name: String,
    symbol: String,
}

fn parse_decls(text: &str) -> Result<Vec<Decl>> {
    let mut out: Vec<Decl> = Vec::new();
    let mut pos = 0;
    for tok in text.split_whitespace() {
        let offset = text[pos..].find(tok).map_or(pos, |k| pos + k);
        pos = offset + tok.len();
        let (name, symbol) = tok
            .split_once(':')
            .ok_or_else(|| syntax(offset, format!("expected LETTER:symbol, found {tok:?}")))?;
        if name.is_empty() || !name.chars().all(is_ident_char) {
            return Err(syntax(offset, format!("bad letter name {name:?}")));
        }
        if symbol.is_empty() || !symbol.chars().all(is_symbol_char) {
            return Err(syntax(offset + name.len() + 1, format!("bad symbol {symbol:?}")));
        }
        if out.iter().any(|d| d.name == name) {
            return Err(syntax(offset, format!("letter {name} declared twice")));
        }
        out.push(Decl { name: name.to_string(), symbol: symbol.to_string() });
    }
    Ok(out)
}

fn lex_body(body: &str, base: usize, token_mode: bool) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    let mut k = 0;
    while k < chars.len() {
        let (off, c) = chars[k];
        let at = base + off;
        if c.is_whitespace() {
            k += 1;
        } else if c == '|' {
            if chars.get(k + 1).map(|x| x.1) == Some('|') {
                items.push(Item::PhraseSep);
                k += 2;
            } else {
                items.push(Item::CompSep);
                k += 1;
            }
        } else if c == '(' {
            if chars.get(k + 1).map(|x| x.1) != Some(')') {
                return Err(syntax(at, "expected ')' after '('"));
            }
            items.push(Item::EmptyPhrase);
            k += 2;
        } else if token_mode && is_ident_char(c) {
            while k < chars.len() && is_ident_char(chars[k].1) {
                k += 1;
            }
            let end = chars.get(k).map_or(body.len(), |x| x.0);
            let word = &body[off..end];
            if word == "_" {
                items.push(Item::Empty);
            } else {
                items.push(Item::Letter(word.to_string(), at));
            }
        } else if !token_mode && c == '_' {
            items.push(Item::Empty);
            k += 1;
        } else if !token_mode && c.is_ascii_uppercase() {
            items.push(Item::Letter(c.to_string(), at));
            k += 1;
        } else {
            return Err(syntax(at, format!("unexpected character {c:?}")));
        }
    }
    Ok(items)
}

/// Components of each phrase, letters still named.
type RawPhrases = Vec<Vec<Vec<(String, usize)>>>;

fn structure(items: Vec<Item>, end: usize) -> Result<RawPhrases> {
    if items.is_empty() {
        return Ok(Vec::new());
    }
    let mut phrases: RawPhrases = Vec::new();
    for group in items.split(|i| *i == Item::PhraseSep) {
        if group.len() == 1 && group[0] == Item::EmptyPhrase {
            phrases.push(Vec::new());
            continue;
        }
        let mut comps = Vec::new();
        for comp in group.split(|i| *i == Item::CompSep) {
            match comp {
                [Item::Empty] => comps.push(Vec::new()),
                [] => return Err(syntax(end, "empty component must be written '_'")),
                letters => {
                    let mut w = Vec::new();
                    for it in letters {
                        match it {
                            Item::Letter(n, at) => w.push((n.clone(), *at)),
                            Item::Empty => return Err(syntax(end, "'_' must stand alone in a component")),
                            Item::EmptyPhrase => return Err(syntax(end, "'()' must stand alone in a phrase")),
                            _ => unreachable!(),
                        }
                    }
                    comps.push(w);
                }
            }
        }
        phrases.push(comps);
    }
    Ok(phrases)
}

fn build(decls: Vec<Decl>, phrases: RawPhrases) -> Result<Nanomultiphrase> {
    let mut ids: BTreeMap<String, Letter> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut components = Vec::new();
    let mut lengths = Vec::new();
    for comps in &phrases {
        lengths.push(comps.len());
        for w in comps {
            let mut word = Vec::with_capacity(w.len());
            for (name, _) in w {
                let next = Letter(ids.len() as u32 + 1);
                let id = *ids.entry(name.clone()).or_insert_with(|| {
                    order.push(name.clone());
                    next
                });
                *counts.entry(name.clone()).or_default() += 1;
                word.push(id);
            }
            components.push(word);
        }
    }
    for name in &order {
        if counts[name] != 2 {
            return Err(Error::NonGauss { letter: name.clone(), count: counts[name] });
        }
    }
    for d in &decls {
        if !ids.contains_key(&d.name) {
            return Err(Error::NonGauss { letter: d.name.clone(), count: 0 });
        }
    }
    let declared: BTreeMap<&str, &str> = decls.iter().map(|d| (d.name.as_str(), d.symbol.as_str())).collect();
    let mut projection = BTreeMap::new();
    let mut names = BTreeMap::new();
    for name in &order {
        let sym = declared.get(name.as_str()).ok_or_else(|| Error::UndeclaredLetter { letter: name.clone() })?;
        projection.insert(ids[name], Symbol::new(sym));
        names.insert(ids[name], name.clone());
    }
    let phrase = Nanophrase::with_names(components, projection, names)?;
    Nanomultiphrase::new(phrase, lengths)
}

fn parse_any(text: &str, mode: LetterMode) -> Result<(Nanomultiphrase, bool)> {
    let semi = text.find(';').ok_or_else(|| syntax(text.len(), "expected ';' between declarations and body"))?;
    let decls = parse_decls(&text[..semi])?;
    let token_mode = match mode {
        LetterMode::Compact => false,
        LetterMode::Token => true,
        LetterMode::Auto => decls.iter().any(|d| !is_compact_name(&d.name)),
    };
    if !token_mode {
        if let Some(d) = decls.iter().find(|d| !is_compact_name(&d.name)) {
            return Err(syntax(0, format!("letter {:?} is not a single uppercase character", d.name)));
        }
    }
    let body = &text[semi + 1..];
    let items = lex_body(body, semi + 1, token_mode)?;
    let multi = items.contains(&Item::PhraseSep);
    let phrases = structure(items, text.len())?;
    Ok((build(decls, phrases)?, multi))
}

/// Parses a single nanophrase.
pub fn parse_phrase(text: &str) -> Result<Nanophrase> {
    parse_phrase_with(text, LetterMode::Auto)
}

pub fn parse_phrase_with(text: &str, mode: LetterMode) -> Result<Nanophrase> {
    let (m, multi) = parse_any(text, mode)?;
    if multi {
        return Err(syntax(0, "'||' is not allowed in a single phrase"));
    }
    Ok(m.flattened().clone())
}

/// Parses a nanomultiphrase. An empty body is the multiphrase with no phrases.
pub fn parse_multiphrase(text: &str) -> Result<Nanomultiphrase> {
    parse_multiphrase_with(text, LetterMode::Auto)
}

pub fn parse_multiphrase_with(text: &str, mode: LetterMode) -> Result<Nanomultiphrase> {
    Ok(parse_any(text, mode)?.0)
}

/// Parses a phrase, or a multiphrase when the body contains `||`.
pub fn parse(text: &str) -> Result<Parsed> {
    let (m, multi) = parse_any(text, LetterMode::Auto)?;
    Ok(if multi { Parsed::Multi(m) } else { Parsed::Phrase(m.flattened().clone()) })
}

fn render(p: &Nanophrase, lengths: Option<&[usize]>) -> String {
    let token = p.letters().any(|l| !is_compact_name(&p.name(l)));
    let mut seen = std::collections::BTreeSet::new();
    let mut decls = Vec::new();
    for l in p.components().iter().flatten() {
        if seen.insert(*l) {
            decls.push(format!("{}:{}", p.name(*l), p.symbol(*l)));
        }
    }
    let comp = |w: &[Letter]| -> String {
        if w.is_empty() {
            "_".to_string()
        } else {
            let names: Vec<_> = w.iter().map(|l| p.name(*l).into_owned()).collect();
            names.join(if token { " " } else { "" })
        }
    };
    let (csep, psep) = if token { (" | ", " || ") } else { ("|", "||") };
    let body = match lengths {
        None => p.components().iter().map(|w| comp(w)).collect::<Vec<_>>().join(csep),
        Some(lengths) => {
            let mut parts = Vec::new();
            let mut j = 0;
            for &len in lengths {
                if len == 0 {
                    parts.push("()".to_string());
                } else {
                    parts.push((j..j + len).map(|k| comp(p.component(k))).collect::<Vec<_>>().join(csep));
                }
                j += len;
            }
            parts.join(psep)
        }
    };
    let head = if decls.is_empty() { ";".to_string() } else { format!("{} ;", decls.join(" ")) };
    if body.is_empty() {
        head
    } else {
        format!("{head} {body}")
    }
}

impl fmt::Display for Nanophrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, None))
    }
}

impl fmt::Display for Nanomultiphrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.flattened(), Some(self.lengths())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for t in [
            "A:a B:b C:c ; ABC|AC|B",
            "; _",
            ";",
            "; _|_",
            "A:a ; AA|_",
            "X1:a Y:b ; X1 Y | Y X1",
        ] {
            let p = parse_phrase(t).unwrap();
            assert_eq!(p.to_string(), t);
        }
        for t in ["A:a B:a C:a D:a ; A|B||AC||D|B|CD", "; ()", ";", "A:a ; A||()||A"] {
            let m = parse_multiphrase(t).unwrap();
            assert_eq!(m.to_string(), t);
        }
    }

    #[test]
    fn empty_phrase_is_not_empty_component() {
        assert_eq!(parse_phrase(";").unwrap().num_components(), 0);
        assert_eq!(parse_phrase("; _").unwrap().num_components(), 1);
        assert_eq!(parse_phrase("; ()").unwrap().num_components(), 0);
        assert_eq!(parse_multiphrase(";").unwrap().num_phrases(), 0);
        assert_eq!(parse_multiphrase("; ()").unwrap().num_phrases(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_phrase("A:a ; ABA"), Err(Error::NonGauss { .. })));
        assert!(matches!(parse_phrase("A:a ; AAA"), Err(Error::NonGauss { count: 3, .. })));
        assert!(matches!(parse_phrase("A:a B:b ; AA"), Err(Error::NonGauss { count: 0, .. })));
        assert!(matches!(parse_phrase("A:a ; AABB"), Err(Error::UndeclaredLetter { .. })));
        assert!(matches!(parse_phrase("A:a AA"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phrase("A:a ; A||A"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phrase("A:a ; A|A_"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phrase("A:a ; A||"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phrase("A:a A:b ; AA"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_phrase("A:a ; Aa"), Err(Error::Syntax { offset: 7, .. })));
    }

    #[test]
    fn token_mode_is_explicit_or_inferred() {
        let p = parse_phrase_with("A:a ; A A", LetterMode::Token).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(parse_phrase_with("AB:a ; AB AB", LetterMode::Compact).is_err());
        let q = parse_phrase("AB:a C:b ; AB C | C AB").unwrap();
        assert_eq!(q.to_string(), "AB:a C:b ; AB C | C AB");
    }

    #[test]
    fn canonical_forms_render_in_token_mode() {
        let p = parse_phrase("A:a B:b ; AB|BA").unwrap().canonical();
        assert_eq!(p.to_string(), "X1:a X2:b ; X1 X2 | X2 X1");
        assert_eq!(parse_phrase(&p.to_string()).unwrap().canonical(), p);
    }

    #[test]
    fn parse_dispatches_on_phrase_separator() {
        assert!(matches!(parse("A:a ; A|A").unwrap(), Parsed::Phrase(_)));
        assert!(matches!(parse("A:a ; A||A").unwrap(), Parsed::Multi(_)));
    }
}
