//! Triple files:
//!
//! ```text
//! alpha: a b c d
//! tau: a<->b c<->d
//! S: (a,b,a) (c,d,c)
//! ```
//!
//! Symbols absent from `tau` are fixed. `S: diagonal` stands for every
//! `(x,x,x)`. Lines may also be separated by `;`, and `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use super::HomotopyDataTriple;
use crate::error::{Error, Result};
use crate::phrase::Symbol;

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !matches!(c, ':' | ';' | '|' | '(' | ')' | ',' | '<'))
}

pub fn parse_triple(text: &str) -> Result<HomotopyDataTriple> {
    let mut alpha: Option<Vec<String>> = None;
    let mut pairs: Vec<(String, String, usize)> = Vec::new();
    let mut triples: Vec<(String, String, String, usize)> = Vec::new();
    let mut diagonal = false;
    let mut offset = 0;
    for raw in text.split(['\n', ';']) {
        let start = offset;
        offset += raw.len() + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| syntax(start, "expected 'key: value'"))?;
        let rest_at = start + key.len() + 1;
        match key.trim() {
            "alpha" => {
                if alpha.is_some() {
                    return Err(syntax(start, "alpha given twice"));
                }
                let syms: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = syms.iter().find(|s| !valid_symbol(s)) {
                    return Err(syntax(rest_at, format!("bad symbol {bad:?}")));
                }
                alpha = Some(syms);
            }
            "tau" => {
                for tok in rest.split_whitespace() {
                    match tok.split_once("<->") {
                        Some((a, b)) => pairs.push((a.to_string(), b.to_string(), rest_at)),
                        None => pairs.push((tok.to_string(), tok.to_string(), rest_at)),
                    }
                }
            }
            "S" => {
                let body = rest.trim();
                if body == "diagonal" {
                    diagonal = true;
                    continue;
                }
                let mut chars = body.char_indices().peekable();
                while let Some((i, c)) = chars.next() {
                    if c.is_whitespace() {
                        continue;
                    }
                    if c != '(' {
                        return Err(syntax(rest_at + i, "expected '('"));
                    }
                    let close = body[i..].find(')').ok_or_else(|| syntax(rest_at + i, "unclosed '('"))? + i;
                    let inner: Vec<&str> = body[i + 1..close].split(',').map(str::trim).collect();
                    if inner.len() != 3 {
                        return Err(syntax(rest_at + i, "S entries have three symbols"));
                    }
                    triples.push((inner[0].to_string(), inner[1].to_string(), inner[2].to_string(), rest_at + i));
                    while chars.peek().is_some_and(|(j, _)| *j <= close) {
                        chars.next();
                    }
                }
            }
            other => return Err(syntax(start, format!("unknown key {other:?}"))),
        }
    }
    let alpha = alpha.ok_or_else(|| syntax(0, "missing 'alpha:' line"))?;
    let names: Vec<&str> = alpha.iter().map(String::as_str).collect();
    let unknown = |s: &str| Error::UnknownSymbol { symbol: s.to_string() };
    let mut tau_pairs = Vec::new();
    for (a, b, _) in &pairs {
        if !names.contains(&a.as_str()) {
            return Err(unknown(a));
        }
        if !names.contains(&b.as_str()) {
            return Err(unknown(b));
        }
        if a != b {
            tau_pairs.push((a.as_str(), b.as_str()));
        }
    }
    let s: Vec<(&str, &str, &str)> = triples.iter().map(|(a, b, c, _)| (a.as_str(), b.as_str(), c.as_str())).collect();
    let mut t = HomotopyDataTriple::from_names(&names, &tau_pairs, &s)?;
    if diagonal {
        let mut all: BTreeSet<(usize, usize, usize)> = t.s().clone();
        all.extend((0..names.len()).map(|i| (i, i, i)));
        t = HomotopyDataTriple::new(t.alpha().to_vec(), (0..names.len()).map(|i| t.tau(i)).collect(), all)?;
    }
    Ok(t)
}

impl fmt::Display for HomotopyDataTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<&str> = self.alpha().iter().map(Symbol::as_str).collect();
        writeln!(f, "alpha: {}", alpha.join(" "))?;
        let pairs: Vec<String> = self
            .orbits()
            .iter()
            .filter_map(|o| o.partner.map(|p| format!("{}<->{}", self.symbol(o.rep), self.symbol(p))))
            .collect();
        writeln!(f, "tau: {}", pairs.join(" "))?;
        if self.is_diagonal() {
            write!(f, "S: diagonal")
        } else {
            let s: Vec<String> = self
                .s()
                .iter()
                .map(|&(a, b, c)| format!("({},{},{})", self.symbol(a), self.symbol(b), self.symbol(c)))
                .collect();
            write!(f, "S: {}", s.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_form() {
        let t = parse_triple("alpha: a b c d e\ntau: a<->b c<->d e\nS: (a,b,a) (c,d,c)\n").unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.tau(0), 1);
        assert_eq!(t.tau(4), 4);
        assert_eq!(t.s().len(), 2);
        assert!(t.contains(0, 1, 0));
    }

    #[test]
    fn diagonal_shorthand_and_inline_form() {
        let t = parse_triple("alpha: a b; tau: a<->b; S: diagonal").unwrap();
        assert_eq!(t, HomotopyDataTriple::alpha_f());
    }

    #[test]
    fn round_trips_through_display() {
        for text in ["alpha: a b c\ntau: a<->b\nS: (a,b,c) (c,b,a)", "alpha: a\ntau: \nS: diagonal", "alpha: \ntau: \nS: "]
        {
            let t = parse_triple(text).unwrap();
            assert_eq!(parse_triple(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_triple("tau: a<->b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_triple("alpha: a\ntau: a<->z"), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(parse_triple("alpha: a\nS: (a,a,q)"), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(parse_triple("alpha: a b c\ntau: a<->b b<->c"), Err(Error::InvalidTriple(_))));
        assert!(matches!(parse_triple("alpha: a\nS: (a,a)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_triple("alpha: a\nbeta: q"), Err(Error::Syntax { .. })));
    }
}
