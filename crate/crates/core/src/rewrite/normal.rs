//! Normal form when `S` is empty.
//!
//! Without H3 the reducing moves are confluent, so reducing in any order
//! until no site is left gives one phrase up to isomorphism. That phrase
//! also has minimal rank in its homotopy class.

use super::moves::{apply_move, reducing_moves, Move};
use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::phrase::Nanophrase;

/// Canonical normal form of `p`.
pub fn normal_form(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<Nanophrase> {
    Ok(normal_form_with_path(p, triple)?.0)
}

/// Normal form together with the reducing moves that reach it. Each move
/// applies to the canonical form of the previous phrase, starting from
/// `p.canonical()`.
pub fn normal_form_with_path(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<(Nanophrase, Vec<Move>)> {
    reduce_with(p, triple, |sites| sites.first().cloned())
}

/// Reduces using `choose` to pick one site from the current list. Stops
/// when there are no sites left or `choose` returns `None`.
pub fn reduce_with(
    p: &Nanophrase,
    triple: &HomotopyDataTriple,
    mut choose: impl FnMut(&[Move]) -> Option<Move>,
) -> Result<(Nanophrase, Vec<Move>)> {
    if !triple.s_is_empty() {
        return Err(Error::SNotEmpty);
    }
    triple.require_nonunit()?;
    triple.check_phrase(p)?;
    let mut cur = p.canonical();
    let mut path = Vec::new();
    loop {
        let sites = reducing_moves(&cur, triple)?;
        let Some(m) = (if sites.is_empty() { None } else { choose(&sites) }) else {
            break;
        };
        cur = apply_move(&cur, triple, &m)?.canonical();
        path.push(m);
    }
    Ok((cur, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    fn free_pair() -> HomotopyDataTriple {
        parse_triple("alpha: a b\ntau: a<->b\nS:").unwrap()
    }

    #[test]
    fn abba_collapses() {
        let p = parse_phrase("A:a B:b ; ABBA").unwrap();
        let (nf, path) = normal_form_with_path(&p, &free_pair()).unwrap();
        assert_eq!(nf, Nanophrase::trivial(1));
        assert_eq!(path.len(), 2);
    }

    #[test]
    fn abab_is_already_normal() {
        let p = parse_phrase("A:a B:a ; ABAB").unwrap();
        assert_eq!(normal_form(&p, &free_pair()).unwrap(), p.canonical());
    }

    #[test]
    fn empty_phrase_is_fixed() {
        assert_eq!(normal_form(&Nanophrase::empty(), &free_pair()).unwrap(), Nanophrase::empty());
    }

    #[test]
    fn needs_empty_s() {
        let t = HomotopyDataTriple::alpha_g();
        assert_eq!(normal_form(&Nanophrase::empty(), &t), Err(Error::SNotEmpty));
    }

    #[test]
    fn every_order_agrees() {
        let t = free_pair();
        let p = parse_phrase("A:a B:b C:a D:a E:b ; ABBCDDA|EE|C").unwrap();
        let expected = normal_form(&p, &t).unwrap();
        for pick in 0..4 {
            let (nf, _) = reduce_with(&p, &t, |s| s.get(pick % s.len()).cloned()).unwrap();
            assert_eq!(nf, expected);
        }
        // BB, DD and EE go; ACA|_|C has no site left.
        assert_eq!(expected.rank(), 2);
        assert!(expected.component(1).is_empty());
    }
}
