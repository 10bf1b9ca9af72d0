//! The three homotopy moves, their enumeration and application.
//!
//! Reducing sites are named by letters. Augmenting sites are named by gaps,
//! the slots between letters of a component, and the symbols of the new
//! letters. Patterns may straddle component boundaries but each adjacent
//! pair must sit inside one component.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::phrase::{Letter, Nanophrase, OccurrenceIndex, Symbol};

/// Slot before offset `offset` of component `component`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gap {
    pub component: usize,
    pub offset: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveKind {
    H1,
    H2,
    H3,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Reduce,
    Augment,
    /// `AB..AC..BC` to `BA..CA..CB`.
    Forward,
    /// `BA..CA..CB` to `AB..AC..BC`.
    Backward,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Move {
    /// Deletes an adjacent pair `AA`.
    ReduceH1 { letter: Letter },
    /// Deletes `AB..BA` where `tau` maps the symbol of `A` to that of `B`.
    ReduceH2 { first: Letter, second: Letter },
    /// Reverses the three adjacent pairs formed by `a`, `b`, `c`.
    H3 { a: Letter, b: Letter, c: Letter, direction: Direction },
    /// Inserts `AA` with `A` a fresh letter of the given symbol.
    AugmentH1 { gap: Gap, symbol: Symbol },
    /// Inserts `AB` at `first_gap` and `BA` at `second_gap`.
    AugmentH2 { first_gap: Gap, second_gap: Gap, first: Symbol, second: Symbol },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::ReduceH1 { .. } | Move::AugmentH1 { .. } => MoveKind::H1,
            Move::ReduceH2 { .. } | Move::AugmentH2 { .. } => MoveKind::H2,
            Move::H3 { .. } => MoveKind::H3,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Move::ReduceH1 { .. } | Move::ReduceH2 { .. } => Direction::Reduce,
            Move::AugmentH1 { .. } | Move::AugmentH2 { .. } => Direction::Augment,
            Move::H3 { direction, .. } => *direction,
        }
    }

    /// Change in rank caused by the move.
    pub fn rank_change(&self) -> isize {
        match self {
            Move::ReduceH1 { .. } => -1,
            Move::ReduceH2 { .. } => -2,
            Move::H3 { .. } => 0,
            Move::AugmentH1 { .. } => 1,
            Move::AugmentH2 { .. } => 2,
        }
    }

    /// The same move after renaming letters.
    pub fn rename(&self, map: &BTreeMap<Letter, Letter>) -> Move {
        let m = |l: &Letter| *map.get(l).unwrap_or(l);
        match self {
            Move::ReduceH1 { letter } => Move::ReduceH1 { letter: m(letter) },
            Move::ReduceH2 { first, second } => Move::ReduceH2 { first: m(first), second: m(second) },
            Move::H3 { a, b, c, direction } => Move::H3 { a: m(a), b: m(b), c: m(c), direction: *direction },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::ReduceH1 { letter } => write!(f, "H1- X{}", letter.0),
            Move::ReduceH2 { first, second } => write!(f, "H2- X{} X{}", first.0, second.0),
            Move::H3 { a, b, c, direction } => {
                let d = if *direction == Direction::Forward { "fwd" } else { "bwd" };
                write!(f, "H3 {d} X{} X{} X{}", a.0, b.0, c.0)
            }
            Move::AugmentH1 { gap, symbol } => write!(f, "H1+ {}@{}.{}", symbol, gap.component + 1, gap.offset),
            Move::AugmentH2 { first_gap, second_gap, first, second } => write!(
                f,
                "H2+ {}{}@{}.{} {}@{}.{}",
                first,
                second,
                first_gap.component + 1,
                first_gap.offset,
                second,
                second_gap.component + 1,
                second_gap.offset
            ),
        }
    }
}

/// Letters of the phrase laid out flat, with component tags.
struct Layout {
    flat: Vec<Letter>,
    comp: Vec<usize>,
    occ: OccurrenceIndex,
}

impl Layout {
    fn new(p: &Nanophrase) -> Self {
        let mut flat = Vec::new();
        let mut comp = Vec::new();
        for (c, w) in p.components().iter().enumerate() {
            flat.extend_from_slice(w);
            comp.extend(std::iter::repeat(c).take(w.len()));
        }
        Layout { flat, comp, occ: p.occurrences() }
    }

    /// `f` and `f + 1` are in the same component.
    fn adjacent(&self, f: usize) -> bool {
        f + 1 < self.flat.len() && self.comp[f] == self.comp[f + 1]
    }

    fn other(&self, l: Letter, f: usize) -> usize {
        self.occ.other(l, f).flat
    }
}

fn symbol_indices(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<BTreeMap<Letter, usize>> {
    p.projection().iter().map(|(l, s)| Ok((*l, triple.require_index(s)?))).collect()
}

fn h1_sites(lay: &Layout) -> Vec<Move> {
    (0..lay.flat.len().saturating_sub(1))
        .filter(|&f| lay.adjacent(f) && lay.flat[f] == lay.flat[f + 1])
        .map(|f| Move::ReduceH1 { letter: lay.flat[f] })
        .collect()
}

/// `(x, y)` when `xy` sits at `f` and `yx` follows later.
fn h2_pattern(lay: &Layout, f: usize) -> Option<(Letter, Letter)> {
    if !lay.adjacent(f) {
        return None;
    }
    let (x, y) = (lay.flat[f], lay.flat[f + 1]);
    if x == y {
        return None;
    }
    let g = lay.other(y, f + 1);
    if g > f + 1 && lay.adjacent(g) && lay.flat[g + 1] == x && lay.other(x, f) == g + 1 {
        Some((x, y))
    } else {
        None
    }
}

fn h2_sites(lay: &Layout, sym: &BTreeMap<Letter, usize>, triple: &HomotopyDataTriple) -> Vec<Move> {
    (0..lay.flat.len())
        .filter_map(|f| h2_pattern(lay, f))
        .filter(|(x, y)| triple.tau(sym[x]) == sym[y])
        .map(|(x, y)| Move::ReduceH2 { first: x, second: y })
        .collect()
}

/// Positions `(f, q, r)` of the three pairs if the letters form the pattern
/// of the given direction.
fn h3_pattern(lay: &Layout, f: usize, direction: Direction) -> Option<(Letter, Letter, Letter, usize, usize)> {
    if !lay.adjacent(f) {
        return None;
    }
    let (u, v) = (lay.flat[f], lay.flat[f + 1]);
    let (a, b, c, q, r) = match direction {
        Direction::Forward => {
            // AB .. AC .. BC
            let (a, b) = (u, v);
            let q = lay.other(a, f);
            if q <= f + 1 || !lay.adjacent(q) {
                return None;
            }
            let c = lay.flat[q + 1];
            let r = lay.other(b, f + 1);
            if r <= q + 1 || !lay.adjacent(r) || lay.flat[r + 1] != c || lay.other(c, q + 1) != r + 1 {
                return None;
            }
            (a, b, c, q, r)
        }
        Direction::Backward => {
            // BA .. CA .. CB
            let (b, a) = (u, v);
            let q1 = lay.other(a, f + 1);
            if q1 < f + 3 || !lay.adjacent(q1 - 1) {
                return None;
            }
            let q = q1 - 1;
            let c = lay.flat[q];
            let r1 = lay.other(b, f);
            if r1 < q + 3 || !lay.adjacent(r1 - 1) {
                return None;
            }
            let r = r1 - 1;
            if lay.flat[r] != c || lay.other(c, q) != r {
                return None;
            }
            (a, b, c, q, r)
        }
        _ => return None,
    };
    if a == b || b == c || a == c {
        return None;
    }
    Some((a, b, c, q, r))
}

fn h3_sites(lay: &Layout, sym: &BTreeMap<Letter, usize>, triple: &HomotopyDataTriple) -> Vec<Move> {
    let mut out = Vec::new();
    if triple.s_is_empty() {
        return out;
    }
    for direction in [Direction::Forward, Direction::Backward] {
        for f in 0..lay.flat.len() {
            if let Some((a, b, c, _, _)) = h3_pattern(lay, f, direction) {
                if triple.contains(sym[&a], sym[&b], sym[&c]) {
                    out.push(Move::H3 { a, b, c, direction });
                }
            }
        }
    }
    out
}

/// Augmenting sites of a phrase, produced on demand.
#[derive(Clone, Debug)]
pub struct AugmentingMoves {
    gaps: Vec<Gap>,
    symbols: Vec<Symbol>,
    partners: Vec<Symbol>,
}

impl AugmentingMoves {
    fn new(p: &Nanophrase, triple: &HomotopyDataTriple) -> Self {
        let gaps = p
            .components()
            .iter()
            .enumerate()
            .flat_map(|(c, w)| (0..=w.len()).map(move |offset| Gap { component: c, offset }))
            .collect();
        let symbols: Vec<Symbol> = triple.alpha().to_vec();
        let partners = (0..triple.len()).map(|i| triple.symbol(triple.tau(i)).clone()).collect();
        AugmentingMoves { gaps, symbols, partners }
    }

    pub fn h1(&self) -> impl Iterator<Item = Move> + '_ {
        self.gaps
            .iter()
            .flat_map(move |g| self.symbols.iter().map(move |s| Move::AugmentH1 { gap: *g, symbol: s.clone() }))
    }

    pub fn h2(&self) -> impl Iterator<Item = Move> + '_ {
        let n = self.gaps.len();
        (0..n).flat_map(move |i| {
            (i..n).flat_map(move |j| {
                self.symbols.iter().zip(&self.partners).map(move |(a, b)| Move::AugmentH2 {
                    first_gap: self.gaps[i],
                    second_gap: self.gaps[j],
                    first: a.clone(),
                    second: b.clone(),
                })
            })
        })
    }

    pub fn count_h1(&self) -> usize {
        self.gaps.len() * self.symbols.len()
    }

    pub fn count_h2(&self) -> usize {
        let n = self.gaps.len();
        n * (n + 1) / 2 * self.symbols.len()
    }
}

/// All move sites of a phrase. Augmenting sites stay parameterized until
/// iterated.
#[derive(Clone, Debug)]
pub struct MoveEnumeration {
    pub reducing: Vec<Move>,
    pub braid: Vec<Move>,
    pub augmenting: AugmentingMoves,
}

impl MoveEnumeration {
    /// Every site, reducing ones first.
    pub fn all(&self) -> impl Iterator<Item = Move> + '_ {
        self.reducing
            .iter()
            .cloned()
            .chain(self.braid.iter().cloned())
            .chain(self.augmenting.h1())
            .chain(self.augmenting.h2())
    }
}

/// Sites of rank-decreasing moves.
pub fn reducing_moves(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<Vec<Move>> {
    let sym = symbol_indices(p, triple)?;
    let lay = Layout::new(p);
    let mut out = h1_sites(&lay);
    out.extend(h2_sites(&lay, &sym, triple));
    Ok(out)
}

pub fn enumerate_moves(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<MoveEnumeration> {
    triple.require_nonunit()?;
    let sym = symbol_indices(p, triple)?;
    let lay = Layout::new(p);
    let mut reducing = h1_sites(&lay);
    reducing.extend(h2_sites(&lay, &sym, triple));
    let braid = h3_sites(&lay, &sym, triple);
    Ok(MoveEnumeration { reducing, braid, augmenting: AugmentingMoves::new(p, triple) })
}

fn stale(m: &Move) -> Error {
    Error::StaleSite(m.to_string())
}

fn remove_letters(p: &Nanophrase, doomed: &[Letter]) -> Nanophrase {
    let (components, projection, names) = p.parts();
    let components = components.iter().map(|w| w.iter().copied().filter(|l| !doomed.contains(l)).collect()).collect();
    let projection = projection.iter().filter(|(l, _)| !doomed.contains(l)).map(|(l, s)| (*l, s.clone())).collect();
    let names = names.iter().filter(|(l, _)| !doomed.contains(l)).map(|(l, s)| (*l, s.clone())).collect();
    Nanophrase::from_parts(components, projection, names)
}

fn check_gap(p: &Nanophrase, g: Gap, m: &Move) -> Result<()> {
    if g.component < p.num_components() && g.offset <= p.component(g.component).len() {
        Ok(())
    } else {
        Err(stale(m))
    }
}

/// Applies a move, checking that it matches the phrase and that its side
/// condition holds under `triple`.
pub fn apply_move(p: &Nanophrase, triple: &HomotopyDataTriple, m: &Move) -> Result<Nanophrase> {
    let present = |l: &Letter| p.projection().contains_key(l);
    match m {
        Move::ReduceH1 { letter } => {
            if !present(letter) {
                return Err(stale(m));
            }
            let [x, y] = p.occurrences().get(*letter);
            if x.component != y.component || y.offset != x.offset + 1 {
                return Err(stale(m));
            }
            Ok(remove_letters(p, &[*letter]))
        }
        Move::ReduceH2 { first, second } => {
            if !present(first) || !present(second) {
                return Err(stale(m));
            }
            let lay = Layout::new(p);
            let f = p.occurrences().get(*first)[0].flat;
            if h2_pattern(&lay, f) != Some((*first, *second)) {
                return Err(stale(m));
            }
            let (a, b) = (triple.require_index(p.symbol(*first))?, triple.require_index(p.symbol(*second))?);
            if triple.tau(a) != b {
                return Err(Error::SideConditionViolated(format!("{m}: symbols are not paired by tau")));
            }
            Ok(remove_letters(p, &[*first, *second]))
        }
        Move::H3 { a, b, c, direction } => {
            if !present(a) || !present(b) || !present(c) {
                return Err(stale(m));
            }
            let lay = Layout::new(p);
            let first = match direction {
                Direction::Forward => *a,
                Direction::Backward => *b,
                _ => return Err(stale(m)),
            };
            let f = p.occurrences().get(first)[0].flat;
            let Some((pa, pb, pc, q, r)) = h3_pattern(&lay, f, *direction) else {
                return Err(stale(m));
            };
            if (pa, pb, pc) != (*a, *b, *c) {
                return Err(stale(m));
            }
            let ix = |l: &Letter| triple.require_index(p.symbol(*l));
            if !triple.contains(ix(a)?, ix(b)?, ix(c)?) {
                return Err(Error::SideConditionViolated(format!("{m}: symbol triple not in S")));
            }
            let mut flat = lay.flat.clone();
            for pos in [f, q, r] {
                flat.swap(pos, pos + 1);
            }
            let mut comps = Vec::with_capacity(p.num_components());
            let mut k = 0;
            for w in p.components() {
                comps.push(flat[k..k + w.len()].to_vec());
                k += w.len();
            }
            Ok(p.with_components(comps))
        }
        Move::AugmentH1 { gap, symbol } => {
            check_gap(p, *gap, m)?;
            triple.require_index(symbol)?;
            let l = p.fresh_letter();
            let (components, projection, names) = p.parts();
            let (mut components, mut projection, mut names) = (components.clone(), projection.clone(), names.clone());
            Nanophrase::register_letter(&mut projection, &mut names, l, symbol.clone());
            let w = &mut components[gap.component];
            w.splice(gap.offset..gap.offset, [l, l]);
            Ok(Nanophrase::from_parts(components, projection, names))
        }
        Move::AugmentH2 { first_gap, second_gap, first, second } => {
            check_gap(p, *first_gap, m)?;
            check_gap(p, *second_gap, m)?;
            if first_gap > second_gap {
                return Err(stale(m));
            }
            let a = triple.require_index(first)?;
            if triple.symbol(triple.tau(a)) != second {
                return Err(Error::SideConditionViolated(format!("{m}: symbols are not paired by tau")));
            }
            let la = p.fresh_letter();
            let lb = Letter(la.0 + 1);
            let (components, projection, names) = p.parts();
            let (mut components, mut projection, mut names) = (components.clone(), projection.clone(), names.clone());
            Nanophrase::register_letter(&mut projection, &mut names, la, first.clone());
            Nanophrase::register_letter(&mut projection, &mut names, lb, second.clone());
            if first_gap == second_gap {
                components[first_gap.component].splice(first_gap.offset..first_gap.offset, [la, lb, lb, la]);
            } else {
                components[second_gap.component].splice(second_gap.offset..second_gap.offset, [lb, la]);
                components[first_gap.component].splice(first_gap.offset..first_gap.offset, [la, lb]);
            }
            Ok(Nanophrase::from_parts(components, projection, names))
        }
    }
}

/// A move undoing `m`, valid on `apply_move(p, m)`.
pub fn inverse_move(p: &Nanophrase, m: &Move) -> Result<Move> {
    Ok(match m {
        Move::ReduceH1 { letter } => {
            let [x, _] = p.occurrences().try_get(*letter).ok_or_else(|| stale(m))?;
            Move::AugmentH1 { gap: Gap { component: x.component, offset: x.offset }, symbol: p.symbol(*letter).clone() }
        }
        Move::ReduceH2 { first, second } => {
            let occ = p.occurrences();
            let [x, _] = occ.try_get(*first).ok_or_else(|| stale(m))?;
            let [_, y] = occ.try_get(*second).ok_or_else(|| stale(m))?;
            let shift = if x.component == y.component { 2 } else { 0 };
            Move::AugmentH2 {
                first_gap: Gap { component: x.component, offset: x.offset },
                second_gap: Gap { component: y.component, offset: y.offset - shift },
                first: p.symbol(*first).clone(),
                second: p.symbol(*second).clone(),
            }
        }
        Move::H3 { a, b, c, direction } => {
            let d = match direction {
                Direction::Forward => Direction::Backward,
                _ => Direction::Forward,
            };
            Move::H3 { a: *a, b: *b, c: *c, direction: d }
        }
        Move::AugmentH1 { .. } => Move::ReduceH1 { letter: p.fresh_letter() },
        Move::AugmentH2 { .. } => {
            let la = p.fresh_letter();
            Move::ReduceH2 { first: la, second: Letter(la.0 + 1) }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    fn triple_ab() -> HomotopyDataTriple {
        parse_triple("alpha: a b\ntau: a<->b\nS: diagonal").unwrap()
    }

    #[test]
    fn abba_has_one_site_of_each_reducing_kind() {
        let t = triple_ab();
        let p = parse_phrase("A:a B:b ; ABBA").unwrap();
        let e = enumerate_moves(&p, &t).unwrap();
        let h1 = e.reducing.iter().filter(|m| m.kind() == MoveKind::H1).count();
        let h2 = e.reducing.iter().filter(|m| m.kind() == MoveKind::H2).count();
        assert_eq!((h1, h2), (1, 1));
        for m in &e.reducing {
            assert_eq!(apply_move(&p, &t, m).unwrap().num_components(), 1);
        }
        let via_h2 = apply_move(&p, &t, &Move::ReduceH2 { first: Letter(1), second: Letter(2) }).unwrap();
        assert_eq!(via_h2.rank(), 0);
    }

    #[test]
    fn h2_needs_tau_pairing() {
        let t = parse_triple("alpha: a b\ntau: a<->b").unwrap();
        let good = parse_phrase("A:a B:b C:a ; ABC|CBA").unwrap();
        // BC|CB straddles the separator but each pair is inside a component.
        assert_eq!(
            reducing_moves(&good, &t).unwrap(),
            vec![Move::ReduceH2 { first: Letter(1), second: Letter(2) }, Move::ReduceH2 { first: Letter(2), second: Letter(3) }]
        );
        let bad = parse_phrase("A:a B:a C:a ; ABC|CBA").unwrap();
        assert!(reducing_moves(&bad, &t).unwrap().is_empty());
        assert!(matches!(
            apply_move(&bad, &t, &Move::ReduceH2 { first: Letter(1), second: Letter(2) }),
            Err(Error::SideConditionViolated(_))
        ));
    }

    #[test]
    fn h3_forward_and_back() {
        let t = parse_triple("alpha: a b c\nS: (a,b,c)").unwrap();
        let p = parse_phrase("A:a B:b C:c ; AB|AC|BC").unwrap();
        let e = enumerate_moves(&p, &t).unwrap();
        assert_eq!(e.braid.len(), 1);
        let q = apply_move(&p, &t, &e.braid[0]).unwrap();
        assert_eq!(q.to_string(), "B:b A:a C:c ; BA|CA|CB");
        let back = enumerate_moves(&q, &t).unwrap().braid;
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].direction(), Direction::Backward);
        assert_eq!(apply_move(&q, &t, &back[0]).unwrap(), p);
    }

    #[test]
    fn h3_respects_s() {
        let t = parse_triple("alpha: a b c\nS: (c,b,a)").unwrap();
        let p = parse_phrase("A:a B:b C:c ; AB|AC|BC").unwrap();
        assert!(enumerate_moves(&p, &t).unwrap().braid.is_empty());
    }

    #[test]
    fn augment_counts_and_inverses() {
        let t = triple_ab();
        let p = parse_phrase("A:a ; A|A").unwrap();
        let e = enumerate_moves(&p, &t).unwrap();
        assert_eq!(e.augmenting.count_h1(), 4 * 2);
        assert_eq!(e.augmenting.h1().count(), 8);
        assert_eq!(e.augmenting.h2().count(), e.augmenting.count_h2());
        for m in e.all() {
            let q = apply_move(&p, &t, &m).unwrap();
            let inv = inverse_move(&p, &m).unwrap();
            let back = apply_move(&q, &t, &inv).unwrap();
            assert_eq!(back.canonical(), p.canonical(), "{m}");
        }
    }

    #[test]
    fn stale_sites_are_rejected() {
        let t = triple_ab();
        let p = parse_phrase("A:a B:a ; ABAB").unwrap();
        assert!(matches!(apply_move(&p, &t, &Move::ReduceH1 { letter: Letter(1) }), Err(Error::StaleSite(_))));
        assert!(matches!(apply_move(&p, &t, &Move::ReduceH1 { letter: Letter(9) }), Err(Error::StaleSite(_))));
        let g = Gap { component: 3, offset: 0 };
        let m = Move::AugmentH1 { gap: g, symbol: Symbol::new("a") };
        assert!(matches!(apply_move(&p, &t, &m), Err(Error::StaleSite(_))));
    }
}
