//! Nanophrases and nanomultiphrases over an alphabet of symbols.
//!
//! A phrase is a list of components, each a word of letters, where every
//! letter occurs exactly twice across the whole phrase and carries a symbol.
//! Values are immutable; every operation returns a fresh phrase.

mod text;

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;

pub use text::{parse, parse_multiphrase, parse_multiphrase_with, parse_phrase, parse_phrase_with, LetterMode, Parsed};

/// An element of an alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Opaque letter identifier. Names live in the owning phrase.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u32);

/// Position of one occurrence of a letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Occurrence {
    pub component: usize,
    pub offset: usize,
    /// Offset in the concatenation of all components.
    pub flat: usize,
}

/// Which side of a projection to keep.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjectMode {
    /// Keep every component but delete all letters touching the selected ones.
    Keep,
    /// Delete the selected components and every letter touching them.
    Drop,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nanophrase {
    components: Vec<Vec<Letter>>,
    projection: BTreeMap<Letter, Symbol>,
    names: BTreeMap<Letter, String>,
}

/// Both occurrences of every letter, indexed by letter id.
#[derive(Clone, Debug)]
pub struct OccurrenceIndex {
    slots: Vec<Option<[Occurrence; 2]>>,
}

impl OccurrenceIndex {
    pub fn get(&self, l: Letter) -> [Occurrence; 2] {
        self.slots[l.0 as usize].expect("letter belongs to the phrase")
    }

    pub fn try_get(&self, l: Letter) -> Option<[Occurrence; 2]> {
        self.slots.get(l.0 as usize).copied().flatten()
    }

    /// The occurrence of `l` that is not at `flat`.
    pub fn other(&self, l: Letter, flat: usize) -> Occurrence {
        let [a, b] = self.get(l);
        if a.flat == flat {
            b
        } else {
            a
        }
    }
}

impl Nanophrase {
    /// Builds a phrase, checking that every letter occurs exactly twice and
    /// has a symbol.
    pub fn new(components: Vec<Vec<Letter>>, projection: BTreeMap<Letter, Symbol>) -> Result<Self> {
        Self::with_names(components, projection, BTreeMap::new())
    }

    pub fn with_names(
        components: Vec<Vec<Letter>>,
        projection: BTreeMap<Letter, Symbol>,
        names: BTreeMap<Letter, String>,
    ) -> Result<Self> {
        let mut counts: BTreeMap<Letter, usize> = BTreeMap::new();
        for l in components.iter().flatten() {
            *counts.entry(*l).or_default() += 1;
        }
        for l in projection.keys() {
            counts.entry(*l).or_default();
        }
        let p = Nanophrase { components, projection, names };
        for (l, c) in &counts {
            if *c != 2 {
                return Err(Error::NonGauss { letter: p.name(*l).into_owned(), count: *c });
            }
            if !p.projection.contains_key(l) {
                return Err(Error::UndeclaredLetter { letter: p.name(*l).into_owned() });
            }
        }
        Ok(p)
    }

    /// Internal constructor for callers that already preserve the Gauss
    /// condition.
    pub(crate) fn from_parts(
        components: Vec<Vec<Letter>>,
        projection: BTreeMap<Letter, Symbol>,
        names: BTreeMap<Letter, String>,
    ) -> Self {
        debug_assert!(Self::with_names(components.clone(), projection.clone(), names.clone()).is_ok());
        Nanophrase { components, projection, names }
    }

    /// The phrase with no components.
    pub fn empty() -> Self {
        Nanophrase { components: Vec::new(), projection: BTreeMap::new(), names: BTreeMap::new() }
    }

    /// A phrase of `n` empty components.
    pub fn trivial(n: usize) -> Self {
        Nanophrase { components: vec![Vec::new(); n], projection: BTreeMap::new(), names: BTreeMap::new() }
    }

    pub fn components(&self) -> &[Vec<Letter>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[Letter] {
        &self.components[i]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of letters.
    pub fn rank(&self) -> usize {
        self.projection.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.projection.keys().copied()
    }

    pub fn projection(&self) -> &BTreeMap<Letter, Symbol> {
        &self.projection
    }

    pub fn symbol(&self, l: Letter) -> &Symbol {
        &self.projection[&l]
    }

    /// Symbols used by the phrase, without duplicates.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.projection.values().cloned().collect()
    }

    pub fn name(&self, l: Letter) -> Cow<'_, str> {
        match self.names.get(&l) {
            Some(n) => Cow::Borrowed(n.as_str()),
            None => Cow::Owned(format!("X{}", l.0)),
        }
    }

    /// Concatenation of all components.
    pub fn flat(&self) -> Vec<Letter> {
        self.components.iter().flatten().copied().collect()
    }

    pub fn occurrences(&self) -> OccurrenceIndex {
        let max = self.projection.keys().next_back().map_or(0, |l| l.0 as usize);
        let mut slots: Vec<Option<[Occurrence; 2]>> = vec![None; max + 1];
        let mut first: Vec<Option<Occurrence>> = vec![None; max + 1];
        let mut flat = 0;
        for (c, w) in self.components.iter().enumerate() {
            for (k, l) in w.iter().enumerate() {
                let occ = Occurrence { component: c, offset: k, flat };
                let id = l.0 as usize;
                match first[id] {
                    None => first[id] = Some(occ),
                    Some(a) => slots[id] = Some([a, occ]),
                }
                flat += 1;
            }
        }
        OccurrenceIndex { slots }
    }

    /// A letter id not used by the phrase.
    pub fn fresh_letter(&self) -> Letter {
        Letter(self.projection.keys().next_back().map_or(1, |l| l.0 + 1))
    }

    /// Renames letters to `1, 2, ...` in order of first occurrence and drops
    /// custom names. Two phrases are isomorphic iff their canonical forms are
    /// equal.
    pub fn canonical(&self) -> Nanophrase {
        self.canonical_with_map().0
    }

    /// Canonical form together with the renaming applied to each letter.
    pub fn canonical_with_map(&self) -> (Nanophrase, BTreeMap<Letter, Letter>) {
        let mut map = BTreeMap::new();
        let mut next = 1u32;
        let components: Vec<Vec<Letter>> = self
            .components
            .iter()
            .map(|w| {
                w.iter()
                    .map(|l| {
                        *map.entry(*l).or_insert_with(|| {
                            let n = Letter(next);
                            next += 1;
                            n
                        })
                    })
                    .collect()
            })
            .collect();
        let projection = self.projection.iter().map(|(l, s)| (map[l], s.clone())).collect();
        (Nanophrase { components, projection, names: BTreeMap::new() }, map)
    }

    /// Concatenates all components into a single one.
    pub fn chi(&self) -> Nanophrase {
        Nanophrase {
            components: vec![self.flat()],
            projection: self.projection.clone(),
            names: self.names.clone(),
        }
    }

    /// Deletes every letter with an occurrence in a component listed in
    /// `selected`. With [`ProjectMode::Drop`] the selected components are
    /// removed as well.
    pub fn project_out(&self, selected: &BTreeSet<usize>, mode: ProjectMode) -> Result<Nanophrase> {
        let n = self.num_components();
        if let Some(&i) = selected.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let doomed: BTreeSet<Letter> =
            selected.iter().flat_map(|&i| self.components[i].iter().copied()).collect();
        let components = self
            .components
            .iter()
            .enumerate()
            .filter(|(i, _)| mode == ProjectMode::Keep || !selected.contains(i))
            .map(|(_, w)| w.iter().copied().filter(|l| !doomed.contains(l)).collect())
            .collect();
        Ok(self.without_letters(components, &doomed))
    }

    /// The subphrase made of the listed components, in the listed order,
    /// keeping only letters whose two occurrences both lie in them.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Nanophrase> {
        let n = self.num_components();
        let keep_set: BTreeSet<usize> = keep.iter().copied().collect();
        if let Some(&i) = keep.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let dropped: BTreeSet<usize> = (0..n).filter(|i| !keep_set.contains(i)).collect();
        let doomed: BTreeSet<Letter> =
            dropped.iter().flat_map(|&i| self.components[i].iter().copied()).collect();
        let components =
            keep.iter().map(|&i| self.components[i].iter().copied().filter(|l| !doomed.contains(l)).collect()).collect();
        Ok(self.without_letters(components, &doomed))
    }

    /// The nanoword formed by component `i` alone.
    pub fn word(&self, i: usize) -> Result<Nanophrase> {
        self.restrict_to(&[i])
    }

    /// Drops the given letters from the tables. The caller has already
    /// removed their occurrences.
    pub(crate) fn remove_letters(&self, doomed: &BTreeSet<Letter>) -> Nanophrase {
        let components = self.components.iter().map(|w| w.iter().copied().filter(|l| !doomed.contains(l)).collect()).collect();
        self.without_letters(components, doomed)
    }

    fn without_letters(&self, components: Vec<Vec<Letter>>, doomed: &BTreeSet<Letter>) -> Nanophrase {
        let projection = self.projection.iter().filter(|(l, _)| !doomed.contains(l)).map(|(l, s)| (*l, s.clone())).collect();
        let names = self.names.iter().filter(|(l, _)| !doomed.contains(l)).map(|(l, s)| (*l, s.clone())).collect();
        Nanophrase { components, projection, names }
    }

    /// Reverses the order of the components and of the letters inside each.
    pub fn opposite(&self) -> Nanophrase {
        let components = self.components.iter().rev().map(|w| w.iter().rev().copied().collect()).collect();
        Nanophrase { components, projection: self.projection.clone(), names: self.names.clone() }
    }

    /// Composes the projection with the involution of `triple`.
    pub fn inverse(&self, triple: &HomotopyDataTriple) -> Result<Nanophrase> {
        let projection = self
            .projection
            .iter()
            .map(|(l, s)| Ok((*l, triple.tau_symbol(s)?.clone())))
            .collect::<Result<_>>()?;
        Ok(Nanophrase { components: self.components.clone(), projection, names: self.names.clone() })
    }

    /// Lengths of the components mod 2.
    pub fn component_parities(&self) -> Vec<u8> {
        self.components.iter().map(|w| (w.len() % 2) as u8).collect()
    }

    /// Replaces the symbol of every letter.
    pub fn map_symbols(&self, mut f: impl FnMut(&Symbol) -> Symbol) -> Nanophrase {
        let projection = self.projection.iter().map(|(l, s)| (*l, f(s))).collect();
        Nanophrase { components: self.components.clone(), projection, names: self.names.clone() }
    }

    /// Renames letters so that they do not collide with ids below `offset`.
    pub(crate) fn shift_letters(&self, offset: u32) -> Nanophrase {
        let m = |l: &Letter| Letter(l.0 + offset);
        Nanophrase {
            components: self.components.iter().map(|w| w.iter().map(m).collect()).collect(),
            projection: self.projection.iter().map(|(l, s)| (m(l), s.clone())).collect(),
            names: BTreeMap::new(),
        }
    }

    /// Applies a letter renaming. Letters missing from `map` keep their id.
    pub fn rename(&self, map: &BTreeMap<Letter, Letter>) -> Nanophrase {
        let m = |l: &Letter| *map.get(l).unwrap_or(l);
        Nanophrase {
            components: self.components.iter().map(|w| w.iter().map(m).collect()).collect(),
            projection: self.projection.iter().map(|(l, s)| (m(l), s.clone())).collect(),
            names: self.names.iter().map(|(l, s)| (m(l), s.clone())).collect(),
        }
    }

    /// Same letters and projection, new components. Used by moves that only
    /// rearrange letters.
    pub(crate) fn with_components(&self, components: Vec<Vec<Letter>>) -> Nanophrase {
        Nanophrase::from_parts(components, self.projection.clone(), self.names.clone())
    }

    /// Inserts a fresh letter id into the tables; the caller places its two
    /// occurrences.
    pub(crate) fn register_letter(
        projection: &mut BTreeMap<Letter, Symbol>,
        names: &mut BTreeMap<Letter, String>,
        l: Letter,
        s: Symbol,
    ) {
        projection.insert(l, s);
        if !names.is_empty() {
            let mut name = format!("X{}", l.0);
            let mut k = 0;
            while names.values().any(|n| *n == name) {
                k += 1;
                name = format!("X{}_{}", l.0, k);
            }
            names.insert(l, name);
        }
    }

    pub(crate) fn parts(&self) -> (&Vec<Vec<Letter>>, &BTreeMap<Letter, Symbol>, &BTreeMap<Letter, String>) {
        (&self.components, &self.projection, &self.names)
    }

    /// Places the components of `other` after those of `self`, renaming
    /// letters apart. Custom names are dropped.
    pub fn juxtapose(&self, other: &Nanophrase) -> Nanophrase {
        let offset = self.projection.keys().next_back().map_or(0, |l| l.0);
        let o = other.shift_letters(offset);
        let mut components = self.components.clone();
        components.extend(o.components);
        let mut projection = self.projection.clone();
        projection.extend(o.projection);
        Nanophrase { components, projection, names: BTreeMap::new() }
    }
}

impl fmt::Debug for Nanophrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nanophrase({})", self)
    }
}

/// A list of nanophrases sharing one letter set. Stored as the concatenated
/// phrase plus the number of components of each phrase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Nanomultiphrase {
    phrase: Nanophrase,
    lengths: Vec<usize>,
}

impl Nanomultiphrase {
    pub fn new(phrase: Nanophrase, lengths: Vec<usize>) -> Result<Self> {
        let total: usize = lengths.iter().sum();
        if total != phrase.num_components() {
            return Err(Error::InvalidDecomposition(format!(
                "phrase lengths sum to {total} but there are {} components",
                phrase.num_components()
            )));
        }
        Ok(Nanomultiphrase { phrase, lengths })
    }

    /// A single-phrase multiphrase.
    pub fn single(phrase: Nanophrase) -> Self {
        let n = phrase.num_components();
        Nanomultiphrase { phrase, lengths: vec![n] }
    }

    /// The multiphrase with no phrases.
    pub fn empty() -> Self {
        Nanomultiphrase { phrase: Nanophrase::empty(), lengths: Vec::new() }
    }

    /// The underlying phrase, all phrases laid end to end.
    pub fn flattened(&self) -> &Nanophrase {
        &self.phrase
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn num_phrases(&self) -> usize {
        self.lengths.len()
    }

    /// Component index range of phrase `k`.
    pub fn phrase_range(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.lengths[..k].iter().sum();
        start..start + self.lengths[k]
    }

    /// Index of the phrase holding component `j`.
    pub fn phrase_of(&self, j: usize) -> usize {
        let mut acc = 0;
        for (k, len) in self.lengths.iter().enumerate() {
            acc += len;
            if j < acc {
                return k;
            }
        }
        panic!("component {j} out of range")
    }

    /// Concatenates the components of each phrase into one component.
    pub fn chi(&self) -> Nanophrase {
        let (_, projection, names) = self.phrase.parts();
        let components = (0..self.num_phrases())
            .map(|k| self.phrase_range(k).flat_map(|j| self.phrase.component(j).iter().copied()).collect())
            .collect();
        Nanophrase::from_parts(components, projection.clone(), names.clone())
    }

    pub fn canonical(&self) -> Nanomultiphrase {
        Nanomultiphrase { phrase: self.phrase.canonical(), lengths: self.lengths.clone() }
    }
}

impl fmt::Debug for Nanomultiphrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nanomultiphrase({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str) -> Nanophrase {
        parse_phrase(t).unwrap()
    }

    #[test]
    fn chi_of_multiphrase_concatenates_within_phrases() {
        let m = parse_multiphrase("A:a B:a C:a D:a ; A|B||AC||D|B|CD").unwrap();
        assert_eq!(m.chi().to_string(), "A:a B:a C:a D:a ; AB|AC|DBCD");
        assert_eq!(Nanophrase::empty().chi().num_components(), 1);
        assert!(Nanophrase::empty().chi().component(0).is_empty());
    }

    #[test]
    fn project_out_modes() {
        let x = p("A:a B:b C:c ; ABC|AC|B");
        let one: BTreeSet<usize> = [1].into();
        assert_eq!(x.project_out(&one, ProjectMode::Keep).unwrap().to_string(), "B:b ; B|_|B");
        assert_eq!(x.project_out(&one, ProjectMode::Drop).unwrap().to_string(), "B:b ; B|B");
        let bad: BTreeSet<usize> = [3].into();
        assert!(matches!(x.project_out(&bad, ProjectMode::Keep), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn opposite_reverses() {
        let x = p("A:a B:b C:c ; ABC|AC|B");
        assert_eq!(x.opposite().to_string(), "B:b C:c A:a ; B|CA|CBA");
        assert_eq!(x.opposite().opposite(), x);
    }

    #[test]
    fn canonical_identifies_isomorphic_phrases() {
        let a = p("A:a B:b ; AB|BA");
        let b = p("Q:a R:b ; QR|RQ");
        let c = p("Q:b R:a ; QR|RQ");
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(a.canonical(), c.canonical());
    }

    #[test]
    fn empty_phrase_differs_from_empty_word() {
        assert_ne!(Nanophrase::empty(), Nanophrase::trivial(1));
    }

    #[test]
    fn parities() {
        assert_eq!(p("A:a B:a C:a ; ABC|A|B|C").component_parities(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn gauss_condition_checked() {
        let l = Letter(1);
        let proj: BTreeMap<Letter, Symbol> = [(l, Symbol::new("a"))].into();
        assert!(matches!(Nanophrase::new(vec![vec![l]], proj.clone()), Err(Error::NonGauss { count: 1, .. })));
        assert!(Nanophrase::new(vec![vec![l], vec![l]], proj).is_ok());
    }
}
