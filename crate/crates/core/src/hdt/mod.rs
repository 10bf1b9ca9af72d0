//! Homotopy data triples `(alpha, tau, S)`: an alphabet, an involution on it
//! and a set of ordered triples of symbols.

mod factor;
mod text;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::phrase::{Nanophrase, Symbol};

pub use factor::{Factor, Factorization, KnownPrime};
pub use text::parse_triple;

/// One orbit of `tau`. The representative is the member declared first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Orbit {
    pub rep: usize,
    /// `Some(tau(rep))` for a free orbit, `None` for a fixed point.
    pub partner: Option<usize>,
}

impl Orbit {
    pub fn is_free(&self) -> bool {
        self.partner.is_some()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomotopyDataTriple {
    alpha: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    tau: Vec<usize>,
    s: BTreeSet<(usize, usize, usize)>,
}

impl HomotopyDataTriple {
    /// Builds a triple from symbol indices. `tau[i]` is the image of
    /// `alpha[i]`.
    pub fn new(alpha: Vec<Symbol>, tau: Vec<usize>, s: BTreeSet<(usize, usize, usize)>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, a) in alpha.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(Error::InvalidTriple(format!("symbol {a} declared twice")));
            }
        }
        let n = alpha.len();
        if tau.len() != n {
            return Err(Error::InvalidTriple("tau must have one entry per symbol".into()));
        }
        for (i, &t) in tau.iter().enumerate() {
            if t >= n || tau[t] != i {
                return Err(Error::InvalidTriple(format!("tau is not an involution at {}", alpha[i])));
            }
        }
        if let Some(bad) = s.iter().find(|(a, b, c)| *a >= n || *b >= n || *c >= n) {
            return Err(Error::InvalidTriple(format!("S entry {bad:?} outside alpha")));
        }
        Ok(HomotopyDataTriple { alpha, index, tau, s })
    }

    /// Builds a triple from symbol names. Symbols missing from `tau_pairs`
    /// are fixed.
    pub fn from_names(alpha: &[&str], tau_pairs: &[(&str, &str)], s: &[(&str, &str, &str)]) -> Result<Self> {
        let syms: Vec<Symbol> = alpha.iter().map(|a| Symbol::new(a)).collect();
        let pos = |name: &str| {
            alpha.iter().position(|a| *a == name).ok_or_else(|| Error::UnknownSymbol { symbol: name.to_string() })
        };
        let mut tau: Vec<usize> = (0..alpha.len()).collect();
        for (a, b) in tau_pairs {
            let (i, j) = (pos(a)?, pos(b)?);
            if tau[i] != i || tau[j] != j {
                return Err(Error::InvalidTriple(format!("{a} or {b} already paired")));
            }
            tau[i] = j;
            tau[j] = i;
        }
        let s = s.iter().map(|(a, b, c)| Ok((pos(a)?, pos(b)?, pos(c)?))).collect::<Result<_>>()?;
        Self::new(syms, tau, s)
    }

    /// Same alphabet and involution with `S` the full diagonal.
    pub fn with_diagonal(alpha: &[&str], tau_pairs: &[(&str, &str)]) -> Result<Self> {
        let mut t = Self::from_names(alpha, tau_pairs, &[])?;
        t.s = (0..t.alpha.len()).map(|i| (i, i, i)).collect();
        Ok(t)
    }

    /// The triple with empty alphabet.
    pub fn unit() -> Self {
        HomotopyDataTriple { alpha: Vec::new(), index: BTreeMap::new(), tau: Vec::new(), s: BTreeSet::new() }
    }

    /// The prime triple with one fixed symbol and `S = {(a,a,a)}`.
    pub fn alpha_g() -> Self {
        Self::with_diagonal(&["a"], &[]).expect("valid")
    }

    /// The prime triple with two swapped symbols and diagonal `S`.
    pub fn alpha_f() -> Self {
        Self::with_diagonal(&["a", "b"], &[("a", "b")]).expect("valid")
    }

    pub fn alpha(&self) -> &[Symbol] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.alpha[i]
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require_index(&self, s: &Symbol) -> Result<usize> {
        self.index_of(s).ok_or_else(|| Error::UnknownSymbol { symbol: s.to_string() })
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_symbol(&self, s: &Symbol) -> Result<&Symbol> {
        Ok(&self.alpha[self.tau[self.require_index(s)?]])
    }

    pub fn s(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.s
    }

    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        self.s.contains(&(a, b, c))
    }

    pub fn s_is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `S` is exactly `{(a,a,a) : a in alpha}`.
    pub fn is_diagonal(&self) -> bool {
        !self.alpha.is_empty()
            && self.s.len() == self.alpha.len()
            && self.s.iter().all(|(a, b, c)| a == b && b == c)
    }

    /// Orbits of `tau` ordered by the declaration index of their
    /// representative.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut out = Vec::new();
        for i in 0..self.alpha.len() {
            let t = self.tau[i];
            if t == i {
                out.push(Orbit { rep: i, partner: None });
            } else if i < t {
                out.push(Orbit { rep: i, partner: Some(t) });
            }
        }
        out
    }

    /// Index into [`orbits`](Self::orbits) of the orbit of each symbol.
    pub fn orbit_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.alpha.len()];
        for (k, o) in self.orbits().iter().enumerate() {
            of[o.rep] = k;
            if let Some(p) = o.partner {
                of[p] = k;
            }
        }
        of
    }

    /// `S` is closed under `(a,b,c) -> (c,b,a)`.
    pub fn is_reversal_invariant(&self) -> bool {
        self.s.iter().all(|&(a, b, c)| self.s.contains(&(c, b, a)))
    }

    /// `S` is closed under `tau x tau x tau`.
    pub fn is_tau_invariant(&self) -> bool {
        self.s.iter().all(|&(a, b, c)| self.s.contains(&(self.tau[a], self.tau[b], self.tau[c])))
    }

    /// Fails with `UnknownSymbol` if the phrase uses a symbol outside alpha.
    pub fn check_phrase(&self, p: &Nanophrase) -> Result<()> {
        for s in p.projection().values() {
            self.require_index(s)?;
        }
        Ok(())
    }

    /// Fails on the unit triple, which carries no homotopy.
    pub fn require_nonunit(&self) -> Result<()> {
        if self.is_unit() {
            Err(Error::UnitTriple)
        } else {
            Ok(())
        }
    }

    /// The sub-triple on the listed symbols, which must be closed under tau.
    /// `S` keeps the entries lying entirely inside.
    pub fn restrict(&self, symbols: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = symbols.iter().copied().collect();
        if let Some(&i) = symbols.iter().find(|&&i| !set.contains(&self.tau[i])) {
            return Err(Error::InvalidTriple(format!("{} and its image are split", self.alpha[i])));
        }
        let local: BTreeMap<usize, usize> = symbols.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let alpha = symbols.iter().map(|&i| self.alpha[i].clone()).collect();
        let tau = symbols.iter().map(|&i| local[&self.tau[i]]).collect();
        let s = self
            .s
            .iter()
            .filter(|(a, b, c)| set.contains(a) && set.contains(b) && set.contains(c))
            .map(|(a, b, c)| (local[a], local[b], local[c]))
            .collect();
        Self::new(alpha, tau, s)
    }

    /// Tagged disjoint union. Symbol `x` of the `k`-th operand (counting
    /// from 1) becomes `x.k`.
    pub fn product(parts: &[&HomotopyDataTriple]) -> Result<Self> {
        let mut alpha = Vec::new();
        let mut tau = Vec::new();
        let mut s = BTreeSet::new();
        for (k, t) in parts.iter().enumerate() {
            let base = alpha.len();
            alpha.extend(t.alpha.iter().map(|a| Symbol::new(&format!("{a}.{}", k + 1))));
            tau.extend(t.tau.iter().map(|&x| x + base));
            s.extend(t.s.iter().map(|&(a, b, c)| (a + base, b + base, c + base)));
        }
        Self::new(alpha, tau, s)
    }

    /// Renames symbols in order; the new names must be distinct.
    pub fn renamed(&self, names: &[Symbol]) -> Result<Self> {
        if names.len() != self.alpha.len() {
            return Err(Error::InvalidTriple("wrong number of names".into()));
        }
        Self::new(names.to_vec(), self.tau.clone(), self.s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tau() {
        let syms = vec![Symbol::new("a"), Symbol::new("b"), Symbol::new("c")];
        assert!(HomotopyDataTriple::new(syms.clone(), vec![1, 2, 0], BTreeSet::new()).is_err());
        assert!(HomotopyDataTriple::new(syms, vec![1, 0, 2], BTreeSet::new()).is_ok());
    }

    #[test]
    fn orbits_follow_declaration_order() {
        let t = HomotopyDataTriple::from_names(&["b", "a", "c"], &[("a", "c")], &[]).unwrap();
        let o = t.orbits();
        assert_eq!(o, vec![Orbit { rep: 0, partner: None }, Orbit { rep: 1, partner: Some(2) }]);
        assert_eq!(t.orbit_of(), vec![0, 1, 1]);
    }

    #[test]
    fn diagonal_detection() {
        assert!(HomotopyDataTriple::alpha_f().is_diagonal());
        let partial = HomotopyDataTriple::from_names(&["a", "b"], &[], &[("a", "a", "a")]).unwrap();
        assert!(!partial.is_diagonal());
    }

    #[test]
    fn product_tags_symbols() {
        let g = HomotopyDataTriple::alpha_g();
        let f = HomotopyDataTriple::alpha_f();
        let p = HomotopyDataTriple::product(&[&g, &f]).unwrap();
        let names: Vec<_> = p.alpha().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["a.1", "a.2", "b.2"]);
        assert_eq!(p.tau(1), 2);
        assert!(p.contains(2, 2, 2));
    }

    #[test]
    fn invariance_checks() {
        let t = HomotopyDataTriple::from_names(&["a", "b", "c"], &[("a", "b")], &[("a", "b", "c"), ("c", "b", "a")])
            .unwrap();
        assert!(t.is_reversal_invariant());
        assert!(!t.is_tau_invariant());
    }
}
