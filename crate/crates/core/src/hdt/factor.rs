//! Prime factorization and isomorphism of triples.

use std::collections::BTreeSet;
use std::fmt;

use super::HomotopyDataTriple;
use crate::phrase::Symbol;

/// A prime factor together with the positions of its symbols in the
/// ambient alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub triple: HomotopyDataTriple,
    pub embedding: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    factors: Vec<Factor>,
    factor_of: Vec<usize>,
}

impl Factorization {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, k: usize) -> &Factor {
        &self.factors[k]
    }

    /// Factor holding the ambient symbol with index `i`.
    pub fn factor_of_index(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    /// Factor holding `s`, looked up by name.
    pub fn factor_of_symbol(&self, ambient: &HomotopyDataTriple, s: &Symbol) -> Option<usize> {
        ambient.index_of(s).map(|i| self.factor_of[i])
    }
}

/// Prime triples with a conventional name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KnownPrime {
    /// One fixed symbol, `S = {(a,a,a)}`.
    AlphaG,
    /// Two swapped symbols, `S = {(a,a,a),(b,b,b)}`.
    AlphaF,
    /// One fixed symbol, empty `S`.
    FixedEmpty,
    /// Two swapped symbols, empty `S`.
    FreeEmpty,
}

impl fmt::Display for KnownPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KnownPrime::AlphaG => "alpha_G",
            KnownPrime::AlphaF => "alpha_F",
            KnownPrime::FixedEmpty => "fixed point, empty S",
            KnownPrime::FreeEmpty => "swapped pair, empty S",
        })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl HomotopyDataTriple {
    /// Splits the triple into prime factors. Each factor is a union of tau
    /// orbits linked through entries of `S`. Factors are sorted by size and
    /// then by their sorted symbol names. The unit triple has no factors.
    pub fn factorize(&self) -> Factorization {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for i in 0..n {
            union(&mut parent, i, self.tau(i));
        }
        for &(a, b, c) in self.s() {
            union(&mut parent, a, b);
            union(&mut parent, a, c);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        let key = |g: &Vec<usize>| {
            let mut names: Vec<String> = g.iter().map(|&i| self.symbol(i).to_string()).collect();
            names.sort();
            (g.len(), names)
        };
        groups.sort_by_cached_key(key);
        let mut factor_of = vec![0; n];
        let factors = groups
            .into_iter()
            .enumerate()
            .map(|(k, g)| {
                for &i in &g {
                    factor_of[i] = k;
                }
                Factor { triple: self.restrict(&g).expect("factors are tau-closed"), embedding: g }
            })
            .collect();
        Factorization { factors, factor_of }
    }

    pub fn is_prime(&self) -> bool {
        !self.is_unit() && self.factorize().len() == 1
    }

    /// A bijection of symbol indices carrying `self` onto `other`, if any.
    pub fn isomorphism(&self, other: &HomotopyDataTriple) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.s().len() != other.s().len() {
            return None;
        }
        let sig = |t: &HomotopyDataTriple, i: usize| {
            let mut counts = [0usize; 3];
            for &(a, b, c) in t.s() {
                counts[0] += (a == i) as usize;
                counts[1] += (b == i) as usize;
                counts[2] += (c == i) as usize;
            }
            (t.tau(i) == i, counts)
        };
        let mine: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let theirs: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &mine, &theirs, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &HomotopyDataTriple,
        mine: &[(bool, [usize; 3])],
        theirs: &[(bool, [usize; 3])],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(i) = map.iter().position(|&m| m == usize::MAX) else {
            return true;
        };
        let ti = self.tau(i);
        for j in 0..self.len() {
            let tj = other.tau(j);
            if used[j] || used[tj] || mine[i] != theirs[j] || mine[ti] != theirs[tj] {
                continue;
            }
            map[i] = j;
            map[ti] = tj;
            used[j] = true;
            used[tj] = true;
            let consistent = self.s().iter().all(|&(a, b, c)| {
                let (x, y, z) = (map[a], map[b], map[c]);
                x == usize::MAX || y == usize::MAX || z == usize::MAX || other.contains(x, y, z)
            });
            if consistent && self.extend_iso(other, mine, theirs, map, used) {
                return true;
            }
            map[i] = usize::MAX;
            map[ti] = usize::MAX;
            used[j] = false;
            used[tj] = false;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &HomotopyDataTriple) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Names the triple if it is one of the small primes.
    pub fn known_prime(&self) -> Option<KnownPrime> {
        let fixed = HomotopyDataTriple::from_names(&["a"], &[], &[]).expect("valid");
        let free = HomotopyDataTriple::from_names(&["a", "b"], &[("a", "b")], &[]).expect("valid");
        [
            (HomotopyDataTriple::alpha_g(), KnownPrime::AlphaG),
            (HomotopyDataTriple::alpha_f(), KnownPrime::AlphaF),
            (fixed, KnownPrime::FixedEmpty),
            (free, KnownPrime::FreeEmpty),
        ]
        .into_iter()
        .find(|(t, _)| self.is_isomorphic(t))
        .map(|(_, k)| k)
    }

    /// Symbols of the factor, sorted by name, for display.
    pub fn sorted_names(&self) -> Vec<String> {
        let set: BTreeSet<String> = self.alpha().iter().map(|s| s.to_string()).collect();
        set.into_iter().collect()
    }
}
