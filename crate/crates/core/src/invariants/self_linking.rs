//! Self-linking invariants `V` and `U`.
//!
//! Both look at letters `A` whose two occurrences lie in one component `i`
//! and record how the letters between those occurrences link to the other
//! components. `V` keeps parities only; `U` keeps group elements and needs a
//! diagonal `S` to be invariant.

use std::collections::BTreeMap;
use std::fmt;

use super::pi::{PiElement, PiGroup};
use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::phrase::{Letter, Nanophrase, Occurrence, OccurrenceIndex};

/// Letters with exactly one occurrence strictly between the two
/// occurrences of `a`, which must share a component, paired with their
/// other occurrence.
fn linked_letters(p: &Nanophrase, occ: &OccurrenceIndex, a: Letter) -> Vec<(Letter, Occurrence)> {
    let [x, y] = occ.get(a);
    let inside = |o: &Occurrence| o.component == x.component && o.offset > x.offset && o.offset < y.offset;
    p.component(x.component)[x.offset + 1..y.offset]
        .iter()
        .filter_map(|l| {
            let [u, v] = occ.get(*l);
            match (inside(&u), inside(&v)) {
                (true, false) => Some((*l, v)),
                (false, true) => Some((*l, u)),
                _ => None,
            }
        })
        .collect()
}

/// Letters of component `i` with both occurrences in it.
fn self_letters(p: &Nanophrase, occ: &OccurrenceIndex, i: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for (k, l) in p.component(i).iter().enumerate() {
        let [x, y] = occ.get(*l);
        if x.component == i && y.component == i && x.offset == k {
            out.push(*l);
        }
    }
    out
}

/// Combines counts of `a` and `tau(a)` into one value per orbit.
fn orient<K: Ord + Clone>(
    group: &PiGroup,
    counts: &BTreeMap<(usize, i64), BTreeMap<K, i64>>,
    i: usize,
    out: &mut BTreeMap<(usize, usize), BTreeMap<K, i64>>,
) {
    for orbit in 0..group.rank() {
        let mut m: BTreeMap<K, i64> = BTreeMap::new();
        for sign in [1i64, -1] {
            if let Some(c) = counts.get(&(orbit, sign)) {
                for (k, n) in c {
                    *m.entry(k.clone()).or_default() += sign * n;
                }
            }
        }
        if !group.is_free(orbit) {
            for v in m.values_mut() {
                *v = v.rem_euclid(2);
            }
        }
        m.retain(|_, v| *v != 0);
        if !m.is_empty() {
            out.insert((i, orbit), m);
        }
    }
}

fn render_maps<K>(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    group: &PiGroup,
    maps: &BTreeMap<(usize, usize), BTreeMap<K, i64>>,
    key: impl Fn(&K) -> String,
) -> fmt::Result {
    if maps.is_empty() {
        return write!(f, "{name}: 0");
    }
    let mut first = true;
    for ((i, orbit), m) in maps {
        if !first {
            writeln!(f)?;
        }
        first = false;
        let entries: Vec<String> = m.iter().map(|(k, v)| format!("{}->{}", key(k), v)).collect();
        write!(f, "{name}^{{{},{}}}: {}", i + 1, group.representative(*orbit), entries.join(" "))?;
    }
    Ok(())
}

/// `V^{i,a}` for each component `i` and orbit representative `a`, as a
/// finite-support map from nonzero vectors in `(Z/2)^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VInvariant {
    group: PiGroup,
    n: usize,
    maps: BTreeMap<(usize, usize), BTreeMap<Vec<u8>, i64>>,
}

impl VInvariant {
    pub fn components(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, orbit: usize, v: &[u8]) -> i64 {
        self.maps.get(&(i, orbit)).and_then(|m| m.get(v)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// Every `V^{i,a}` vanishes for this `i`.
    pub fn component_is_zero(&self, i: usize) -> bool {
        !self.maps.keys().any(|(c, _)| *c == i)
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), BTreeMap<Vec<u8>, i64>> {
        &self.maps
    }
}

impl fmt::Display for VInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_maps(f, "V", &self.group, &self.maps, |v| {
            format!("({})", v.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
        })
    }
}

/// The parity vector of each letter with both occurrences in one
/// component.
pub fn v_vectors(p: &Nanophrase, i: usize) -> BTreeMap<Letter, Vec<u8>> {
    let occ = p.occurrences();
    let n = p.num_components();
    self_letters(p, &occ, i)
        .into_iter()
        .map(|a| {
            let mut v = vec![0u8; n];
            for (_, other) in linked_letters(p, &occ, a) {
                v[other.component] ^= 1;
            }
            (a, v)
        })
        .collect()
}

pub fn v_invariant(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<VInvariant> {
    let group = PiGroup::new(triple);
    let mut maps = BTreeMap::new();
    for i in 0..p.num_components() {
        let mut counts: BTreeMap<(usize, i64), BTreeMap<Vec<u8>, i64>> = BTreeMap::new();
        for (a, v) in v_vectors(p, i) {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let key = group.locate(p.symbol(a))?;
            *counts.entry(key).or_default().entry(v).or_default() += 1;
        }
        orient(&group, &counts, i, &mut maps);
    }
    Ok(VInvariant { group, n: p.num_components(), maps })
}

/// `U^{i,a}` for each component `i` and orbit representative `a`, as a
/// finite-support map from non-identity vectors in `pi^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UInvariant {
    group: PiGroup,
    n: usize,
    maps: BTreeMap<(usize, usize), BTreeMap<Vec<PiElement>, i64>>,
}

impl UInvariant {
    /// Builds a map by hand. Zero entries are dropped and entries on fixed
    /// orbits reduced mod 2.
    pub fn from_entries(
        group: PiGroup,
        n: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<PiElement>, i64)>,
    ) -> Self {
        let mut maps: BTreeMap<(usize, usize), BTreeMap<Vec<PiElement>, i64>> = BTreeMap::new();
        for ((i, orbit), v, x) in entries {
            *maps.entry((i, orbit)).or_default().entry(v).or_default() += x;
        }
        for ((_, orbit), m) in maps.iter_mut() {
            if !group.is_free(*orbit) {
                m.values_mut().for_each(|x| *x = x.rem_euclid(2));
            }
            m.retain(|_, x| *x != 0);
        }
        maps.retain(|_, m| !m.is_empty());
        UInvariant { group, n, maps }
    }

    pub fn group(&self) -> &PiGroup {
        &self.group
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, orbit: usize, v: &[PiElement]) -> i64 {
        self.maps.get(&(i, orbit)).and_then(|m| m.get(v)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn component_is_zero(&self, i: usize) -> bool {
        !self.maps.keys().any(|(c, _)| *c == i)
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), BTreeMap<Vec<PiElement>, i64>> {
        &self.maps
    }

    /// Pushes forward along the exponent-sum parity `pi -> Z/2`, applied
    /// entrywise.
    pub fn to_v(&self) -> VInvariant {
        let mut maps: BTreeMap<(usize, usize), BTreeMap<Vec<u8>, i64>> = BTreeMap::new();
        for (&(i, orbit), m) in &self.maps {
            let mut out: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
            for (v, x) in m {
                let w: Vec<u8> = v.iter().map(|g| self.group.parity(g)).collect();
                if w.iter().any(|&b| b != 0) {
                    *out.entry(w).or_default() += x;
                }
            }
            if !self.group.is_free(orbit) {
                out.values_mut().for_each(|x| *x = x.rem_euclid(2));
            }
            out.retain(|_, x| *x != 0);
            if !out.is_empty() {
                maps.insert((i, orbit), out);
            }
        }
        VInvariant { group: self.group.clone(), n: self.n, maps }
    }

    /// Sum over the support of `U^{i,b}` of the value times the exponent of
    /// `a` in the `i`-th entry; mod 2 when `a` is fixed.
    pub fn delta(&self, a: usize, i: usize, b: usize) -> i64 {
        let mut total = 0;
        if let Some(m) = self.maps.get(&(i, b)) {
            for (v, x) in m {
                total += x * self.group.exponent(&v[i], a);
            }
        }
        if self.group.is_free(a) {
            total
        } else {
            total.rem_euclid(2)
        }
    }

    /// The conditions a `U` value must meet to come from some phrase.
    pub fn is_realizable(&self) -> bool {
        let k = self.group.rank();
        for i in 0..self.n {
            for a in 0..k {
                if self.delta(a, i, a) != 0 {
                    return false;
                }
                for b in 0..k {
                    let s = self.delta(a, i, b) + self.delta(b, i, a);
                    let both_free = self.group.is_free(a) && self.group.is_free(b);
                    if (both_free && s != 0) || (!both_free && s.rem_euclid(2) != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for UInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_maps(f, "U", &self.group, &self.maps, |v| self.group.render_vector(v))
    }
}

/// `n(A, B)` restricted to a list of positions: `1` for `A..B..A..B`, `-1`
/// for `B..A..B..A`, else `0`.
pub(crate) fn interleave(a: (usize, usize), b: (usize, usize)) -> i64 {
    if a.0 < b.0 && b.0 < a.1 && a.1 < b.1 {
        1
    } else if b.0 < a.0 && a.0 < b.1 && b.1 < a.1 {
        -1
    } else {
        0
    }
}

/// The group vector of each letter with both occurrences in component `i`.
pub fn u_vectors(p: &Nanophrase, triple: &HomotopyDataTriple, i: usize) -> Result<BTreeMap<Letter, Vec<PiElement>>> {
    let group = PiGroup::new(triple);
    let occ = p.occurrences();
    let n = p.num_components();
    let own = self_letters(p, &occ, i);
    let mut out = BTreeMap::new();
    for &a in &own {
        let [ax, ay] = occ.get(a);
        let mut v = vec![group.identity(); n];
        for &b in &own {
            let [bx, by] = occ.get(b);
            let k = interleave((ax.offset, ay.offset), (bx.offset, by.offset));
            if k != 0 {
                group.mul_symbol(&mut v[i], p.symbol(b), k)?;
            }
        }
        for (b, other) in linked_letters(p, &occ, a) {
            if other.component != i {
                group.mul_symbol(&mut v[other.component], p.symbol(b), 1)?;
            }
        }
        out.insert(a, v);
    }
    Ok(out)
}

pub fn u_invariant(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<UInvariant> {
    if !triple.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let group = PiGroup::new(triple);
    let mut maps = BTreeMap::new();
    for i in 0..p.num_components() {
        let mut counts: BTreeMap<(usize, i64), BTreeMap<Vec<PiElement>, i64>> = BTreeMap::new();
        for (a, v) in u_vectors(p, triple, i)? {
            if v.iter().all(|g| group.is_identity(g)) {
                continue;
            }
            let key = group.locate(p.symbol(a))?;
            *counts.entry(key).or_default().entry(v).or_default() += 1;
        }
        orient(&group, &counts, i, &mut maps);
    }
    Ok(UInvariant { group, n: p.num_components(), maps })
}
