//! Fukunaga's form of the self-linking invariant for diagonal `S`, and the
//! maps converting it to and from `U`.
//!
//! Vectors live in `K^n` where `K` has one column per ordered pair of orbits
//! `(s, t)`: `Z` when `t` is free, `Z/2` when `t` is fixed. Reducing the
//! free columns of a fixed row mod 2 as well would merge group vectors that
//! differ only in the sign of a free exponent, which `U` tells apart.

use std::collections::BTreeMap;
use std::fmt;

use super::pi::{PiElement, PiGroup};
use super::self_linking::{interleave, UInvariant};
use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::phrase::{Letter, Nanophrase};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KVector {
    n: usize,
    k: usize,
    data: Vec<i64>,
}

impl KVector {
    pub fn zero(n: usize, k: usize) -> Self {
        KVector { n, k, data: vec![0; n * k * k] }
    }

    fn idx(&self, j: usize, s: usize, t: usize) -> usize {
        (j * self.k + s) * self.k + t
    }

    pub fn get(&self, j: usize, s: usize, t: usize) -> i64 {
        self.data[self.idx(j, s, t)]
    }

    pub fn add(&mut self, j: usize, s: usize, t: usize, x: i64) {
        let i = self.idx(j, s, t);
        self.data[i] += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduces the `Z/2` columns.
    fn normalize(mut self, group: &PiGroup) -> Self {
        for j in 0..self.n {
            for s in 0..self.k {
                for t in 0..self.k {
                    if !group.is_free(t) {
                        let i = self.idx(j, s, t);
                        self.data[i] = self.data[i].rem_euclid(2);
                    }
                }
            }
        }
        self
    }

    /// Orbits `s` with a nonzero entry in some `(j, s, t)`.
    pub fn rows(&self) -> Vec<usize> {
        (0..self.k).filter(|&s| (0..self.n).any(|j| (0..self.k).any(|t| self.get(j, s, t) != 0))).collect()
    }

    fn render(&self, group: &PiGroup) -> String {
        let mut parts = Vec::new();
        for j in 0..self.n {
            for s in 0..self.k {
                for t in 0..self.k {
                    let x = self.get(j, s, t);
                    if x != 0 {
                        parts.push(format!("{}:{},{}={}", j + 1, group.representative(s), group.representative(t), x));
                    }
                }
            }
        }
        format!("[{}]", parts.join(" "))
    }
}

/// The maps `B_i`, one per component, each a finite-support map from
/// nonzero vectors of `K^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoInvariant {
    group: PiGroup,
    n: usize,
    maps: Vec<BTreeMap<KVector, i64>>,
}

impl SoInvariant {
    pub fn value(&self, i: usize, v: &KVector) -> i64 {
        self.maps[i].get(v).copied().unwrap_or(0)
    }

    pub fn maps(&self) -> &[BTreeMap<KVector, i64>] {
        &self.maps
    }

    /// Builds a value by hand. Entries are kept as given apart from zeros.
    pub fn from_entries(group: PiGroup, n: usize, entries: impl IntoIterator<Item = (usize, KVector, i64)>) -> Self {
        let mut maps = vec![BTreeMap::new(); n];
        for (i, v, x) in entries {
            *maps[i].entry(v).or_default() += x;
        }
        for m in maps.iter_mut() {
            m.retain(|_, x| *x != 0);
        }
        SoInvariant { group, n, maps }
    }

    /// Recovers `U`. Every support vector must use a single orbit row.
    pub fn to_u(&self) -> Result<UInvariant> {
        let mut entries = Vec::new();
        for (i, m) in self.maps.iter().enumerate() {
            for (v, x) in m {
                let (r, u) = kappa(&self.group, i, v)?;
                entries.push(((i, r), u, *x));
            }
        }
        Ok(UInvariant::from_entries(self.group.clone(), self.n, entries))
    }
}

impl fmt::Display for SoInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for (i, m) in self.maps.iter().enumerate() {
            if !m.is_empty() {
                let e: Vec<String> = m.iter().map(|(v, x)| format!("{}->{}", v.render(&self.group), x)).collect();
                lines.push(format!("B_{}: {}", i + 1, e.join(" ")));
            }
        }
        if lines.is_empty() {
            write!(f, "S_o: 0")
        } else {
            write!(f, "{}", lines.join("\n"))
        }
    }
}

/// Orbit and sign of each letter: `+1` for the representative, `-1` for
/// its partner.
fn letter_orbits(p: &Nanophrase, group: &PiGroup) -> Result<BTreeMap<Letter, (usize, i64)>> {
    p.projection().iter().map(|(l, s)| Ok((*l, group.locate(s)?))).collect()
}

/// Fukunaga's vector `l(A)` for each letter with both occurrences in
/// component `i`.
pub fn so_vectors(p: &Nanophrase, triple: &HomotopyDataTriple, i: usize) -> Result<BTreeMap<Letter, KVector>> {
    let group = PiGroup::new(triple);
    let orbit = letter_orbits(p, &group)?;
    let occ = p.occurrences();
    let (n, k) = (p.num_components(), group.rank());
    let mut out = BTreeMap::new();
    for a in p.letters() {
        let [a1, a2] = occ.get(a);
        if a1.component != i || a2.component != i {
            continue;
        }
        let s = orbit[&a].0;
        let mut v = KVector::zero(n, k);
        for b in p.letters() {
            let [b1, b2] = occ.get(b);
            let sign = interleave((a1.flat, a2.flat), (b1.flat, b2.flat));
            if sign == 0 {
                continue;
            }
            let (t, eps) = orbit[&b];
            let j = if sign == 1 { b2.component } else { b1.component };
            v.add(j, s, t, sign * eps);
        }
        out.insert(a, v.normalize(&group));
    }
    Ok(out)
}

pub fn so_invariant(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<SoInvariant> {
    if !triple.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let group = PiGroup::new(triple);
    let orbit = letter_orbits(p, &group)?;
    let n = p.num_components();
    let mut maps = Vec::with_capacity(n);
    for i in 0..n {
        let mut eta: BTreeMap<KVector, i64> = BTreeMap::new();
        for (a, v) in so_vectors(p, triple, i)? {
            if !v.is_zero() {
                *eta.entry(v).or_default() += orbit[&a].1;
            }
        }
        let mut m = BTreeMap::new();
        for (v, x) in eta {
            let rows = v.rows();
            let value = if rows.iter().all(|&s| group.is_free(s)) {
                x
            } else if rows.iter().all(|&s| !group.is_free(s)) {
                x.rem_euclid(2)
            } else {
                0
            };
            if value != 0 {
                m.insert(v, value);
            }
        }
        maps.push(m);
    }
    Ok(SoInvariant { group, n, maps })
}

/// Places the exponents of `v` in row `orbit`, negated for components
/// before `i`.
pub fn h_map(group: &PiGroup, orbit: usize, i: usize, v: &[PiElement]) -> KVector {
    let k = group.rank();
    let mut out = KVector::zero(v.len(), k);
    for (j, g) in v.iter().enumerate() {
        let sign = if j >= i { 1 } else { -1 };
        for t in 0..k {
            out.add(j, orbit, t, sign * group.exponent(g, t));
        }
    }
    out.normalize(group)
}

/// Inverse of [`h_map`] on vectors supported on a single orbit row.
pub fn kappa(group: &PiGroup, i: usize, v: &KVector) -> Result<(usize, Vec<PiElement>)> {
    let rows = v.rows();
    let [r] = rows[..] else {
        return Err(Error::MalformedSupport(v.render(group)));
    };
    let u = (0..v.n)
        .map(|j| {
            let sign = if j >= i { 1 } else { -1 };
            let mut g = group.identity();
            for t in 0..v.k {
                g.0[t] = sign * v.get(j, r, t);
            }
            group.mul(&g, &group.identity())
        })
        .collect();
    Ok((r, u))
}

impl UInvariant {
    /// Fukunaga's form of the same information.
    pub fn to_so(&self) -> SoInvariant {
        let group = self.group().clone();
        let n = self.components();
        let mut maps = vec![BTreeMap::new(); n];
        for (&(i, orbit), m) in self.maps() {
            for (v, x) in m {
                maps[i].insert(h_map(&group, orbit, i, v), *x);
            }
        }
        SoInvariant { group, n, maps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::invariants::self_linking::{u_invariant, u_vectors};
    use crate::phrase::parse_phrase;

    fn triple() -> HomotopyDataTriple {
        parse_triple("alpha: a b c d e\ntau: a<->b c<->d\nS: diagonal").unwrap()
    }

    #[test]
    fn letter_vectors_are_images_of_group_vectors() {
        let t = triple();
        let group = PiGroup::new(&t);
        let orbit_of = t.orbit_of();
        for text in ["A:a C:a D:d E:a B:c F:d ; ACDEABFB|CE|DF", "A:b B:e C:c ; CABACB|_", "A:a B:c C:e ; AB|CBC|A"] {
            let p = parse_phrase(text).unwrap();
            for i in 0..p.num_components() {
                let lu = u_vectors(&p, &t, i).unwrap();
                for (a, v) in so_vectors(&p, &t, i).unwrap() {
                    let s = orbit_of[t.index_of(p.symbol(a)).unwrap()];
                    assert_eq!(v, h_map(&group, s, i, &lu[&a]), "{text} letter {}", p.name(a));
                }
            }
        }
    }

    #[test]
    fn round_trip_through_so() {
        let t = triple();
        let p = parse_phrase("A:a C:a D:d E:a B:c F:d ; ACDEABFB|CE|DF").unwrap();
        let u = u_invariant(&p, &t).unwrap();
        let so = so_invariant(&p, &t).unwrap();
        assert_eq!(u.to_so(), so);
        assert_eq!(so.to_u().unwrap(), u);
    }

    #[test]
    fn fixed_rows_keep_free_signs() {
        // Two letters on the fixed orbit g1 whose group vectors differ only
        // in the sign of the free generator f0.
        let t = crate::generate::diagonal_triple(2, 1);
        let p = parse_phrase("X1:h0 X2:g0 X3:g1 X4:g1 X5:h0 ; X1 X2 X3 X4 X5 X2 X3 X1 X5 X4").unwrap();
        let u = u_invariant(&p, &t).unwrap();
        assert_eq!(u.maps()[&(0, 1)].len(), 2);
        let so = so_invariant(&p, &t).unwrap();
        assert_eq!(u.to_so(), so);
        assert_eq!(so.to_u().unwrap(), u);
    }

    #[test]
    fn mixed_rows_are_rejected() {
        let t = triple();
        let group = PiGroup::new(&t);
        let mut v = KVector::zero(1, group.rank());
        v.add(0, 0, 0, 1);
        v.add(0, 1, 0, 1);
        let so = SoInvariant::from_entries(group, 1, [(0, v, 1)]);
        assert!(matches!(so.to_u(), Err(Error::MalformedSupport(_))));
    }
}
