//! The abelian group generated by the alphabet subject to `a * tau(a) = 1`.
//!
//! Elements are exponent vectors with one entry per tau orbit. The orbit
//! representative (declared first) is the positive generator; its partner
//! counts as the inverse. Fixed orbits have exponents mod 2.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::hdt::HomotopyDataTriple;
use crate::phrase::Symbol;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PiElement(pub Vec<i64>);

impl PiElement {
    pub fn exponents(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiGroup {
    reps: Vec<Symbol>,
    free: Vec<bool>,
    lookup: BTreeMap<Symbol, (usize, i64)>,
}

impl PiGroup {
    pub fn new(triple: &HomotopyDataTriple) -> Self {
        let mut reps = Vec::new();
        let mut free = Vec::new();
        let mut lookup = BTreeMap::new();
        for (k, o) in triple.orbits().iter().enumerate() {
            reps.push(triple.symbol(o.rep).clone());
            free.push(o.is_free());
            lookup.insert(triple.symbol(o.rep).clone(), (k, 1));
            if let Some(p) = o.partner {
                lookup.insert(triple.symbol(p).clone(), (k, -1));
            }
        }
        PiGroup { reps, free, lookup }
    }

    /// Number of orbits, the rank of the exponent vectors.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn is_free(&self, orbit: usize) -> bool {
        self.free[orbit]
    }

    pub fn representative(&self, orbit: usize) -> &Symbol {
        &self.reps[orbit]
    }

    /// Orbit index and sign of a symbol.
    pub fn locate(&self, s: &Symbol) -> Result<(usize, i64)> {
        self.lookup.get(s).copied().ok_or_else(|| crate::Error::UnknownSymbol { symbol: s.to_string() })
    }

    pub fn identity(&self) -> PiElement {
        PiElement(vec![0; self.reps.len()])
    }

    pub fn is_identity(&self, g: &PiElement) -> bool {
        g.0.iter().all(|&e| e == 0)
    }

    pub fn generator(&self, s: &Symbol) -> Result<PiElement> {
        let (k, sign) = self.locate(s)?;
        let mut g = self.identity();
        g.0[k] = sign;
        Ok(self.normalize(g))
    }

    fn normalize(&self, mut g: PiElement) -> PiElement {
        for (e, &free) in g.0.iter_mut().zip(&self.free) {
            if !free {
                *e = e.rem_euclid(2);
            }
        }
        g
    }

    pub fn mul(&self, a: &PiElement, b: &PiElement) -> PiElement {
        self.normalize(PiElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn pow(&self, a: &PiElement, k: i64) -> PiElement {
        self.normalize(PiElement(a.0.iter().map(|x| x * k).collect()))
    }

    pub fn inv(&self, a: &PiElement) -> PiElement {
        self.pow(a, -1)
    }

    /// Multiplies `acc` in place by `s^k`.
    pub fn mul_symbol(&self, acc: &mut PiElement, s: &Symbol, k: i64) -> Result<()> {
        let (o, sign) = self.locate(s)?;
        acc.0[o] += sign * k;
        if !self.free[o] {
            acc.0[o] = acc.0[o].rem_euclid(2);
        }
        Ok(())
    }

    /// Sum of exponents mod 2.
    pub fn parity(&self, g: &PiElement) -> u8 {
        (g.0.iter().sum::<i64>().rem_euclid(2)) as u8
    }

    /// Exponent of the representative of `orbit`.
    pub fn exponent(&self, g: &PiElement, orbit: usize) -> i64 {
        g.0[orbit]
    }

    /// `1` for the identity, else `sym^exp` factors joined by `*` in orbit
    /// order, with `^1` omitted.
    pub fn render(&self, g: &PiElement) -> String {
        let parts: Vec<String> = g
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { self.reps[k].to_string() } else { format!("{}^{}", self.reps[k], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn render_vector(&self, v: &[PiElement]) -> String {
        format!("({})", v.iter().map(|g| self.render(g)).collect::<Vec<_>>().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;

    #[test]
    fn group_laws() {
        let t = parse_triple("alpha: a b c d e\ntau: a<->b c<->d").unwrap();
        let pi = PiGroup::new(&t);
        let g = |s: &str| pi.generator(&Symbol::new(s)).unwrap();
        assert!(pi.is_identity(&pi.mul(&g("a"), &g("b"))));
        assert!(pi.is_identity(&pi.mul(&g("e"), &g("e"))));
        assert_eq!(pi.render(&pi.mul(&g("a"), &g("a"))), "a^2");
        assert_eq!(pi.render(&g("d")), "c^-1");
        assert_eq!(pi.render(&pi.mul(&g("a"), &g("e"))), "a*e");
        assert_eq!(pi.render(&pi.identity()), "1");
        assert_eq!(pi.parity(&pi.mul(&g("a"), &g("d"))), 0);
        assert_eq!(pi.parity(&g("d")), 1);
        assert_eq!(pi.inv(&g("a")), g("b"));
    }
}
