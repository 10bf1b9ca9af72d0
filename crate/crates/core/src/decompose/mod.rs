//! Decomposition of phrases along the prime factors of a composite triple.
//!
//! `psi` cuts every component into maximal runs of letters from one factor
//! and records the factor of each run in `theta`. Components of the
//! original phrase become phrases of a multiphrase, so a nanoword gives a
//! single phrase. Reductions delete empty components and keep `theta`
//! locally variable.

mod reduce;

use std::fmt;

use crate::error::{Error, Result};
use crate::hdt::{Factorization, HomotopyDataTriple};
use crate::phrase::{Letter, Nanomultiphrase, Nanophrase};

pub use reduce::{
    compare_reduced, complete_invariant, hr_report, reduce_component, reduce_fully, symmetry_obstruction,
    Certification, FactorHr, HrReport, ReducedClass, Reduction, SymmetryReport,
};

/// A multiphrase together with the factor (0-based) of each component.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecomposedPhrase {
    multi: Nanomultiphrase,
    theta: Vec<usize>,
}

impl DecomposedPhrase {
    /// Checks membership: every letter of component `j` belongs to factor
    /// `theta[j]`, and neighbours inside one phrase have different factors.
    pub fn new(multi: Nanomultiphrase, theta: Vec<usize>, triple: &HomotopyDataTriple) -> Result<Self> {
        let fz = triple.factorize();
        let d = DecomposedPhrase { multi, theta };
        d.validate(triple, &fz)?;
        Ok(d)
    }

    fn validate(&self, triple: &HomotopyDataTriple, fz: &Factorization) -> Result<()> {
        let p = self.multi.flattened();
        if self.theta.len() != p.num_components() {
            return Err(Error::InvalidDecomposition(format!(
                "theta has {} entries for {} components",
                self.theta.len(),
                p.num_components()
            )));
        }
        if let Some(&f) = self.theta.iter().find(|&&f| f >= fz.len()) {
            return Err(Error::IndexOutOfRange { index: f, len: fz.len() });
        }
        for (j, w) in p.components().iter().enumerate() {
            for l in w {
                let f = fz.factor_of_index(triple.require_index(p.symbol(*l))?);
                if f != self.theta[j] {
                    return Err(Error::InvalidDecomposition(format!(
                        "letter {} of component {} lies in factor {} not {}",
                        p.name(*l),
                        j + 1,
                        f + 1,
                        self.theta[j] + 1
                    )));
                }
            }
        }
        for k in 0..self.multi.num_phrases() {
            let r = self.multi.phrase_range(k);
            for j in r.start + 1..r.end {
                if self.theta[j - 1] == self.theta[j] {
                    return Err(Error::InvalidDecomposition(format!(
                        "components {} and {} share factor {}",
                        j,
                        j + 1,
                        self.theta[j] + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn multiphrase(&self) -> &Nanomultiphrase {
        &self.multi
    }

    /// All components laid end to end.
    pub fn phrase(&self) -> &Nanophrase {
        self.multi.flattened()
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn num_components(&self) -> usize {
        self.theta.len()
    }

    /// `theta` as 1-based factor numbers, phrases separated by `||` and an
    /// empty phrase shown as `()`.
    pub fn theta_string(&self) -> String {
        theta_string(&self.theta, self.multi.lengths())
    }
}

pub(crate) fn theta_string(theta: &[usize], lengths: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut at = 0;
    for &len in lengths {
        if len == 0 {
            parts.push("()".to_string());
        } else {
            parts.push(theta[at..at + len].iter().map(|f| (f + 1).to_string()).collect::<Vec<_>>().join(" "));
        }
        at += len;
    }
    parts.join(" || ")
}

impl fmt::Display for DecomposedPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [theta: {}]", self.multi, self.theta_string())
    }
}

impl fmt::Debug for DecomposedPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecomposedPhrase({self})")
    }
}

fn factor_of_letter(p: &Nanophrase, l: Letter, triple: &HomotopyDataTriple, fz: &Factorization) -> Result<usize> {
    Ok(fz.factor_of_index(triple.require_index(p.symbol(l))?))
}

/// Splits each component of `p` into maximal same-factor runs.
pub fn psi(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<DecomposedPhrase> {
    triple.require_nonunit()?;
    let fz = triple.factorize();
    let mut comps: Vec<Vec<Letter>> = Vec::new();
    let mut theta = Vec::new();
    let mut lengths = Vec::new();
    for w in p.components() {
        let before = comps.len();
        for &l in w {
            let f = factor_of_letter(p, l, triple, &fz)?;
            if comps.len() > before && theta.last() == Some(&f) {
                comps.last_mut().expect("run open").push(l);
            } else {
                comps.push(vec![l]);
                theta.push(f);
            }
        }
        lengths.push(comps.len() - before);
    }
    let multi = Nanomultiphrase::new(p.with_components(comps), lengths)?;
    Ok(DecomposedPhrase { multi, theta })
}

/// Forgets `theta` and concatenates the components of each phrase.
pub fn omega(d: &DecomposedPhrase) -> Nanophrase {
    d.multi.chi()
}

/// Deletes every letter lying in a component whose factor differs from the
/// letter's own factor, together with its other occurrence.
pub fn gamma(multi: &Nanomultiphrase, theta: &[usize], triple: &HomotopyDataTriple) -> Result<DecomposedPhrase> {
    let fz = triple.factorize();
    let p = multi.flattened();
    if theta.len() != p.num_components() {
        return Err(Error::InvalidDecomposition("theta length differs from component count".into()));
    }
    let mut doomed = std::collections::BTreeSet::new();
    for (j, w) in p.components().iter().enumerate() {
        for &l in w {
            if factor_of_letter(p, l, triple, &fz)? != theta[j] {
                doomed.insert(l);
            }
        }
    }
    let kept = p.remove_letters(&doomed);
    let d = DecomposedPhrase { multi: Nanomultiphrase::new(kept, multi.lengths().to_vec())?, theta: theta.to_vec() };
    d.validate(triple, &fz)?;
    Ok(d)
}

/// The components of factor `i` (0-based), in order, as a phrase over that
/// factor's alphabet.
pub fn split_by_factor(d: &DecomposedPhrase, i: usize, k: usize) -> Result<Nanophrase> {
    Ok(split_multi(d, i, k)?.flattened().clone())
}

/// Like [`split_by_factor`] but keeping phrase boundaries.
pub(crate) fn split_multi(d: &DecomposedPhrase, i: usize, k: usize) -> Result<Nanomultiphrase> {
    if i >= k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    let keep: Vec<usize> = (0..d.num_components()).filter(|&j| d.theta[j] == i).collect();
    let lengths =
        (0..d.multi.num_phrases()).map(|ph| d.multi.phrase_range(ph).filter(|&j| d.theta[j] == i).count()).collect();
    Nanomultiphrase::new(d.phrase().restrict_to(&keep)?, lengths)
}

/// Moves on decomposed phrases. Indices are 0-based component indices into
/// the flattened multiphrase.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhraseMove {
    /// Deletes empty component `index`. Allowed at either end of a phrase or
    /// when its neighbours have different factors.
    SimpleReduction { index: usize },
    /// Deletes empty component `index` and joins its neighbours, which must
    /// share a factor and lie in the same phrase.
    ConcatenatingReduction { index: usize },
    /// Inserts an empty component of `factor` at `position` in `phrase`.
    SimpleAugmentation { phrase: usize, position: usize, factor: usize },
    /// Cuts component `index` at `offset` and puts an empty component of
    /// `factor` in the cut.
    SplittingAugmentation { index: usize, offset: usize, factor: usize },
}

impl PhraseMove {
    /// The reduction that deletes empty component `index`; exactly one of
    /// the two kinds applies.
    pub fn reduction_for(d: &DecomposedPhrase, index: usize) -> Result<PhraseMove> {
        let n = d.num_components();
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
        let r = d.multi.phrase_range(d.multi.phrase_of(index));
        let inner = index > r.start && index + 1 < r.end;
        Ok(if inner && d.theta[index - 1] == d.theta[index + 1] {
            PhraseMove::ConcatenatingReduction { index }
        } else {
            PhraseMove::SimpleReduction { index }
        })
    }
}

fn violation(mv: PhraseMove, why: &str) -> Error {
    Error::SideConditionViolated(format!("{mv:?}: {why}"))
}

pub fn apply_phrase_move(d: &DecomposedPhrase, mv: PhraseMove, triple: &HomotopyDataTriple) -> Result<DecomposedPhrase> {
    let fz = triple.factorize();
    let p = d.phrase();
    let n = d.num_components();
    let mut comps: Vec<Vec<Letter>> = p.components().to_vec();
    let mut theta = d.theta.clone();
    let mut lengths = d.multi.lengths().to_vec();
    let check_index = |i: usize| if i < n { Ok(()) } else { Err(Error::IndexOutOfRange { index: i, len: n }) };
    match mv {
        PhraseMove::SimpleReduction { index } | PhraseMove::ConcatenatingReduction { index } => {
            check_index(index)?;
            if !comps[index].is_empty() {
                return Err(Error::ComponentNotEmpty { index });
            }
            let forced = PhraseMove::reduction_for(d, index)?;
            if forced != mv {
                return Err(violation(mv, "the other kind of reduction applies here"));
            }
            let ph = d.multi.phrase_of(index);
            if let PhraseMove::ConcatenatingReduction { .. } = mv {
                let right = comps.remove(index + 1);
                comps.remove(index);
                comps[index - 1].extend(right);
                theta.drain(index..index + 2);
                lengths[ph] -= 2;
            } else {
                comps.remove(index);
                theta.remove(index);
                lengths[ph] -= 1;
            }
        }
        PhraseMove::SimpleAugmentation { phrase, position, factor } => {
            if phrase >= lengths.len() {
                return Err(Error::IndexOutOfRange { index: phrase, len: lengths.len() });
            }
            if factor >= fz.len() {
                return Err(Error::IndexOutOfRange { index: factor, len: fz.len() });
            }
            let r = d.multi.phrase_range(phrase);
            if position > r.len() {
                return Err(Error::IndexOutOfRange { index: position, len: r.len() + 1 });
            }
            let at = r.start + position;
            if (at > r.start && theta[at - 1] == factor) || (at < r.end && theta[at] == factor) {
                return Err(violation(mv, "a neighbour has the same factor"));
            }
            comps.insert(at, Vec::new());
            theta.insert(at, factor);
            lengths[phrase] += 1;
        }
        PhraseMove::SplittingAugmentation { index, offset, factor } => {
            check_index(index)?;
            if factor >= fz.len() {
                return Err(Error::IndexOutOfRange { index: factor, len: fz.len() });
            }
            if offset > comps[index].len() {
                return Err(Error::IndexOutOfRange { index: offset, len: comps[index].len() + 1 });
            }
            if theta[index] == factor {
                return Err(violation(mv, "the inserted factor equals the split component's"));
            }
            let tail = comps[index].split_off(offset);
            comps.insert(index + 1, Vec::new());
            comps.insert(index + 2, tail);
            let t = theta[index];
            theta.splice(index + 1..index + 1, [factor, t]);
            lengths[d.multi.phrase_of(index)] += 2;
        }
    }
    let out = DecomposedPhrase { multi: Nanomultiphrase::new(p.with_components(comps), lengths)?, theta };
    out.validate(triple, &fz)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    /// Two factors: `{a, b}` and `{c, d}`, both with empty `S`.
    fn two_factors() -> HomotopyDataTriple {
        parse_triple("alpha: a b c d\ntau: a<->b c<->d\nS:").unwrap()
    }

    #[test]
    fn psi_on_nanowords() {
        let t = two_factors();
        let w = parse_phrase("A:a B:a C:b D:c E:d ; ABCBDCAEDE").unwrap();
        let d = psi(&w, &t).unwrap();
        assert_eq!(d.to_string(), "A:a B:a C:b D:c E:d ; ABCB|D|CA|EDE [theta: 1 2 1 2]");
        assert_eq!(omega(&d), w);
        let w = parse_phrase("A:a B:b C:c D:d ; ACADDBBC").unwrap();
        assert_eq!(psi(&w, &t).unwrap().to_string(), "A:a C:c D:d B:b ; A|C|A|DD|BB|C [theta: 1 2 1 2 1 2]");
        let e = psi(&Nanophrase::trivial(1), &t).unwrap();
        assert_eq!(e.num_components(), 0);
        assert_eq!(e.theta_string(), "()");
        assert_eq!(omega(&e), Nanophrase::trivial(1));
    }

    #[test]
    fn psi_on_phrases_keeps_phrase_boundaries() {
        let t = two_factors();
        let p = parse_phrase("A:a C:c ; AC|_|CA").unwrap();
        let d = psi(&p, &t).unwrap();
        assert_eq!(d.multiphrase().lengths(), &[2, 0, 2]);
        assert_eq!(d.theta_string(), "1 2 || () || 2 1");
        assert_eq!(omega(&d), p);
    }

    #[test]
    fn split_drops_other_factors() {
        let t = two_factors();
        let w = parse_phrase("A:a B:a C:b D:c E:d ; ABCBDCAEDE").unwrap();
        let d = psi(&w, &t).unwrap();
        assert_eq!(split_by_factor(&d, 0, 2).unwrap().to_string(), "A:a B:a C:b ; ABCB|CA");
        assert_eq!(split_by_factor(&d, 1, 2).unwrap().to_string(), "D:c E:d ; D|EDE");
        assert!(split_by_factor(&d, 2, 2).is_err());
    }

    #[test]
    fn gamma_removes_foreign_pairs() {
        let t = two_factors();
        let w = parse_phrase("A:a B:a C:b D:c E:d ; ABCBDCAEDE").unwrap();
        let d = psi(&w, &t).unwrap();
        assert_eq!(gamma(d.multiphrase(), d.theta(), &t).unwrap(), d);
        let extra = parse_phrase("A:a B:a C:b D:c E:d F:c ; ABFFCB|D|CA|EDE").unwrap();
        let g = gamma(&Nanomultiphrase::single(extra), d.theta(), &t).unwrap();
        assert_eq!(g.to_string(), d.to_string());
        assert_eq!(gamma(g.multiphrase(), g.theta(), &t).unwrap(), g);
    }

    #[test]
    fn reductions_follow_theta() {
        let t = parse_triple("alpha: a b c\nS:").unwrap();
        let p = parse_phrase("A:a C:c ; AA|_|CC").unwrap();
        let m = Nanomultiphrase::single(p.clone());
        let d = DecomposedPhrase::new(m.clone(), vec![0, 1, 0], &t);
        // a and c lie in different factors, so theta (1,2,1) is illegal here.
        assert!(d.is_err());
        let p = parse_phrase("A:a B:a ; AA|_|BB").unwrap();
        let d = DecomposedPhrase::new(Nanomultiphrase::single(p), vec![0, 1, 0], &t).unwrap();
        assert_eq!(PhraseMove::reduction_for(&d, 1).unwrap(), PhraseMove::ConcatenatingReduction { index: 1 });
        let r = apply_phrase_move(&d, PhraseMove::ConcatenatingReduction { index: 1 }, &t).unwrap();
        assert_eq!(r.to_string(), "A:a B:a ; AABB [theta: 1]");
        assert!(apply_phrase_move(&d, PhraseMove::SimpleReduction { index: 1 }, &t).is_err());
        assert!(matches!(
            apply_phrase_move(&d, PhraseMove::SimpleReduction { index: 0 }, &t),
            Err(Error::ComponentNotEmpty { index: 0 })
        ));

        let p = parse_phrase("A:a C:c ; AA|_|CC").unwrap();
        let d = DecomposedPhrase::new(Nanomultiphrase::single(p), vec![0, 1, 2], &t).unwrap();
        let r = apply_phrase_move(&d, PhraseMove::SimpleReduction { index: 1 }, &t).unwrap();
        assert_eq!(r.to_string(), "A:a C:c ; AA|CC [theta: 1 3]");

        let d = DecomposedPhrase::new(Nanomultiphrase::single(Nanophrase::trivial(1)), vec![0], &t).unwrap();
        let r = apply_phrase_move(&d, PhraseMove::SimpleReduction { index: 0 }, &t).unwrap();
        assert_eq!(r.num_components(), 0);
        assert_eq!(r.multiphrase().lengths(), &[0]);
    }

    #[test]
    fn augmentations_invert_reductions() {
        let t = parse_triple("alpha: a b c\nS:").unwrap();
        let p = parse_phrase("A:a B:a ; AABB").unwrap();
        let d = DecomposedPhrase::new(Nanomultiphrase::single(p), vec![0], &t).unwrap();
        let s = apply_phrase_move(&d, PhraseMove::SplittingAugmentation { index: 0, offset: 2, factor: 1 }, &t).unwrap();
        assert_eq!(s.theta(), &[0, 1, 0]);
        let back = apply_phrase_move(&s, PhraseMove::reduction_for(&s, 1).unwrap(), &t).unwrap();
        assert_eq!(back, d);
        let a = apply_phrase_move(&d, PhraseMove::SimpleAugmentation { phrase: 0, position: 1, factor: 2 }, &t).unwrap();
        assert_eq!(a.theta(), &[0, 2]);
        assert!(apply_phrase_move(&d, PhraseMove::SimpleAugmentation { phrase: 0, position: 1, factor: 0 }, &t).is_err());
    }

    #[test]
    fn phrase_boundaries_force_simple_reductions() {
        let t = parse_triple("alpha: a b\nS:").unwrap();
        let p = parse_phrase("A:a B:a ; AA|_|BB").unwrap();
        let m = Nanomultiphrase::new(p, vec![1, 1, 1]).unwrap();
        let d = DecomposedPhrase::new(m, vec![0, 1, 0], &t).unwrap();
        assert_eq!(PhraseMove::reduction_for(&d, 1).unwrap(), PhraseMove::SimpleReduction { index: 1 });
        let r = apply_phrase_move(&d, PhraseMove::SimpleReduction { index: 1 }, &t).unwrap();
        assert_eq!(r.multiphrase().lengths(), &[1, 0, 1]);
    }
}
