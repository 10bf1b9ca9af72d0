//! Reduction to the reduced class, the complete invariant built from it,
//! and what it says about symmetry and homotopy rank.

use std::collections::BTreeSet;
use std::fmt;

use super::{omega, psi, split_by_factor, split_multi, theta_string, DecomposedPhrase};
use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::invariants::fingerprint;
use crate::phrase::{parse_multiphrase, Nanomultiphrase, Nanophrase, ProjectMode};
use crate::rewrite::{
    decide_equal, decide_reducible, explore, normal_form, Certificate, Decision, Obstruction, ObstructionKind,
    SearchBudget,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Certification {
    /// Every remaining component was shown to be irreducible.
    Full,
    /// Some reducibility question came back unknown.
    Partial,
}

/// The reduced class of a decomposed phrase: `theta`, the phrase structure,
/// and the canonical multiphrase of each factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedClass {
    theta: Vec<usize>,
    lengths: Vec<usize>,
    factors: Vec<Nanomultiphrase>,
    certification: Certification,
}

impl ReducedClass {
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of components of the reduced phrase.
    pub fn c_r(&self) -> usize {
        self.theta.len()
    }

    pub fn factors(&self) -> &[Nanomultiphrase] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Nanomultiphrase {
        &self.factors[i]
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn is_fully_certified(&self) -> bool {
        self.certification == Certification::Full
    }

    pub fn theta_string(&self) -> String {
        theta_string(&self.theta, &self.lengths)
    }

    /// Header line then one multiphrase per factor.
    pub fn serialize(&self) -> String {
        let cert = if self.is_fully_certified() { "full" } else { "partial" };
        let mut out = format!("theta: {} ; cert: {}", self.theta_string(), cert);
        for f in &self.factors {
            out.push('\n');
            out.push_str(&f.to_string());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |message: &str| Error::Syntax { offset: 0, message: message.to_string() };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| syntax("missing header"))?;
        let rest = header.strip_prefix("theta:").ok_or_else(|| syntax("header must start with 'theta:'"))?;
        let (theta_text, cert_text) = rest.rsplit_once(';').ok_or_else(|| syntax("missing '; cert:'"))?;
        let certification = match cert_text.trim().strip_prefix("cert:").map(str::trim) {
            Some("full") => Certification::Full,
            Some("partial") => Certification::Partial,
            _ => return Err(syntax("cert must be full or partial")),
        };
        let mut theta = Vec::new();
        let mut lengths = Vec::new();
        if !theta_text.trim().is_empty() {
            for part in theta_text.split("||").map(str::trim) {
                if part == "()" {
                    lengths.push(0);
                    continue;
                }
                let before = theta.len();
                for tok in part.split_whitespace() {
                    let f: usize = tok.parse().map_err(|_| syntax("bad factor number"))?;
                    if f == 0 {
                        return Err(syntax("factor numbers start at 1"));
                    }
                    theta.push(f - 1);
                }
                lengths.push(theta.len() - before);
            }
        }
        let factors = lines.map(|l| parse_multiphrase(l).map(|m| m.canonical())).collect::<Result<Vec<_>>>()?;
        Ok(ReducedClass { theta, lengths, factors, certification })
    }

    fn from_decomposed(d: &DecomposedPhrase, k: usize, certification: Certification) -> Result<Self> {
        let factors = (0..k).map(|i| Ok(split_multi(d, i, k)?.canonical())).collect::<Result<_>>()?;
        Ok(ReducedClass { theta: d.theta().to_vec(), lengths: d.multiphrase().lengths().to_vec(), factors, certification })
    }
}

impl fmt::Display for ReducedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Outcome of [`reduce_fully`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub class: ReducedClass,
    /// The reduced decomposed phrase that was reached.
    pub representative: DecomposedPhrase,
    /// Component removed at each step, indexed in the phrase of that step.
    pub steps: Vec<usize>,
}

/// Asks whether component `j` can be emptied within its factor and, if so,
/// empties it and renormalizes.
pub fn reduce_component(
    d: &DecomposedPhrase,
    j: usize,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<(Decision, Option<DecomposedPhrase>)> {
    let n = d.num_components();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    let fz = triple.factorize();
    let f = d.theta()[j];
    let sub = split_by_factor(d, f, fz.len())?;
    let idx = d.theta()[..j].iter().filter(|&&g| g == f).count();
    let decision = decide_reducible(&sub, idx, &fz.factor(f).triple, budget)?;
    if !decision.is_yes() {
        return Ok((decision, None));
    }
    let emptied = d.phrase().project_out(&BTreeSet::from([j]), ProjectMode::Keep)?;
    let multi = Nanomultiphrase::new(emptied, d.multiphrase().lengths().to_vec())?;
    let next = DecomposedPhrase::new(multi, d.theta().to_vec(), triple)?;
    Ok((decision, Some(psi(&omega(&next), triple)?)))
}

/// Removes reducible components, lowest index first, until none is left.
pub fn reduce_fully(d: &DecomposedPhrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<Reduction> {
    let k = triple.factorize().len();
    let mut d = psi(&omega(d), triple)?;
    let mut steps = Vec::new();
    loop {
        let mut saw_unknown = false;
        let mut next = None;
        for j in 0..d.num_components() {
            let (decision, reduced) = reduce_component(&d, j, triple, budget)?;
            if let Some(r) = reduced {
                steps.push(j);
                next = Some(r);
                break;
            }
            saw_unknown |= decision.is_unknown();
        }
        match next {
            Some(r) => d = r,
            None => {
                let cert = if saw_unknown { Certification::Partial } else { Certification::Full };
                return Ok(Reduction { class: ReducedClass::from_decomposed(&d, k, cert)?, representative: d, steps });
            }
        }
    }
}

/// `psi` followed by [`reduce_fully`]. Needs a composite triple.
pub fn complete_invariant(p: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<ReducedClass> {
    triple.require_nonunit()?;
    if triple.factorize().len() < 2 {
        return Err(Error::PrimeTriple);
    }
    Ok(reduce_fully(&psi(p, triple)?, triple, budget)?.class)
}

/// Compares reduced classes. `No` needs both classes fully certified;
/// `Yes` is sound either way.
pub fn compare_reduced(
    a: &ReducedClass,
    b: &ReducedClass,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<Decision> {
    let fz = triple.factorize();
    let full = a.is_fully_certified() && b.is_fully_certified();
    if a.theta_string() != b.theta_string() {
        return Ok(if full {
            Decision::No(Obstruction {
                kind: ObstructionKind::ReducedClass,
                component: None,
                left: a.serialize(),
                right: b.serialize(),
                cause: None,
            })
        } else {
            Decision::unknown("reduced theta differs but a class is only partially certified", None)
        });
    }
    if a.factors.len() != fz.len() || b.factors.len() != fz.len() {
        return Err(Error::InvalidDecomposition("class does not match the factorization".into()));
    }
    let mut certs = Vec::new();
    let mut pending = None;
    for i in 0..fz.len() {
        match decide_equal(a.factor(i).flattened(), b.factor(i).flattened(), &fz.factor(i).triple, budget)? {
            Decision::Yes(c) => certs.push((i, c)),
            Decision::No(o) if full => {
                return Ok(Decision::No(Obstruction {
                    kind: ObstructionKind::ReducedClass,
                    component: Some(i),
                    left: a.serialize(),
                    right: b.serialize(),
                    cause: Some(Box::new(o)),
                }))
            }
            Decision::No(_) => {
                pending = Some(Decision::unknown(
                    format!("factor {} differs but a class is only partially certified", i + 1),
                    None,
                ))
            }
            Decision::Unknown(u) => {
                pending.get_or_insert(Decision::unknown(format!("factor {}: {}", i + 1, u.reason), u.report));
            }
        }
    }
    Ok(match pending {
        Some(d) => d,
        None => Decision::Yes(Certificate::Factorwise { theta: a.theta_string(), factors: certs }),
    })
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    /// Whether `w` can be homotopic to its opposite.
    pub symmetric: Decision,
    /// Whether `w` can be homotopic to its opposite inverse.
    pub skew: Decision,
}

/// A nanoword homotopic to its opposite has an odd number of reduced
/// components and a palindromic reduced `theta`. Only a `No` is ever
/// certified here.
pub fn symmetry_obstruction(w: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<SymmetryReport> {
    if w.num_components() != 1 {
        return Err(Error::InvalidDecomposition("symmetry checks take a nanoword".into()));
    }
    triple.require_nonunit()?;
    let reversal = triple.is_reversal_invariant();
    let skew_ok = reversal && triple.is_tau_invariant();
    let answer = |applies: bool, what: &str, check: &Decision| {
        if applies {
            check.clone()
        } else {
            Decision::unknown(format!("S is not invariant under {what}"), None)
        }
    };
    let check = if triple.factorize().len() < 2 {
        Decision::unknown("the triple is prime, so the reduced theta is constant", None)
    } else {
        let class = complete_invariant(w, triple, budget)?;
        let theta = class.theta().to_vec();
        let mut rev = theta.clone();
        rev.reverse();
        if !class.is_fully_certified() {
            Decision::unknown("the reduced class is only partially certified", None)
        } else if theta.is_empty() {
            Decision::unknown("the nanoword reduces to nothing", None)
        } else if theta != rev {
            Decision::No(Obstruction {
                kind: ObstructionKind::Symmetry,
                component: None,
                left: theta_string(&theta, &[theta.len()]),
                right: theta_string(&rev, &[rev.len()]),
                cause: None,
            })
        } else {
            Decision::unknown("the reduced theta is an odd palindrome", None)
        }
    };
    Ok(SymmetryReport {
        symmetric: answer(reversal, "reversal", &check),
        skew: answer(skew_ok, "reversal and tau", &check),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorHr {
    pub factor: usize,
    pub phrase: Nanophrase,
    pub lower: usize,
    pub upper: usize,
}

/// Bounds on the homotopy rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HrReport {
    pub lower: usize,
    pub upper: usize,
    pub per_factor: Vec<FactorHr>,
}

impl HrReport {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

impl fmt::Display for HrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "hr = {}", self.lower)?;
        } else {
            write!(f, "{} <= hr <= {}", self.lower, self.upper)?;
        }
        for h in &self.per_factor {
            write!(f, "\n  factor {}: [{}, {}] {}", h.factor + 1, h.lower, h.upper, h.phrase)?;
        }
        Ok(())
    }
}

fn bounds(p: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<(usize, usize)> {
    if triple.s_is_empty() {
        let r = normal_form(p, triple)?.rank();
        return Ok((r, r));
    }
    let upper = explore(p, triple, budget)?.smallest.rank();
    let trivial = Nanophrase::trivial(p.num_components());
    let lower = usize::from(fingerprint(p, triple)? != fingerprint(&trivial, triple)?);
    Ok((lower.min(upper), upper))
}

/// Homotopy rank bounds: the sum over factors of the bounds for each
/// reduced factor phrase. Exact when every factor has empty `S`.
pub fn hr_report(w: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<HrReport> {
    triple.require_nonunit()?;
    triple.check_phrase(w)?;
    let fz = triple.factorize();
    let (pieces, full) = if fz.len() >= 2 {
        let class = complete_invariant(w, triple, budget)?;
        let pieces: Vec<_> =
            (0..fz.len()).map(|i| (i, class.factor(i).flattened().clone(), fz.factor(i).triple.clone())).collect();
        (pieces, class.is_fully_certified())
    } else {
        (vec![(0, w.clone(), triple.clone())], true)
    };
    let mut per_factor = Vec::new();
    for (factor, phrase, t) in pieces {
        let (lower, upper) = bounds(&phrase, &t, budget)?;
        per_factor.push(FactorHr { factor, phrase, lower, upper });
    }
    let upper = per_factor.iter().map(|h| h.upper).sum();
    let lower = if full {
        per_factor.iter().map(|h| h.lower).sum()
    } else {
        // The factor phrases may not be reduced, so only the phrase itself
        // gives a lower bound.
        let trivial = Nanophrase::trivial(w.num_components());
        usize::from(fingerprint(w, triple)? != fingerprint(&trivial, triple)?).min(upper)
    };
    Ok(HrReport { lower, upper, per_factor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    fn budget() -> SearchBudget {
        SearchBudget { rank_delta: 1, node_budget: 5_000 }
    }

    fn empty_s_pair() -> HomotopyDataTriple {
        parse_triple("alpha: a b c d\ntau: a<->b c<->d\nS:").unwrap()
    }

    #[test]
    fn split_contractible_word() {
        let t = empty_s_pair();
        let w = parse_phrase("A:a B:c ; AABB").unwrap();
        let c = complete_invariant(&w, &t, budget()).unwrap();
        assert_eq!(c.c_r(), 0);
        assert!(c.is_fully_certified());
        let e = complete_invariant(&Nanophrase::trivial(1), &t, budget()).unwrap();
        assert_eq!(c, e);
        assert_eq!(hr_report(&w, &t, budget()).unwrap().upper, 0);
    }

    #[test]
    fn abab_keeps_its_rank() {
        let t = empty_s_pair();
        let w = parse_phrase("A:a B:a ; ABAB").unwrap();
        let h = hr_report(&w, &t, budget()).unwrap();
        assert!(h.is_exact());
        assert_eq!(h.lower, 2);
    }

    #[test]
    fn serialization_round_trips() {
        let t = empty_s_pair();
        for text in ["A:a B:a C:c D:c E:a F:a ; ABABCDCDEFEF", "A:a B:c ; AB|AB", "; _|_"] {
            let w = parse_phrase(text).unwrap();
            let c = complete_invariant(&w, &t, budget()).unwrap();
            assert_eq!(ReducedClass::parse(&c.serialize()).unwrap(), c, "{}", c.serialize());
        }
    }

    #[test]
    fn prime_triples_are_rejected() {
        let t = HomotopyDataTriple::alpha_g();
        assert_eq!(complete_invariant(&Nanophrase::trivial(1), &t, budget()), Err(Error::PrimeTriple));
    }

    #[test]
    fn symmetry_needs_palindromic_theta() {
        let t = empty_s_pair();
        // ABAB | CDCD reduces to two components: even, so not symmetric.
        let w = parse_phrase("A:a B:a C:c D:c ; ABABCDCD").unwrap();
        let r = symmetry_obstruction(&w, &t, budget()).unwrap();
        assert!(r.symmetric.is_no() && r.skew.is_no());
        let w = parse_phrase("A:a B:a C:c D:c E:a F:a ; ABABCDCDEFEF").unwrap();
        let r = symmetry_obstruction(&w, &t, budget()).unwrap();
        assert!(r.symmetric.is_unknown());
        let w = parse_phrase("A:a B:a ; ABAB").unwrap();
        assert!(symmetry_obstruction(&w, &t, budget()).unwrap().symmetric.is_unknown());
    }
}
