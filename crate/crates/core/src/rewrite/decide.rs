//! Three-valued deciders for homotopy equality and `i`-reducibility.
//!
//! A `Yes` carries moves that can be replayed, a `No` names an invariant
//! whose values can be recomputed, and `Unknown` says what was tried.

use std::collections::BTreeSet;
use std::fmt;

use super::normal::normal_form_with_path;
use super::search::{bfs_search, BudgetReport, MovePath, SearchBudget};
use crate::decompose::{compare_reduced, complete_invariant};
use crate::error::{Error, Result};
use crate::hdt::HomotopyDataTriple;
use crate::invariants::{render_parities, InvariantKind};
use crate::phrase::{Nanophrase, ProjectMode};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    /// Process exit status for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// Moves taking both inputs to one phrase.
    Moves(MovePath),
    /// The reduced classes of the inputs have equal `theta`, and the
    /// phrases of each factor are homotopic.
    Factorwise { theta: String, factors: Vec<(usize, Certificate)> },
}

impl Certificate {
    /// Replays the certificate. `budget` is only used to rebuild reduced
    /// classes for [`Certificate::Factorwise`].
    pub fn verify(&self, p: &Nanophrase, q: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> bool {
        match self {
            Certificate::Moves(path) => path.verify(p, q, triple),
            Certificate::Factorwise { theta, factors } => {
                let (Ok(a), Ok(b)) = (complete_invariant(p, triple, budget), complete_invariant(q, triple, budget)) else {
                    return false;
                };
                let fz = triple.factorize();
                a.theta_string() == *theta
                    && b.theta_string() == *theta
                    && factors.len() == fz.len()
                    && factors.iter().all(|(i, c)| {
                        *i < fz.len()
                            && c.verify(a.factor(*i).flattened(), b.factor(*i).flattened(), &fz.factor(*i).triple, budget)
                    })
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Moves(path) => write!(f, "{path}"),
            Certificate::Factorwise { theta, factors } => {
                write!(f, "reduced classes agree, theta {theta}")?;
                for (i, c) in factors {
                    write!(f, "\n  factor {}: {}", i + 1, c)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ObstructionKind {
    ComponentCount,
    Invariant(InvariantKind),
    /// Normal forms for empty `S`.
    NormalForm,
    /// The word of the component is not contractible.
    Word,
    /// Reduced classes over a composite triple.
    ReducedClass,
    /// `theta` of the reduced class is not palindromic of odd length.
    Symmetry,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionKind::ComponentCount => write!(f, "component count"),
            ObstructionKind::Invariant(k) => write!(f, "{k}"),
            ObstructionKind::NormalForm => write!(f, "normal form"),
            ObstructionKind::Word => write!(f, "component word"),
            ObstructionKind::ReducedClass => write!(f, "reduced class"),
            ObstructionKind::Symmetry => write!(f, "reduced theta"),
        }
    }
}

/// Evidence for a `No`: a quantity that would have to agree and does not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// For reducibility, the component looked at; for reduced classes, the
    /// factor whose phrases differ.
    pub component: Option<usize>,
    pub left: String,
    pub right: String,
    pub cause: Option<Box<Obstruction>>,
}

impl Obstruction {
    fn new(kind: ObstructionKind, left: String, right: String) -> Self {
        Obstruction { kind, component: None, left, right, cause: None }
    }

    /// Recomputes the obstruction for an equality question.
    pub fn verify_equal(&self, p: &Nanophrase, q: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> bool {
        let check = || -> Result<bool> {
            match self.kind {
                ObstructionKind::ReducedClass => {
                    let a = complete_invariant(p, triple, budget)?;
                    let b = complete_invariant(q, triple, budget)?;
                    if !a.is_fully_certified() || !b.is_fully_certified() {
                        return Ok(false);
                    }
                    if a.serialize() != self.left || b.serialize() != self.right {
                        return Ok(false);
                    }
                    if a.theta_string() != b.theta_string() {
                        return Ok(true);
                    }
                    let (Some(i), Some(cause)) = (self.component, &self.cause) else {
                        return Ok(false);
                    };
                    let fz = triple.factorize();
                    Ok(i < fz.len()
                        && cause.verify_equal(a.factor(i).flattened(), b.factor(i).flattened(), &fz.factor(i).triple, budget))
                }
                kind => {
                    let l = equality_value(kind, p, triple)?;
                    let r = equality_value(kind, q, triple)?;
                    Ok(l == self.left && r == self.right && l != r)
                }
            }
        };
        check().unwrap_or(false)
    }

    /// Recomputes the obstruction for the question whether component `i` of
    /// `p` can be emptied.
    pub fn verify_reducible(&self, p: &Nanophrase, i: usize, triple: &HomotopyDataTriple, budget: SearchBudget) -> bool {
        let Ok(q) = emptied(p, i) else {
            return false;
        };
        match (self.component, self.kind) {
            (None, _) => self.verify_equal(p, &q, triple, budget),
            (Some(j), ObstructionKind::Word) if j == i => {
                let Ok(w) = p.word(i) else { return false };
                w.to_string() == self.left
                    && self.cause.as_ref().is_some_and(|c| c.verify_equal(&w, &Nanophrase::trivial(1), triple, budget))
            }
            (Some(j), ObstructionKind::Invariant(k)) if j == i => {
                match (component_value(k, p, i, triple), component_value(k, &q, i, triple)) {
                    (Ok(l), Ok(r)) => l == self.left && r == self.right && l != r,
                    _ => false,
                }
            }
            _ => false,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.component {
            Some(i) if self.kind == ObstructionKind::ReducedClass => write!(f, "{} differs at factor {}", self.kind, i + 1)?,
            Some(i) => write!(f, "{} of component {} is not trivial", self.kind, i + 1)?,
            None => write!(f, "{} differs", self.kind)?,
        }
        let one_line = |s: &str| s.replace('\n', " / ");
        write!(f, ": {} vs {}", one_line(&self.left), one_line(&self.right))?;
        if let Some(c) = &self.cause {
            write!(f, "\n  because {c}")?;
        }
        Ok(())
    }
}

/// Why no verdict was reached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Undecided {
    pub reason: String,
    pub report: Option<BudgetReport>,
}

impl fmt::Display for Undecided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if let Some(r) = &self.report {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decision {
    Yes(Certificate),
    No(Obstruction),
    Unknown(Undecided),
}

impl Decision {
    pub fn verdict(&self) -> Verdict {
        match self {
            Decision::Yes(_) => Verdict::Yes,
            Decision::No(_) => Verdict::No,
            Decision::Unknown(_) => Verdict::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown(_))
    }

    pub(crate) fn unknown(reason: impl Into<String>, report: Option<BudgetReport>) -> Self {
        Decision::Unknown(Undecided { reason: reason.into(), report })
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Yes(c) => write!(f, "yes\n{c}"),
            Decision::No(o) => write!(f, "no\n{o}"),
            Decision::Unknown(u) => write!(f, "unknown\n{u}"),
        }
    }
}

fn equality_value(kind: ObstructionKind, p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<String> {
    match kind {
        ObstructionKind::ComponentCount => Ok(p.num_components().to_string()),
        ObstructionKind::Invariant(k) => k.render(p, triple),
        ObstructionKind::NormalForm => Ok(normal_form_with_path(p, triple)?.0.to_string()),
        _ => Err(Error::InvalidDecomposition(format!("{kind} is not an equality invariant"))),
    }
}

/// The part of an invariant that concerns component `i`.
fn component_value(kind: InvariantKind, p: &Nanophrase, i: usize, triple: &HomotopyDataTriple) -> Result<String> {
    Ok(match kind {
        InvariantKind::Parity => render_parities(&p.component_parities()[i..=i]),
        InvariantKind::Linking => {
            let m = crate::invariants::linking_matrix(p, triple)?;
            format!("({})", (0..m.size()).map(|j| m.render_entry(i, j)).collect::<Vec<_>>().join(","))
        }
        InvariantKind::V | InvariantKind::U | InvariantKind::So => {
            let all = kind.render(p, triple)?;
            let tag = match kind {
                InvariantKind::V => format!("V^{{{},", i + 1),
                InvariantKind::U => format!("U^{{{},", i + 1),
                _ => format!("B_{}:", i + 1),
            };
            let lines: Vec<&str> = all.lines().filter(|l| l.starts_with(&tag)).collect();
            if lines.is_empty() {
                "0".to_string()
            } else {
                lines.join("\n")
            }
        }
    })
}

/// `p` with every letter touching component `i` deleted.
fn emptied(p: &Nanophrase, i: usize) -> Result<Nanophrase> {
    p.project_out(&BTreeSet::from([i]), ProjectMode::Keep)
}

fn prefilter_kinds(triple: &HomotopyDataTriple) -> Vec<InvariantKind> {
    [InvariantKind::Parity, InvariantKind::Linking, InvariantKind::V, InvariantKind::U]
        .into_iter()
        .filter(|k| k.applies_to(triple))
        .collect()
}

/// The first cheap invariant telling `p` and `q` apart.
pub fn invariant_obstruction(
    p: &Nanophrase,
    q: &Nanophrase,
    triple: &HomotopyDataTriple,
) -> Result<Option<Obstruction>> {
    if p.num_components() != q.num_components() {
        let kind = ObstructionKind::ComponentCount;
        return Ok(Some(Obstruction::new(kind, equality_value(kind, p, triple)?, equality_value(kind, q, triple)?)));
    }
    for k in prefilter_kinds(triple) {
        let (l, r) = (k.render(p, triple)?, k.render(q, triple)?);
        if l != r {
            return Ok(Some(Obstruction::new(ObstructionKind::Invariant(k), l, r)));
        }
    }
    Ok(None)
}

fn prepare(p: &Nanophrase, q: &Nanophrase, triple: &HomotopyDataTriple) -> Result<()> {
    triple.require_nonunit()?;
    triple.check_phrase(p)?;
    triple.check_phrase(q)
}

/// Invariant prefilter followed by bidirectional search. Never answers `No`
/// from the search alone.
pub fn bfs_equivalent(
    p: &Nanophrase,
    q: &Nanophrase,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<Decision> {
    prepare(p, q, triple)?;
    if let Some(o) = invariant_obstruction(p, q, triple)? {
        return Ok(Decision::No(o));
    }
    Ok(match bfs_search(p, q, triple, budget)? {
        Ok(path) => Decision::Yes(Certificate::Moves(path)),
        Err(report) => Decision::unknown("no move path found", Some(report)),
    })
}

/// Decides whether `p` and `q` are homotopic over `triple`.
pub fn decide_equal(
    p: &Nanophrase,
    q: &Nanophrase,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<Decision> {
    prepare(p, q, triple)?;
    if p.num_components() != q.num_components() {
        return Ok(Decision::No(invariant_obstruction(p, q, triple)?.expect("component counts differ")));
    }
    let (cp, cq) = (p.canonical(), q.canonical());
    if cp == cq {
        return Ok(Decision::Yes(Certificate::Moves(MovePath { from_left: vec![], from_right: vec![], meet: cp })));
    }
    if triple.s_is_empty() {
        let (np, lp) = normal_form_with_path(p, triple)?;
        let (nq, lq) = normal_form_with_path(q, triple)?;
        return Ok(if np == nq {
            Decision::Yes(Certificate::Moves(MovePath { from_left: lp, from_right: lq, meet: np }))
        } else {
            Decision::No(Obstruction::new(ObstructionKind::NormalForm, np.to_string(), nq.to_string()))
        });
    }
    if let Some(o) = invariant_obstruction(p, q, triple)? {
        return Ok(Decision::No(o));
    }
    if triple.factorize().len() >= 2 {
        let a = complete_invariant(p, triple, budget)?;
        let b = complete_invariant(q, triple, budget)?;
        let d = compare_reduced(&a, &b, triple, budget)?;
        if !d.is_unknown() {
            return Ok(d);
        }
    }
    Ok(match bfs_search(p, q, triple, budget)? {
        Ok(path) => Decision::Yes(Certificate::Moves(path)),
        Err(report) => Decision::unknown("invariants agree and no move path found", Some(report)),
    })
}

/// Decides whether component `i` (0-based) of `p` can be emptied by a
/// homotopy. A `Yes` certificate links `p` to `p` with every letter of
/// component `i` deleted.
pub fn decide_reducible(
    p: &Nanophrase,
    i: usize,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<Decision> {
    let n = p.num_components();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    prepare(p, p, triple)?;
    let q = emptied(p, i)?;
    for k in prefilter_kinds(triple) {
        let (l, r) = (component_value(k, p, i, triple)?, component_value(k, &q, i, triple)?);
        if l != r {
            return Ok(Decision::No(Obstruction {
                kind: ObstructionKind::Invariant(k),
                component: Some(i),
                left: l,
                right: r,
                cause: None,
            }));
        }
    }
    if !triple.s_is_empty() {
        let w = p.word(i)?;
        if w.rank() > 0 {
            if let Decision::No(o) = decide_equal(&w, &Nanophrase::trivial(1), triple, budget)? {
                return Ok(Decision::No(Obstruction {
                    kind: ObstructionKind::Word,
                    component: Some(i),
                    left: w.to_string(),
                    right: Nanophrase::trivial(1).to_string(),
                    cause: Some(Box::new(o)),
                }));
            }
        }
    }
    decide_equal(p, &q, triple, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    fn budget() -> SearchBudget {
        SearchBudget { rank_delta: 2, node_budget: 20_000 }
    }

    #[test]
    fn aa_is_trivial() {
        let t = HomotopyDataTriple::alpha_g();
        let p = parse_phrase("A:a ; AA").unwrap();
        let q = Nanophrase::trivial(1);
        let d = decide_equal(&p, &q, &t, budget()).unwrap();
        let Decision::Yes(c) = &d else { panic!("{d}") };
        assert!(c.verify(&p, &q, &t, budget()));
    }

    #[test]
    fn parity_separates() {
        let p = parse_phrase("A:a B:a C:a ; ABC|A|B|C").unwrap();
        for t in [HomotopyDataTriple::alpha_g(), parse_triple("alpha: a\nS:").unwrap()] {
            let q = Nanophrase::trivial(4);
            let d = bfs_equivalent(&p, &q, &t, budget()).unwrap();
            let Decision::No(o) = &d else { panic!("{d}") };
            assert_eq!(o.kind, ObstructionKind::Invariant(InvariantKind::Parity));
            assert!(o.verify_equal(&p, &q, &t, budget()));
            for i in 0..4 {
                let d = decide_reducible(&p, i, &t, budget()).unwrap();
                let Decision::No(o) = &d else { panic!("{d}") };
                assert!(o.verify_reducible(&p, i, &t, budget()));
            }
        }
    }

    #[test]
    fn linking_row_blocks_reduction() {
        let t = parse_triple("alpha: a b c\nS: diagonal").unwrap();
        let p = parse_phrase("A:a B:b C:c ; ABC|AC|B").unwrap();
        for i in [0, 2] {
            let d = decide_reducible(&p, i, &t, budget()).unwrap();
            let Decision::No(o) = &d else { panic!("{d}") };
            assert!(o.kind == ObstructionKind::Invariant(InvariantKind::Linking) || o.kind == ObstructionKind::Invariant(InvariantKind::Parity));
            assert!(o.verify_reducible(&p, i, &t, budget()));
        }
    }

    #[test]
    fn empty_s_reducibility_uses_normal_form() {
        let t = parse_triple("alpha: a b\ntau: a<->b\nS:").unwrap();
        let p = parse_phrase("A:a B:b ; AA|BB").unwrap();
        for i in 0..2 {
            let d = decide_reducible(&p, i, &t, budget()).unwrap();
            let Decision::Yes(c) = &d else { panic!("{d}") };
            let q = emptied(&p, i).unwrap();
            assert!(c.verify(&p, &q, &t, budget()));
        }
        let abab = parse_phrase("A:a B:a ; ABAB").unwrap();
        let d = decide_equal(&abab, &Nanophrase::trivial(1), &t, budget()).unwrap();
        let Decision::No(o) = &d else { panic!("{d}") };
        assert_eq!(o.kind, ObstructionKind::NormalForm);
        assert!(o.verify_equal(&abab, &Nanophrase::trivial(1), &t, budget()));
    }

    #[test]
    fn v_separates_with_trivial_linking() {
        let t = parse_triple("alpha: a b c\ntau: a<->b\nS: (a,b,c) (c,b,a)").unwrap();
        let p = parse_phrase("A:a D:a B:b E:c F:b G:c C:c ; ADBAEBFG|CDCF|EG").unwrap();
        let q = Nanophrase::trivial(3);
        let d = decide_equal(&p, &q, &t, budget()).unwrap();
        let Decision::No(o) = &d else { panic!("{d}") };
        assert_eq!(o.kind, ObstructionKind::Invariant(InvariantKind::V));
        for i in 0..2 {
            let d = decide_reducible(&p, i, &t, budget()).unwrap();
            let Decision::No(o) = &d else { panic!("{d}") };
            assert_eq!(o.kind, ObstructionKind::Invariant(InvariantKind::V));
            assert!(o.verify_reducible(&p, i, &t, budget()));
        }
    }

    #[test]
    fn u_separates_equal_linking() {
        let t = parse_triple("alpha: a b c d\ntau: a<->b c<->d\nS: diagonal").unwrap();
        let p = parse_phrase("A:a C:a D:d E:a B:c F:d ; ACDEABFB|CE|DF").unwrap();
        let q = parse_phrase("C:a D:d E:a F:d ; CDEF|CE|DF").unwrap();
        let d = decide_equal(&p, &q, &t, budget()).unwrap();
        let Decision::No(o) = &d else { panic!("{d}") };
        // V is checked first and already differs here; U differs as well.
        assert!(matches!(o.kind, ObstructionKind::Invariant(InvariantKind::V | InvariantKind::U)));
        assert!(o.verify_equal(&p, &q, &t, budget()));
        let u = |x: &Nanophrase| InvariantKind::U.render(x, &t).unwrap();
        assert_ne!(u(&p), u(&q));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Yes.exit_code(), 0);
        assert_eq!(Verdict::No.exit_code(), 1);
        assert_eq!(Verdict::Unknown.exit_code(), 2);
    }
}
