//! Bounded breadth-first search over the move graph.
//!
//! Nodes are canonical phrases, so isomorphic phrases collapse to one node.
//! Augmenting moves are only expanded while the rank stays within the bound.

use std::collections::HashMap;
use std::fmt;

use super::moves::{apply_move, enumerate_moves, Move};
use crate::error::Result;
use crate::hdt::HomotopyDataTriple;
use crate::phrase::Nanophrase;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchBudget {
    /// How far above the larger input rank the search may go.
    pub rank_delta: usize,
    /// Maximum number of distinct canonical phrases visited.
    pub node_budget: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { rank_delta: 2, node_budget: 200_000 }
    }
}

/// What a search that ended without an answer looked at.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BudgetReport {
    pub visited: usize,
    pub rank_bound: usize,
    /// Every phrase within the rank bound was reached, so a larger rank
    /// bound is the only way to learn more.
    pub exhausted: bool,
    pub budget: SearchBudget,
}

impl fmt::Display for BudgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "visited {} phrase(s) up to rank {} ({}; node budget {}, rank delta {})",
            self.visited,
            self.rank_bound,
            if self.exhausted { "rank-bounded space exhausted" } else { "node budget reached" },
            self.budget.node_budget,
            self.budget.rank_delta
        )
    }
}

/// Two move sequences meeting at one canonical phrase. Each move applies to
/// the canonical form of the phrase before it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MovePath {
    pub from_left: Vec<Move>,
    pub from_right: Vec<Move>,
    pub meet: Nanophrase,
}

impl MovePath {
    pub fn len(&self) -> usize {
        self.from_left.len() + self.from_right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Applies `moves` in turn to `start.canonical()`.
    pub fn replay(start: &Nanophrase, moves: &[Move], triple: &HomotopyDataTriple) -> Result<Nanophrase> {
        let mut cur = start.canonical();
        for m in moves {
            cur = apply_move(&cur, triple, m)?.canonical();
        }
        Ok(cur)
    }

    /// Both sides replay to the meeting phrase.
    pub fn verify(&self, left: &Nanophrase, right: &Nanophrase, triple: &HomotopyDataTriple) -> bool {
        let ok = |start, moves| MovePath::replay(start, moves, triple).is_ok_and(|r| r == self.meet);
        ok(left, &self.from_left) && ok(right, &self.from_right)
    }
}

impl fmt::Display for MovePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ms: &[Move]| {
            if ms.is_empty() {
                "(none)".to_string()
            } else {
                ms.iter().map(Move::to_string).collect::<Vec<_>>().join(", ")
            }
        };
        write!(f, "left: {}; right: {}; meet: {}", side(&self.from_left), side(&self.from_right), self.meet)
    }
}

/// Neighbours of a canonical phrase within the rank bound, in enumeration
/// order.
fn neighbors(p: &Nanophrase, triple: &HomotopyDataTriple, bound: usize) -> Result<Vec<(Move, Nanophrase)>> {
    let e = enumerate_moves(p, triple)?;
    let rank = p.rank();
    let mut moves: Vec<Move> = e.reducing.iter().chain(&e.braid).cloned().collect();
    if rank < bound {
        moves.extend(e.augmenting.h1());
    }
    if rank + 2 <= bound {
        moves.extend(e.augmenting.h2());
    }
    moves
        .into_iter()
        .map(|m| {
            let q = apply_move(p, triple, &m)?.canonical();
            Ok((m, q))
        })
        .collect()
}

type Parents = HashMap<Nanophrase, Option<(Nanophrase, Move)>>;

fn chain(parents: &Parents, end: &Nanophrase) -> Vec<Move> {
    let mut out = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, m))) = parents.get(cur) {
        out.push(m.clone());
        cur = prev;
    }
    out.reverse();
    out
}

fn sort_level(level: &mut Vec<Nanophrase>) {
    let mut keyed: Vec<(String, Nanophrase)> = level.drain(..).map(|p| (p.to_string(), p)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    level.extend(keyed.into_iter().map(|(_, p)| p));
}

/// Bidirectional search for a move path between `p` and `q`.
pub fn bfs_search(
    p: &Nanophrase,
    q: &Nanophrase,
    triple: &HomotopyDataTriple,
    budget: SearchBudget,
) -> Result<std::result::Result<MovePath, BudgetReport>> {
    triple.require_nonunit()?;
    triple.check_phrase(p)?;
    triple.check_phrase(q)?;
    let (p, q) = (p.canonical(), q.canonical());
    if p == q {
        return Ok(Ok(MovePath { from_left: vec![], from_right: vec![], meet: p }));
    }
    let bound = p.rank().max(q.rank()) + budget.rank_delta;
    let mut sides: [(Parents, Vec<Nanophrase>); 2] = [
        (HashMap::from([(p.clone(), None)]), vec![p.clone()]),
        (HashMap::from([(q.clone(), None)]), vec![q.clone()]),
    ];
    let report = |visited, exhausted| BudgetReport { visited, rank_bound: bound, exhausted, budget };
    loop {
        let visited = sides[0].0.len() + sides[1].0.len();
        // Either frontier dying out means its whole component is explored.
        if sides[0].1.is_empty() || sides[1].1.is_empty() {
            return Ok(Err(report(visited, true)));
        }
        let s = if sides[1].1.len() < sides[0].1.len() { 1 } else { 0 };
        let mut frontier = std::mem::take(&mut sides[s].1);
        sort_level(&mut frontier);
        let mut next = Vec::new();
        for node in frontier {
            for (m, nb) in neighbors(&node, triple, bound)? {
                if sides[s].0.contains_key(&nb) {
                    continue;
                }
                sides[s].0.insert(nb.clone(), Some((node.clone(), m)));
                if sides[1 - s].0.contains_key(&nb) {
                    let mine = chain(&sides[s].0, &nb);
                    let theirs = chain(&sides[1 - s].0, &nb);
                    let (from_left, from_right) = if s == 0 { (mine, theirs) } else { (theirs, mine) };
                    return Ok(Ok(MovePath { from_left, from_right, meet: nb }));
                }
                if sides[0].0.len() + sides[1].0.len() >= budget.node_budget {
                    return Ok(Err(report(sides[0].0.len() + sides[1].0.len(), false)));
                }
                next.push(nb);
            }
        }
        sides[s].1 = next;
    }
}

/// Result of a one-sided search from a single phrase.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exploration {
    /// Least-rank phrase seen, earliest found on ties.
    pub smallest: Nanophrase,
    /// Moves from the start to `smallest`.
    pub path: Vec<Move>,
    pub report: BudgetReport,
}

/// Explores everything reachable from `p` within the budget.
pub fn explore(p: &Nanophrase, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<Exploration> {
    triple.require_nonunit()?;
    triple.check_phrase(p)?;
    let p = p.canonical();
    let bound = p.rank() + budget.rank_delta;
    let mut parents: Parents = HashMap::from([(p.clone(), None)]);
    let mut frontier = vec![p.clone()];
    let mut smallest = p;
    let mut exhausted = true;
    'outer: while !frontier.is_empty() {
        sort_level(&mut frontier);
        let mut next = Vec::new();
        for node in std::mem::take(&mut frontier) {
            for (m, nb) in neighbors(&node, triple, bound)? {
                if parents.contains_key(&nb) {
                    continue;
                }
                parents.insert(nb.clone(), Some((node.clone(), m)));
                if nb.rank() < smallest.rank() {
                    smallest = nb.clone();
                }
                if parents.len() >= budget.node_budget {
                    exhausted = false;
                    break 'outer;
                }
                next.push(nb);
            }
        }
        frontier = next;
    }
    let path = chain(&parents, &smallest);
    Ok(Exploration { smallest, path, report: BudgetReport { visited: parents.len(), rank_bound: bound, exhausted, budget } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    #[test]
    fn aa_meets_empty_word() {
        let t = HomotopyDataTriple::alpha_g();
        let p = parse_phrase("A:a ; AA").unwrap();
        let q = Nanophrase::trivial(1);
        let path = bfs_search(&p, &q, &t, SearchBudget::default()).unwrap().unwrap();
        assert_eq!(path.len(), 1);
        assert!(path.verify(&p, &q, &t));
    }

    #[test]
    fn identical_inputs_need_no_moves() {
        let t = HomotopyDataTriple::alpha_f();
        let p = parse_phrase("A:a B:b ; AB|AB").unwrap();
        let path = bfs_search(&p, &p, &t, SearchBudget::default()).unwrap().unwrap();
        assert!(path.is_empty());
    }

    #[test]
    fn h3_needs_the_braid_move() {
        let t = parse_triple("alpha: a\nS: (a,a,a)").unwrap();
        let p = parse_phrase("A:a B:a C:a ; AB|AC|BC").unwrap();
        let q = parse_phrase("A:a B:a C:a ; BA|CA|CB").unwrap();
        let budget = SearchBudget { rank_delta: 0, node_budget: 1000 };
        let path = bfs_search(&p, &q, &t, budget).unwrap().unwrap();
        assert_eq!(path.len(), 1);
        assert!(path.verify(&p, &q, &t));
    }

    #[test]
    fn small_space_is_exhausted() {
        let t = parse_triple("alpha: a b\ntau: a<->b\nS:").unwrap();
        let p = parse_phrase("A:a B:a ; ABAB").unwrap();
        let q = Nanophrase::trivial(1);
        let budget = SearchBudget { rank_delta: 0, node_budget: 1000 };
        let report = bfs_search(&p, &q, &t, budget).unwrap().unwrap_err();
        assert!(report.exhausted);
    }

    #[test]
    fn explore_finds_lower_rank() {
        let t = HomotopyDataTriple::alpha_g();
        let p = parse_phrase("A:a B:a ; ABBA").unwrap();
        let e = explore(&p, &t, SearchBudget { rank_delta: 0, node_budget: 100 }).unwrap();
        assert_eq!(e.smallest.rank(), 0);
        assert_eq!(MovePath::replay(&p, &e.path, &t).unwrap(), e.smallest);
    }
}
