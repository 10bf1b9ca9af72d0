//! Small censuses: enumerate canonical phrases, bucket them by invariant
//! fingerprint, then merge classes inside a bucket when a decider certifies
//! a homotopy.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;

use crate::error::{Error, Result};
use crate::generate::enumerate_phrases;
use crate::hdt::HomotopyDataTriple;
use crate::invariants::fingerprint;
use crate::phrase::Nanophrase;
use crate::rewrite::{decide_equal, SearchBudget};

/// Largest rank tabulated without `force`.
pub const DEFAULT_MAX_RANK: usize = 5;

/// Phrases known to be pairwise homotopic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    /// Sorted by rank, then by rendering. The first is the representative.
    pub members: Vec<Nanophrase>,
}

impl CensusClass {
    pub fn representative(&self) -> &Nanophrase {
        &self.members[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusBucket {
    pub fingerprint: String,
    pub classes: Vec<CensusClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub max_rank: usize,
    pub components: usize,
    pub phrases: usize,
    /// Sorted by the rendering of the first representative.
    pub buckets: Vec<CensusBucket>,
}

impl Census {
    pub fn num_classes(&self) -> usize {
        self.buckets.iter().map(|b| b.classes.len()).sum()
    }

    /// One tab-separated line per class: fingerprint, representative,
    /// member count.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for b in &self.buckets {
            for c in &b.classes {
                out.push_str(&format!("{}\t{}\t{}\n", b.fingerprint, c.representative(), c.members.len()));
            }
        }
        out
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} phrase(s) up to rank {} with {} component(s): {} bucket(s), {} class(es)",
            self.phrases,
            self.max_rank,
            self.components,
            self.buckets.len(),
            self.num_classes()
        )?;
        for b in &self.buckets {
            writeln!(f, "[{}]", b.fingerprint)?;
            for c in &b.classes {
                write!(f, "  {}", c.representative())?;
                if c.members.len() > 1 {
                    write!(f, "  (+{} homotopic)", c.members.len() - 1)?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn sort_key(p: &Nanophrase) -> (usize, String) {
    (p.rank(), p.to_string())
}

fn workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Runs `f` over `items` in contiguous chunks on scoped threads and
/// concatenates the results in input order.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let chunk = items.len().div_ceil(workers()).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<U>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Greedy merge: each phrase joins the first class whose representative it
/// is certified homotopic to.
fn merge(members: Vec<Nanophrase>, triple: &HomotopyDataTriple, budget: SearchBudget) -> Result<Vec<CensusClass>> {
    let mut classes: Vec<CensusClass> = Vec::new();
    'outer: for p in members {
        for c in classes.iter_mut() {
            if decide_equal(c.representative(), &p, triple, budget)?.is_yes() {
                c.members.push(p);
                continue 'outer;
            }
        }
        classes.push(CensusClass { members: vec![p] });
    }
    Ok(classes)
}

/// Tabulates every canonical phrase of rank at most `max_rank` with the
/// given number of components. Ranks above [`DEFAULT_MAX_RANK`] need
/// `force`.
pub fn tabulate(
    triple: &HomotopyDataTriple,
    max_rank: usize,
    components: usize,
    force: bool,
    budget: SearchBudget,
) -> Result<Census> {
    if max_rank > DEFAULT_MAX_RANK && !force {
        return Err(Error::BudgetRefused { max_rank, limit: DEFAULT_MAX_RANK });
    }
    triple.require_nonunit()?;
    let mut phrases: Vec<Nanophrase> = (0..=max_rank).flat_map(|r| enumerate_phrases(triple, r, components)).collect();
    phrases.sort_by_cached_key(sort_key);
    let prints = par_map(&phrases, |p| fingerprint(p, triple));
    let total = phrases.len();

    let mut by_print: BTreeMap<String, Vec<Nanophrase>> = BTreeMap::new();
    for (p, fp) in phrases.into_iter().zip(prints) {
        by_print.entry(fp?).or_default().push(p);
    }
    let groups: Vec<(String, Vec<Nanophrase>)> = by_print.into_iter().collect();
    let merged = par_map(&groups, |(fp, members)| {
        merge(members.clone(), triple, budget).map(|classes| CensusBucket { fingerprint: fp.clone(), classes })
    });
    let mut buckets = merged.into_iter().collect::<Result<Vec<_>>>()?;
    buckets.sort_by_cached_key(|b| sort_key(b.classes[0].representative()));
    Ok(Census { max_rank, components, phrases: total, buckets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_is_one_row() {
        let c = tabulate(&HomotopyDataTriple::alpha_g(), 0, 1, false, SearchBudget::default()).unwrap();
        assert_eq!(c.phrases, 1);
        assert_eq!(c.num_classes(), 1);
    }

    #[test]
    fn contractible_letter_merges_with_empty() {
        let c = tabulate(&HomotopyDataTriple::alpha_g(), 1, 1, false, SearchBudget::default()).unwrap();
        assert_eq!(c.phrases, 2);
        assert_eq!(c.buckets.len(), 1);
        assert_eq!(c.buckets[0].classes.len(), 1);
        assert_eq!(c.buckets[0].classes[0].members.len(), 2);
        assert_eq!(c.buckets[0].classes[0].representative(), &Nanophrase::trivial(1));
    }

    #[test]
    fn guard_refuses_large_ranks() {
        let t = HomotopyDataTriple::alpha_g();
        assert!(matches!(
            tabulate(&t, 6, 1, false, SearchBudget::default()),
            Err(Error::BudgetRefused { max_rank: 6, limit: 5 })
        ));
    }

    #[test]
    fn output_is_deterministic() {
        let t = HomotopyDataTriple::alpha_f();
        let a = tabulate(&t, 2, 1, false, SearchBudget::default()).unwrap();
        let b = tabulate(&t, 2, 1, false, SearchBudget::default()).unwrap();
        assert_eq!(a.to_lines(), b.to_lines());
        let lines = a.to_lines();
        assert_eq!(lines.lines().count(), a.num_classes());
    }
}
