//! Enumeration and random generation of phrases, moves and triples.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::hdt::HomotopyDataTriple;
use crate::phrase::{Letter, Nanophrase, Symbol};
use crate::rewrite::{enumerate_moves, Move};

/// Every Gauss word of the given rank with letters numbered `1, 2, ...` by
/// first occurrence. There are `(2n - 1)!!` of them.
pub fn gauss_words(rank: usize) -> Vec<Vec<u32>> {
    fn go(word: &mut Vec<u32>, open: &mut Vec<u32>, next: u32, rank: u32, out: &mut Vec<Vec<u32>>) {
        if word.len() == 2 * rank as usize {
            out.push(word.clone());
            return;
        }
        if next <= rank {
            word.push(next);
            open.push(next);
            go(word, open, next + 1, rank, out);
            open.pop();
            word.pop();
        }
        for k in 0..open.len() {
            let l = open.remove(k);
            word.push(l);
            go(word, open, next, rank, out);
            word.pop();
            open.insert(k, l);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), 1, rank as u32, &mut out);
    out
}

/// Ways to cut a word of length `len` into `parts` consecutive pieces,
/// given as piece lengths.
fn compositions(len: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if len == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![len]];
    }
    let mut out = Vec::new();
    for first in 0..=len {
        for mut rest in compositions(len - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn build(word: &[u32], cuts: &[usize], symbols: &[Symbol]) -> Nanophrase {
    let mut comps = Vec::with_capacity(cuts.len());
    let mut at = 0;
    for &len in cuts {
        comps.push(word[at..at + len].iter().map(|&l| Letter(l)).collect());
        at += len;
    }
    let projection = symbols.iter().enumerate().map(|(k, s)| (Letter(k as u32 + 1), s.clone())).collect();
    Nanophrase::new(comps, projection).expect("generated phrases are Gauss")
}

/// Every canonical phrase of exactly this rank and component count with
/// every assignment of symbols, in a fixed order.
pub fn enumerate_phrases(triple: &HomotopyDataTriple, rank: usize, components: usize) -> Vec<Nanophrase> {
    let alpha = triple.alpha();
    let mut out = Vec::new();
    if rank > 0 && (alpha.is_empty() || components == 0) {
        return out;
    }
    for word in gauss_words(rank) {
        for cuts in compositions(2 * rank, components) {
            let mut choice = vec![0usize; rank];
            loop {
                let symbols: Vec<Symbol> = choice.iter().map(|&i| alpha[i].clone()).collect();
                out.push(build(&word, &cuts, &symbols));
                // Odometer over symbol choices.
                let mut k = 0;
                while k < rank {
                    choice[k] += 1;
                    if choice[k] < alpha.len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == rank {
                    break;
                }
            }
        }
    }
    out
}

/// A random canonical phrase of the given rank and component count.
pub fn random_phrase<R: Rng>(rng: &mut R, triple: &HomotopyDataTriple, rank: usize, components: usize) -> Nanophrase {
    let mut word: Vec<u32> = (1..=rank as u32).flat_map(|l| [l, l]).collect();
    word.shuffle(rng);
    let mut cuts = vec![0usize; components.max(1)];
    for _ in 0..word.len() {
        let k = rng.gen_range(0..cuts.len());
        cuts[k] += 1;
    }
    if components == 0 {
        return Nanophrase::empty();
    }
    let symbols: Vec<Symbol> = (0..rank).map(|_| triple.alpha()[rng.gen_range(0..triple.len())].clone()).collect();
    build(&word, &cuts, &symbols).canonical()
}

/// A random phrase with rank and component count drawn from the ranges.
pub fn random_phrase_in<R: Rng>(
    rng: &mut R,
    triple: &HomotopyDataTriple,
    ranks: std::ops::RangeInclusive<usize>,
    components: std::ops::RangeInclusive<usize>,
) -> Nanophrase {
    let r = rng.gen_range(ranks);
    let c = rng.gen_range(components);
    random_phrase(rng, triple, r, c)
}

/// A uniformly chosen move among reducing, braid and (if allowed)
/// augmenting moves, first picking the kind of move.
pub fn random_move<R: Rng>(rng: &mut R, p: &Nanophrase, triple: &HomotopyDataTriple, augment: bool) -> Result<Option<Move>> {
    let e = enumerate_moves(p, triple)?;
    let mut pools: Vec<u8> = Vec::new();
    if !e.reducing.is_empty() {
        pools.push(0);
    }
    if !e.braid.is_empty() {
        pools.push(1);
    }
    if augment && p.num_components() > 0 {
        pools.push(2);
        pools.push(3);
    }
    let Some(&pool) = pools.choose(rng) else {
        return Ok(None);
    };
    Ok(Some(match pool {
        0 => e.reducing.choose(rng).cloned().expect("non-empty"),
        1 => e.braid.choose(rng).cloned().expect("non-empty"),
        2 => e.augmenting.h1().nth(rng.gen_range(0..e.augmenting.count_h1())).expect("in range"),
        _ => e.augmenting.h2().nth(rng.gen_range(0..e.augmenting.count_h2())).expect("in range"),
    }))
}

/// A random triple on `size` symbols named `s0, s1, ...` with a random
/// involution and each candidate triple in `S` kept with probability
/// `density`.
pub fn random_triple<R: Rng>(rng: &mut R, size: usize, density: f64) -> HomotopyDataTriple {
    let names: Vec<Symbol> = (0..size).map(|i| Symbol::new(&format!("s{i}"))).collect();
    let mut tau: Vec<usize> = (0..size).collect();
    let mut free: Vec<usize> = (0..size).collect();
    free.shuffle(rng);
    while free.len() >= 2 {
        let a = free.pop().expect("len >= 2");
        if rng.gen_bool(0.5) {
            let b = free.pop().expect("len >= 1");
            tau[a] = b;
            tau[b] = a;
        }
    }
    let mut s = BTreeSet::new();
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if rng.gen_bool(density) {
                    s.insert((a, b, c));
                }
            }
        }
    }
    HomotopyDataTriple::new(names, tau, s).expect("valid by construction")
}

/// A random prime triple on at most `max_size` symbols: a random involution
/// whose orbits are tied together by entries of `S`.
pub fn random_prime<R: Rng>(rng: &mut R, max_size: usize) -> HomotopyDataTriple {
    loop {
        let size = rng.gen_range(1..=max_size.max(1));
        let mut t = random_triple(rng, size, 0.0);
        let orbits = t.orbits();
        let mut s: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let pick = |rng: &mut R, o: &crate::hdt::Orbit| match o.partner {
            Some(p) if rng.gen_bool(0.5) => p,
            _ => o.rep,
        };
        for w in orbits.windows(2) {
            let (x, y) = (pick(rng, &w[0]), pick(rng, &w[1]));
            let o = rng.gen_range(0..orbits.len());
            let z = pick(rng, &orbits[o]);
            s.insert((x, y, z));
        }
        for _ in 0..rng.gen_range(0..3) {
            let r = |rng: &mut R| rng.gen_range(0..size);
            s.insert((r(rng), r(rng), r(rng)));
        }
        t = HomotopyDataTriple::new(t.alpha().to_vec(), (0..size).map(|i| t.tau(i)).collect(), s).expect("valid");
        if t.is_prime() {
            return t;
        }
    }
}

/// A random diagonal triple with `fixed` fixed points and `pairs` swapped
/// pairs.
pub fn diagonal_triple(fixed: usize, pairs: usize) -> HomotopyDataTriple {
    let mut names: Vec<String> = (0..fixed).map(|i| format!("g{i}")).collect();
    let mut tau_pairs = Vec::new();
    for i in 0..pairs {
        names.push(format!("f{i}"));
        names.push(format!("h{i}"));
        tau_pairs.push((format!("f{i}"), format!("h{i}")));
    }
    let alpha: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = tau_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    HomotopyDataTriple::with_diagonal(&alpha, &pairs).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn double_factorial(n: usize) -> usize {
        (1..=n).rev().step_by(2).product()
    }

    #[test]
    fn gauss_word_counts() {
        for n in 0..6 {
            assert_eq!(gauss_words(n).len(), double_factorial(2 * n.max(1) - 1).max(1), "rank {n}");
        }
        assert_eq!(gauss_words(3).len(), 15);
        let words: BTreeSet<_> = gauss_words(4).into_iter().collect();
        assert_eq!(words.len(), 105);
    }

    #[test]
    fn enumerated_phrases_are_canonical() {
        let t = HomotopyDataTriple::alpha_f();
        let ps = enumerate_phrases(&t, 2, 2);
        // 3 words, 5 ways to cut 4 letters in two, 4 symbol choices.
        assert_eq!(ps.len(), 3 * 5 * 4);
        assert!(ps.iter().all(|p| *p == p.canonical()));
        assert_eq!(enumerate_phrases(&t, 0, 1), vec![Nanophrase::trivial(1)]);
    }

    #[test]
    fn random_primes_are_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(random_prime(&mut rng, 4).is_prime());
        }
    }

    #[test]
    fn random_moves_apply() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = HomotopyDataTriple::alpha_f();
        for _ in 0..50 {
            let p = random_phrase(&mut rng, &t, 3, 2);
            if let Some(m) = random_move(&mut rng, &p, &t, true).unwrap() {
                crate::rewrite::apply_move(&p, &t, &m).unwrap();
            }
        }
    }
}
