//! Property tests: moves preserve every invariant and can be undone, and
//! reduction with empty `S` ends in one normal form whatever the order.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nanophrase::generate::{diagonal_triple, random_move, random_phrase, random_triple};
use nanophrase::invariants::{fingerprint, so_invariant};
use nanophrase::rewrite::{apply_move, inverse_move, normal_form, reduce_with};
use nanophrase::HomotopyDataTriple;

fn triple_for(kind: u8, rng: &mut ChaCha8Rng) -> HomotopyDataTriple {
    match kind {
        0 => random_triple(rng, 3, 0.2),
        1 => diagonal_triple(1, 1),
        2 => diagonal_triple(2, 1),
        _ => random_triple(rng, 4, 0.05),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moves_are_invertible_and_preserve_invariants(
        seed in any::<u64>(),
        kind in 0u8..4,
        rank in 0usize..6,
        comps in 1usize..4,
        steps in 1usize..6,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = triple_for(kind, &mut rng);
        let mut p = random_phrase(&mut rng, &t, rank, comps);
        let print = fingerprint(&p, &t).unwrap();
        let so = t.is_diagonal().then(|| so_invariant(&p, &t).unwrap());
        for _ in 0..steps {
            let Some(m) = random_move(&mut rng, &p, &t, true).unwrap() else { break };
            let q = apply_move(&p, &t, &m).unwrap();
            let back = apply_move(&q, &t, &inverse_move(&p, &m).unwrap()).unwrap();
            prop_assert_eq!(back.canonical(), p.canonical(), "move {} on {}", m, p);
            prop_assert_eq!(&fingerprint(&q, &t).unwrap(), &print);
            if let Some(so) = &so {
                prop_assert_eq!(&so_invariant(&q, &t).unwrap(), so);
            }
            p = q.canonical();
        }
    }

    #[test]
    fn empty_s_normal_form_ignores_order(
        seed in any::<u64>(),
        size in 1usize..4,
        rank in 0usize..8,
        comps in 1usize..4,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triple(&mut rng, size, 0.0);
        let p = random_phrase(&mut rng, &t, rank, comps);
        let nf = normal_form(&p, &t).unwrap();
        for _ in 0..5 {
            let (other, path) = reduce_with(&p, &t, |sites| sites.choose(&mut rng).cloned()).unwrap();
            prop_assert_eq!(&other, &nf);
            let dropped: isize = path.iter().map(|m| -m.rank_change()).sum();
            prop_assert_eq!(dropped, (p.rank() - nf.rank()) as isize);
        }
    }
}
