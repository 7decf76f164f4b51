mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use z2square::z2_chain::{
    betti_numbers, boundary_matrix, homology, homology_report, long_exact_sequence, SimplicialPair,
};

use common::{corpus, random_pair};

fn random_pairs(count: usize, seed: u64) -> Vec<SimplicialPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p = random_pair(&mut rng, 5 + out.len() % 5, 14);
        if p.total_count() <= 300 {
            out.push(p);
        }
    }
    out
}

/// Ranks by rank-nullity on the dense boundary matrices.
fn dense_ranks(p: &SimplicialPair) -> Vec<usize> {
    (0..=p.dim())
        .map(|k| {
            let n = p.rel_count(k);
            let rank_k = if k == 0 { 0 } else { boundary_matrix(p, k).rank() };
            let rank_up = boundary_matrix(p, k + 1).rank();
            n - rank_k - rank_up
        })
        .collect()
}

#[test]
fn classical_ranks() {
    for (name, p, expected) in corpus() {
        assert_eq!(betti_numbers(&p), expected, "{name}");
        let report = homology_report(&p);
        for (k, r) in &report {
            assert_eq!(r.rank, expected[*k], "{name} degree {k}");
            assert_eq!(r.representatives.len(), r.rank);
        }
    }
}

#[test]
fn corpus_surfaces_are_closed_or_bounded_pseudomanifolds() {
    for (name, p, _) in corpus().into_iter().filter(|c| c.1.dim() == 2) {
        for e in p.simplices(1) {
            if p.simplex_in_sub(e) {
                continue;
            }
            let c = p.cofaces(e, 2).len();
            assert_eq!(c, 2, "{name}: edge {e:?}");
        }
    }
}

#[test]
fn boundary_of_boundary_vanishes() {
    for p in random_pairs(200, 1) {
        for k in 1..p.dim() {
            assert!(boundary_matrix(&p, k).mul(&boundary_matrix(&p, k + 1)).is_zero());
        }
    }
}

#[test]
fn sparse_and_dense_ranks_agree() {
    for p in random_pairs(200, 2) {
        assert_eq!(betti_numbers(&p), dense_ranks(&p));
        let chi: i64 = betti_numbers(&p).iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(chi, p.relative_euler_characteristic());
    }
}

#[test]
fn long_exact_sequence_bookkeeping() {
    for p in random_pairs(200, 3) {
        let les = long_exact_sequence(&p);
        assert!(les.exact);
        let d = &les.degrees;
        for (i, g) in d.iter().enumerate() {
            assert_eq!(g.h_total, g.rank_inclusion + g.rank_quotient);
            assert_eq!(g.h_relative, g.rank_quotient + g.rank_connecting);
            let next_connecting = d.get(i + 1).map_or(0, |n| n.rank_connecting);
            assert_eq!(g.h_sub, next_connecting + g.rank_inclusion);
            assert_eq!(g.h_relative, homology(&p, g.degree).rank());
        }
    }
}

fn shuffled(p: &SimplicialPair, seed: u64) -> SimplicialPair {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<Vec<usize>> = (0..p.count_dims()).flat_map(|k| p.simplices(k).to_vec()).collect();
    let mut sub: Vec<Vec<usize>> = all.iter().filter(|s| p.simplex_in_sub(s)).cloned().collect();
    all.shuffle(&mut rng);
    sub.shuffle(&mut rng);
    for s in all.iter_mut() {
        s.reverse();
    }
    SimplicialPair::new(p.n_vertices(), &all, &sub).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn input_order_does_not_matter(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pair(&mut rng, 6, 10);
        let q = shuffled(&p, seed ^ 0x5eed);
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(betti_numbers(&q), betti_numbers(&p));
    }

    #[test]
    fn chain_complex_identity(seed in any::<u64>(), n in 4usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_pair(&mut rng, n, 12);
        for k in 1..p.dim() {
            prop_assert!(boundary_matrix(&p, k).mul(&boundary_matrix(&p, k + 1)).is_zero());
        }
        prop_assert_eq!(betti_numbers(&p), dense_ranks(&p));
    }
}
