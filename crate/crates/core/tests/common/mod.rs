#![allow(dead_code)]

use arcpack::Digraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Uniform pairing of out-stubs with in-stubs, rejecting loops.
pub fn random_regular(n: usize, k: usize, rng: &mut impl Rng) -> Digraph {
    loop {
        let tails: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
        let mut heads = tails.clone();
        heads.shuffle(rng);
        if tails.iter().zip(&heads).all(|(u, v)| u != v) {
            let arcs: Vec<_> = tails.into_iter().zip(heads).collect();
            return Digraph::new(n, &arcs).unwrap();
        }
    }
}

/// `m` arcs with independent uniform distinct endpoints.
pub fn random_multidigraph(n: usize, m: usize, rng: &mut impl Rng) -> Digraph {
    let arcs: Vec<_> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    Digraph::new(n, &arcs).unwrap()
}

/// Random composition of `k` into `n` non-negative parts.
pub fn random_counts(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut counts = vec![0; n];
    for _ in 0..k {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts
}
