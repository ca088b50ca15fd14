//! Fixed instances shared by the benchmarks.

use localcc_core::instances::{
    complete_bipartite_random, complete_random, gap_cycle, random_signed, RandomSignedParams,
};
use localcc_core::{BipartiteSides, SignedGraph};

pub fn cycle(n: usize) -> SignedGraph {
    gap_cycle(n).expect("n >= 3")
}

pub fn weighted(n: usize, seed: u64) -> SignedGraph {
    random_signed(&RandomSignedParams::new(n, 0.5, 5), seed)
}

pub fn complete(n: usize, seed: u64) -> SignedGraph {
    complete_random(n, seed)
}

pub fn bipartite(n1: usize, n2: usize, seed: u64) -> (SignedGraph, BipartiteSides) {
    complete_bipartite_random(n1, n2, seed)
}
