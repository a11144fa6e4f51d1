//! Shared fixtures for the benchmark targets.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rand::SeedableRng as _;
use rand_chacha::ChaCha8Rng;
use reconlab::Graph;

/// Seeded Erdos-Renyi-style graph on `n` vertices with edge probability 1/2.
pub fn sample_graph(seed: u64, n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid sample")
}

/// A batch of seeded samples.
pub fn sample_graphs(count: usize, n: usize) -> Vec<Graph> {
    (0..count as u64).map(|seed| sample_graph(seed, n)).collect()
}

/// Seeded random relabeling of `g`.
pub fn sample_relabeling(seed: u64, g: &Graph) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm).expect("valid permutation")
}
