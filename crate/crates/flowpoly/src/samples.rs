//! Random test instances: connected multigraphs with unique source and sink.

use crate::digraph::Multigraph;
use rand::Rng;

/// A random loopless multigraph on {0..n+1} with n <= max_internal, at most
/// max_edges edges, every internal vertex on some route, a unique source 0,
/// and a unique sink n+1. Rejection-samples until valid.
pub fn random_connected_graph<R: Rng>(rng: &mut R, max_internal: usize, max_edges: usize) -> Multigraph {
    loop {
        let n = rng.random_range(1..=max_internal);
        let m = rng.random_range(n + 1..=max_edges.max(n + 1));
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let t = rng.random_range(0..=n);
            let h = rng.random_range(t + 1..=n + 1);
            edges.push((t, h));
        }
        let g = Multigraph::new(n, edges).expect("sampled edges are valid");
        if g.has_unique_source_sink() {
            return g;
        }
    }
}
