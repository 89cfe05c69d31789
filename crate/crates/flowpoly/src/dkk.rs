//! Framed-graph machinery: per-vertex edge orders, route coherence, maximal
//! cliques of coherent routes (the top simplices of the associated
//! triangulation), the prefix-multiplicity map from cliques to integer
//! flows, and the flow bijection obtained by reversing the framed graph.

use crate::digraph::{reverse, EdgeId, Multigraph};
use crate::error::{Error, Result};
use crate::flows::{routes, IntegerFlow, Route};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashSet;

/// Per-vertex total orders on incoming and outgoing EdgeIds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framing {
    in_order: Vec<Vec<EdgeId>>,
    out_order: Vec<Vec<EdgeId>>,
}

impl Framing {
    pub fn new(g: &Multigraph, in_order: Vec<Vec<EdgeId>>, out_order: Vec<Vec<EdgeId>>) -> Result<Self> {
        let nv = g.vertex_count();
        if in_order.len() != nv || out_order.len() != nv {
            return Err(Error::InvalidParameter(format!(
                "framing needs one in/out order per vertex (expected {nv})"
            )));
        }
        for v in 0..nv {
            let mut expected = g.in_edges(v);
            let mut got = in_order[v].clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(Error::InvalidParameter(format!(
                    "in-order at vertex {v} is not a permutation of its incoming edges"
                )));
            }
            let mut expected = g.out_edges(v);
            let mut got = out_order[v].clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(Error::InvalidParameter(format!(
                    "out-order at vertex {v} is not a permutation of its outgoing edges"
                )));
            }
        }
        Ok(Self { in_order, out_order })
    }

    /// Orders in(v) and out(v) by (opposite endpoint, EdgeId).
    pub fn default_for(g: &Multigraph) -> Framing {
        let nv = g.vertex_count();
        let mut in_order = Vec::with_capacity(nv);
        let mut out_order = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut ins = g.in_edges(v);
            ins.sort_by_key(|&e| (g.edge(e).0, e));
            in_order.push(ins);
            let mut outs = g.out_edges(v);
            outs.sort_by_key(|&e| (g.edge(e).1, e));
            out_order.push(outs);
        }
        Framing { in_order, out_order }
    }

    /// A uniformly shuffled framing, for sweeping over framing choices.
    pub fn random<R: Rng>(g: &Multigraph, rng: &mut R) -> Framing {
        let mut framing = Framing::default_for(g);
        for v in 0..g.vertex_count() {
            framing.in_order[v].shuffle(rng);
            framing.out_order[v].shuffle(rng);
        }
        framing
    }

    pub fn in_order(&self, v: usize) -> &[EdgeId] {
        &self.in_order[v]
    }

    pub fn out_order(&self, v: usize) -> &[EdgeId] {
        &self.out_order[v]
    }

    pub fn in_rank(&self, v: usize, e: EdgeId) -> usize {
        self.in_order[v].iter().position(|&x| x == e).expect("edge in order")
    }

    pub fn out_rank(&self, v: usize, e: EdgeId) -> usize {
        self.out_order[v].iter().position(|&x| x == e).expect("edge in order")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("framing serialization cannot fail")
    }

    pub fn from_json(g: &Multigraph, s: &str) -> Result<Self> {
        let raw: Framing = serde_json::from_str(s)?;
        Framing::new(g, raw.in_order, raw.out_order)
    }
}

/// The induced framing on reverse(g): in and out orders swap through the
/// vertex relabeling v -> n+1-v (EdgeIds carry over positionally).
pub fn reverse_framing(g: &Multigraph, fr: &Framing) -> Framing {
    let nv = g.vertex_count();
    let mut in_order = vec![Vec::new(); nv];
    let mut out_order = vec![Vec::new(); nv];
    for v in 0..nv {
        in_order[nv - 1 - v] = fr.out_order[v].clone();
        out_order[nv - 1 - v] = fr.in_order[v].clone();
    }
    Framing { in_order, out_order }
}

/// A set of pairwise-coherent routes.
pub type Clique = Vec<Route>;

/// Position of vertex v inside the route, as the index of the edge entering
/// it (None when v is the route's start).
fn entry_position(g: &Multigraph, route: &Route, v: usize) -> Option<usize> {
    route.iter().position(|&e| g.edge(e).1 == v)
}

fn route_visits(g: &Multigraph, route: &Route, v: usize) -> bool {
    v == 0 || entry_position(g, route, v).is_some()
}

/// Compares the prefixes of r and q ending at their shared vertex v, per the
/// in-order at the first divergence point scanning backward.
fn compare_in(g: &Multigraph, fr: &Framing, r: &Route, q: &Route, v: usize) -> Ordering {
    let rp = entry_position(g, r, v).expect("r passes through v");
    let qp = entry_position(g, q, v).expect("q passes through v");
    let mut i = rp as i64;
    let mut j = qp as i64;
    while i >= 0 && j >= 0 {
        let (er, eq) = (r[i as usize], q[j as usize]);
        if er != eq {
            let join = g.edge(er).1;
            debug_assert_eq!(join, g.edge(eq).1);
            return fr.in_rank(join, er).cmp(&fr.in_rank(join, eq));
        }
        i -= 1;
        j -= 1;
    }
    debug_assert!(i < 0 && j < 0, "distinct maximal prefixes cannot nest");
    Ordering::Equal
}

/// Compares the suffixes of r and q starting at their shared vertex v, per
/// the out-order at the first divergence point scanning forward.
fn compare_out(g: &Multigraph, fr: &Framing, r: &Route, q: &Route, v: usize) -> Ordering {
    let rp = match entry_position(g, r, v) {
        Some(p) => p + 1,
        None => 0,
    };
    let qp = match entry_position(g, q, v) {
        Some(p) => p + 1,
        None => 0,
    };
    let mut i = rp;
    let mut j = qp;
    while i < r.len() && j < q.len() {
        let (er, eq) = (r[i], q[j]);
        if er != eq {
            let join = g.edge(er).0;
            debug_assert_eq!(join, g.edge(eq).0);
            return fr.out_rank(join, er).cmp(&fr.out_rank(join, eq));
        }
        i += 1;
        j += 1;
    }
    debug_assert!(i >= r.len() && j >= q.len());
    Ordering::Equal
}

/// Routes are coherent when, at every shared internal vertex, their
/// prefixes and suffixes compare consistently (ties on either side never
/// conflict).
pub fn coherent(g: &Multigraph, fr: &Framing, r: &Route, q: &Route) -> bool {
    for v in 1..=g.internal_count() {
        if !route_visits(g, r, v) || !route_visits(g, q, v) {
            continue;
        }
        let cin = compare_in(g, fr, r, q, v);
        let cout = compare_out(g, fr, r, q, v);
        if cin != Ordering::Equal && cout != Ordering::Equal && cin != cout {
            return false;
        }
    }
    true
}

/// All maximal cliques of the route-coherence graph, deterministically
/// ordered. Uses pivoting Bron-Kerbosch over bitsets; routes are
/// precomputed in lexicographic order.
pub fn max_cliques(g: &Multigraph, fr: &Framing) -> Result<Vec<Clique>> {
    let all_routes = routes(g)?;
    let m = all_routes.len();
    let words = m.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            if coherent(g, fr, &all_routes[i], &all_routes[j]) {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }

    struct Bk<'a> {
        adj: &'a [Vec<u64>],
        words: usize,
        cliques: Vec<Vec<usize>>,
    }

    impl Bk<'_> {
        fn run(&mut self, r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>) {
            if p.iter().all(|&w| w == 0) && x.iter().all(|&w| w == 0) {
                self.cliques.push(r.clone());
                return;
            }
            // pivot: vertex of P | X with most neighbors in P
            let mut pivot = None;
            let mut best = usize::MAX;
            for word in 0..self.words {
                let mut candidates = p[word] | x[word];
                while candidates != 0 {
                    let bit = candidates.trailing_zeros() as usize;
                    candidates &= candidates - 1;
                    let u = word * 64 + bit;
                    let missing = (0..self.words)
                        .map(|w| (p[w] & !self.adj[u][w]).count_ones() as usize)
                        .sum::<usize>();
                    if missing < best {
                        best = missing;
                        pivot = Some(u);
                    }
                }
            }
            let pivot = pivot.expect("p or x nonempty");
            let mut p = p;
            let mut x = x;
            for word in 0..self.words {
                let mut todo = p[word] & !self.adj[pivot][word];
                while todo != 0 {
                    let bit = todo.trailing_zeros() as usize;
                    todo &= todo - 1;
                    let v = word * 64 + bit;
                    let np: Vec<u64> = (0..self.words).map(|w| p[w] & self.adj[v][w]).collect();
                    let nx: Vec<u64> = (0..self.words).map(|w| x[w] & self.adj[v][w]).collect();
                    r.push(v);
                    self.run(r, np, nx);
                    r.pop();
                    p[word] &= !(1 << bit);
                    x[word] |= 1 << bit;
                }
            }
        }
    }

    let mut p = vec![0u64; words];
    for i in 0..m {
        p[i / 64] |= 1 << (i % 64);
    }
    let mut bk = Bk { adj: &adj, words, cliques: Vec::new() };
    bk.run(&mut Vec::new(), p, vec![0u64; words]);

    let mut cliques: Vec<Clique> = bk
        .cliques
        .into_iter()
        .map(|mut idx| {
            idx.sort_unstable();
            idx.into_iter().map(|i| all_routes[i].clone()).collect()
        })
        .collect();
    cliques.sort();
    Ok(cliques)
}

/// The prefix-multiplicity flow of a maximal clique: f(e) = n(e) - 1 where
/// n(e) counts the distinct prefixes {R..head(e) : R in C} ending with e.
/// Every edge of the graph must appear in some prefix.
pub fn omega(g: &Multigraph, clique: &Clique) -> Result<IntegerFlow> {
    let mut seen: HashSet<&[EdgeId]> = HashSet::new();
    let mut counts = vec![0i64; g.edge_count()];
    for route in clique {
        for end in 0..route.len() {
            let prefix = &route[..=end];
            if seen.insert(prefix) {
                counts[route[end]] += 1;
            }
        }
    }
    for (e, &c) in counts.iter().enumerate() {
        if c == 0 {
            return Err(Error::NonMaximalClique(e));
        }
    }
    Ok(IntegerFlow::new(counts.into_iter().map(|c| c - 1).collect()))
}

/// The unique maximal clique whose prefix flow is f, found by indexing the
/// clique enumeration by image.
pub fn omega_inverse(g: &Multigraph, fr: &Framing, f: &IntegerFlow) -> Result<Clique> {
    for clique in max_cliques(g, fr)? {
        if omega(g, &clique)? == *f {
            return Ok(clique);
        }
    }
    Err(Error::NoCliquePreimage)
}

fn reverse_clique(clique: &Clique) -> Clique {
    let mut out: Clique = clique
        .iter()
        .map(|route| route.iter().rev().copied().collect())
        .collect();
    out.sort();
    out
}

/// The flow bijection from F_G^Z(0, d_1, ...) to F_{G^r}^Z(0, d^r_1, ...):
/// pull the flow back to a maximal clique, reverse its routes, and push
/// forward through the prefix map of the reversed framed graph.
pub fn theta(g: &Multigraph, fr: &Framing, f: &IntegerFlow) -> Result<IntegerFlow> {
    let clique = omega_inverse(g, fr, f)?;
    let gr = reverse(g);
    omega(&gr, &reverse_clique(&clique))
}

/// All (flow, theta(flow)) pairs, with the clique index built once.
pub fn theta_pairs(g: &Multigraph, fr: &Framing) -> Result<Vec<(IntegerFlow, IntegerFlow)>> {
    let gr = reverse(g);
    let mut pairs = Vec::new();
    for clique in max_cliques(g, fr)? {
        let from = omega(g, &clique)?;
        let to = omega(&gr, &reverse_clique(&clique))?;
        pairs.push((from, to));
    }
    pairs.sort();
    Ok(pairs)
}

/// For the two-level graph with p in-edges and q out-edges at its middle
/// vertex: the bipartite subgraph on {1..p} x {1..q} with an edge (i, j)
/// for each clique route pairing the i-th in-edge with the j-th out-edge in
/// framing order. Must form a spanning tree.
pub fn clique_to_tree(g: &Multigraph, fr: &Framing, clique: &Clique) -> Result<Vec<(usize, usize)>> {
    if g.internal_count() != 1 {
        return Err(Error::InvalidParameter("tree correspondence needs a two-level graph".into()));
    }
    let p = g.indeg(1);
    let q = g.outdeg(1);
    let mut edges = Vec::with_capacity(clique.len());
    for route in clique {
        if route.len() != 2 {
            return Err(Error::InvalidParameter("routes of a two-level graph have two edges".into()));
        }
        edges.push((fr.in_rank(1, route[0]) + 1, fr.out_rank(1, route[1]) + 1));
    }
    // spanning tree check: p + q - 1 edges, connected, acyclic
    if edges.len() != p + q - 1 {
        return Err(Error::NotSpanningTree);
    }
    let mut parent: Vec<usize> = (0..p + q).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in &edges {
        let (ri, rj) = (find(&mut parent, i - 1), find(&mut parent, p + j - 1));
        if ri == rj {
            return Err(Error::NotSpanningTree);
        }
        parent[ri] = rj;
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{build_complete, build_gpq, build_kabc, Multigraph};
    use crate::flows::{enumerate_flows, kpf};
    use crate::samples::random_connected_graph;
    use crate::volumes::{indegree_netflow, volume_via_kpf};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_framing_orders() {
        let g = build_gpq(2, 2).unwrap();
        let fr = Framing::default_for(&g);
        assert_eq!(fr.in_order(1), &[0, 1]);
        assert_eq!(fr.out_order(1), &[2, 3]);

        let k4 = build_kabc(2, 1, 1, 1).unwrap();
        let fr = Framing::default_for(&k4);
        // out-order at vertex 1: first the (1,2) edge, then (1,3)
        let out = fr.out_order(1);
        assert_eq!(k4.edge(out[0]), (1, 2));
        assert_eq!(k4.edge(out[1]), (1, 3));
    }

    #[test]
    fn framing_validation() {
        let g = build_gpq(2, 1).unwrap();
        let fr = Framing::default_for(&g);
        assert!(Framing::new(&g, fr.in_order.clone(), fr.out_order.clone()).is_ok());
        let mut bad = fr.in_order.clone();
        bad[1] = vec![0, 0];
        assert!(Framing::new(&g, bad, fr.out_order.clone()).is_err());
    }

    #[test]
    fn coherence_basics() {
        let g = build_gpq(2, 2).unwrap();
        let fr = Framing::default_for(&g);
        let rs = crate::flows::routes(&g).unwrap();
        // routes, in lex order: [0,2], [0,3], [1,2], [1,3]
        for r in &rs {
            assert!(coherent(&g, &fr, r, r), "coherence is reflexive");
        }
        // crossing pair (e1, f2) vs (e2, f1) is incoherent
        let r01 = vec![0, 3];
        let r10 = vec![1, 2];
        assert!(!coherent(&g, &fr, &r01, &r10));
        // nested pairs sharing an endpoint edge are coherent
        assert!(coherent(&g, &fr, &vec![0, 2], &vec![0, 3]));
        assert!(coherent(&g, &fr, &vec![0, 2], &vec![1, 3]));
    }

    #[test]
    fn disjoint_routes_are_coherent() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let fr = Framing::default_for(&g);
        assert!(coherent(&g, &fr, &vec![0, 2], &vec![1, 3]));
    }

    #[test]
    fn gpq_cliques() {
        let g = build_gpq(2, 2).unwrap();
        let fr = Framing::default_for(&g);
        let cliques = max_cliques(&g, &fr).unwrap();
        assert_eq!(cliques.len(), 2);
        for c in &cliques {
            assert_eq!(c.len(), 3); // |E| - n = 4 - 1
        }
    }

    #[test]
    fn complete_graph_single_clique() {
        let g = build_complete(2).unwrap();
        let fr = Framing::default_for(&g);
        let cliques = max_cliques(&g, &fr).unwrap();
        assert_eq!(cliques.len(), 1);
        assert_eq!(cliques[0].len(), 4); // |E| - n = 6 - 2
    }

    #[test]
    fn clique_count_is_volume_across_framings() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 3, 9);
            let vol = volume_via_kpf(&g).unwrap();
            for _ in 0..3 {
                let fr = Framing::random(&g, &mut rng);
                let cliques = max_cliques(&g, &fr).unwrap();
                assert_eq!(cliques.len() as u64, vol, "graph {:?}", g);
                let expected_size = g.edge_count() - g.internal_count();
                for c in &cliques {
                    assert_eq!(c.len(), expected_size);
                }
            }
        }
    }

    #[test]
    fn omega_is_a_bijection_onto_indegree_flows() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 3, 8);
            let fr = Framing::random(&g, &mut rng);
            let cliques = max_cliques(&g, &fr).unwrap();
            let images: HashSet<IntegerFlow> =
                cliques.iter().map(|c| omega(&g, c).unwrap()).collect();
            assert_eq!(images.len(), cliques.len(), "omega injective on {:?}", g);
            let flows: HashSet<IntegerFlow> = enumerate_flows(&g, &indegree_netflow(&g))
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(images, flows, "omega image is the flow set of {:?}", g);
        }
    }

    #[test]
    fn omega_on_simplex_graph() {
        // all internal outdegrees 1: single clique, single flow
        let g = Multigraph::new(2, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let fr = Framing::default_for(&g);
        let cliques = max_cliques(&g, &fr).unwrap();
        assert_eq!(cliques.len(), 1);
        let f = omega(&g, &cliques[0]).unwrap();
        let flows = enumerate_flows(&g, &indegree_netflow(&g)).unwrap();
        assert_eq!(vec![f], flows);
    }

    #[test]
    fn omega_rejects_non_maximal_cliques() {
        let g = build_gpq(2, 2).unwrap();
        // a single route misses the other edges' prefixes
        assert!(matches!(
            omega(&g, &vec![vec![0, 2]]),
            Err(Error::NonMaximalClique(_))
        ));
    }

    #[test]
    fn omega_inverse_round_trip() {
        let g = build_gpq(2, 2).unwrap();
        let fr = Framing::default_for(&g);
        for clique in max_cliques(&g, &fr).unwrap() {
            let f = omega(&g, &clique).unwrap();
            assert_eq!(omega_inverse(&g, &fr, &f).unwrap(), clique);
        }
        let bogus = IntegerFlow::new(vec![5; g.edge_count()]);
        assert!(matches!(omega_inverse(&g, &fr, &bogus), Err(Error::NoCliquePreimage)));
    }

    #[test]
    fn reverse_framing_is_involution_and_preserves_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let g = random_connected_graph(&mut rng, 3, 8);
            let fr = Framing::random(&g, &mut rng);
            let gr = reverse(&g);
            let frr = reverse_framing(&g, &fr);
            assert_eq!(reverse_framing(&gr, &frr), fr);
            // cliques correspond route-reversal-wise
            let c1: HashSet<Clique> = max_cliques(&g, &fr)
                .unwrap()
                .into_iter()
                .map(|c| reverse_clique(&c))
                .collect();
            let c2: HashSet<Clique> = max_cliques(&gr, &frr).unwrap().into_iter().collect();
            assert_eq!(c1, c2, "graph {:?}", g);
        }
    }

    #[test]
    fn theta_is_a_bijection_for_kabc() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for a in 1..=2usize {
            for b in 1..=2usize {
                for c in 1..=2usize {
                    let g = build_kabc(2, a, b, c).unwrap();
                    let fr = Framing::random(&g, &mut rng);
                    let gr = reverse(&g);
                    let domain: HashSet<IntegerFlow> =
                        enumerate_flows(&g, &indegree_netflow(&g)).unwrap().into_iter().collect();
                    let codomain: HashSet<IntegerFlow> =
                        enumerate_flows(&gr, &indegree_netflow(&gr)).unwrap().into_iter().collect();
                    assert_eq!(domain.len(), codomain.len());
                    let mut image = HashSet::new();
                    for f in &domain {
                        image.insert(theta(&g, &fr, f).unwrap());
                    }
                    assert_eq!(image, codomain, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn theta_on_simplex_graph_is_identity_like() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let fr = Framing::default_for(&g);
        let flows = enumerate_flows(&g, &indegree_netflow(&g)).unwrap();
        assert_eq!(flows.len(), 1);
        let out = theta(&g, &fr, &flows[0]).unwrap();
        let gr = reverse(&g);
        let expected = enumerate_flows(&gr, &indegree_netflow(&gr)).unwrap();
        assert_eq!(vec![out], expected);
    }

    #[test]
    fn gpq_trees_and_degree_swap() {
        for p in 1..=4usize {
            for q in 1..=4usize {
                let g = build_gpq(p, q).unwrap();
                let fr = Framing::default_for(&g);
                let cliques = max_cliques(&g, &fr).unwrap();
                // lattice point count matches binom(p+q-2, p-1)
                let count = kpf(&g, &indegree_netflow(&g)).unwrap();
                assert_eq!(cliques.len() as u64, count);

                for clique in &cliques {
                    let tree = clique_to_tree(&g, &fr, clique).unwrap();
                    assert_eq!(tree.len(), p + q - 1);
                    // right degrees - 1 give omega; left degrees - 1 give theta
                    let f = omega(&g, clique).unwrap();
                    let t = theta(&g, &fr, &f).unwrap();
                    let mut right = vec![0i64; q];
                    let mut left = vec![0i64; p];
                    for &(i, j) in &tree {
                        left[i - 1] += 1;
                        right[j - 1] += 1;
                    }
                    for (j, &e) in fr.out_order(1).iter().enumerate() {
                        assert_eq!(f[e], right[j] - 1, "right degree at {j}");
                    }
                    // in G^r the old in-edges become out-edges of vertex 1 in
                    // reversed framing order
                    let frr = reverse_framing(&g, &fr);
                    for (i, &e) in frr.out_order(1).iter().enumerate() {
                        assert_eq!(t[e], left[i] - 1, "left degree at {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn tree_correspondence_rejects_wrong_graphs() {
        let g = build_complete(2).unwrap();
        let fr = Framing::default_for(&g);
        let cliques = max_cliques(&g, &fr).unwrap();
        assert!(clique_to_tree(&g, &fr, &cliques[0]).is_err());
    }
}
