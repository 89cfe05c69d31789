//! Loopless acyclic directed multigraphs on vertices {0, ..., n+1} with all
//! edges oriented low to high, plus the graph families used throughout and
//! the edge reduction rule with its leaf recursion.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Stable edge identity: the position in the graph's edge list.
pub type EdgeId = usize;

/// A multigraph on vertex set {0, ..., n+1}; `n` counts internal vertices.
/// The edge list order is part of the identity: flows and framings index
/// edges by position, and parallel edges are distinct copies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct MultigraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(t, h) in &edges {
            if t >= h || h > n + 1 {
                return Err(Error::InvalidParameter(format!(
                    "edge ({t},{h}) must satisfy tail < head <= n+1 = {}",
                    n + 1
                )));
            }
        }
        Ok(Self { n, edges })
    }

    /// Number of internal vertices.
    pub fn internal_count(&self) -> usize {
        self.n
    }

    /// Total number of vertices, n + 2.
    pub fn vertex_count(&self) -> usize {
        self.n + 2
    }

    pub fn sink(&self) -> usize {
        self.n + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    pub fn out_edges(&self, v: usize) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == v).collect()
    }

    pub fn in_edges(&self, v: usize) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e].1 == v).collect()
    }

    pub fn outdeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(t, _)| t == v).count()
    }

    pub fn indeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, h)| h == v).count()
    }

    /// True iff 0 is the only source and n+1 the only sink: every internal
    /// vertex lies on some route, 0 has an outgoing edge, and n+1 an incoming
    /// one. Together with tail < head this also forces connectivity.
    pub fn has_unique_source_sink(&self) -> bool {
        if self.outdeg(0) == 0 || self.indeg(self.sink()) == 0 {
            return false;
        }
        (1..=self.n).all(|v| self.indeg(v) >= 1 && self.outdeg(v) >= 1)
    }

    /// Equality as edge multisets, ignoring edge order.
    pub fn same_edge_multiset(&self, other: &Multigraph) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MultigraphJson { n: self.n, edges: self.edges.clone() })
            .expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: MultigraphJson = serde_json::from_str(s)?;
        Multigraph::new(raw.n, raw.edges)
    }
}

/// A subset of the internal vertices {1, ..., n}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsetS {
    members: BTreeSet<usize>,
}

impl SubsetS {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Self { members: members.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Complement within {1, ..., n}.
    pub fn complement(&self, n: usize) -> SubsetS {
        SubsetS::new((1..=n).filter(|i| !self.members.contains(i)))
    }

    /// All subsets of {1, ..., n} of the given size, in lexicographic order.
    pub fn all_of_size(n: usize, k: usize) -> Vec<SubsetS> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<SubsetS>) {
            if current.len() == k {
                out.push(SubsetS::new(current.iter().copied()));
                return;
            }
            for i in start..=n {
                current.push(i);
                rec(i + 1, n, k, current, out);
                current.pop();
            }
        }
        rec(1, n, k, &mut current, &mut out);
        out
    }
}

/// The graph k_{n+2}^{a,b,c}: edge (0,i) with multiplicity a and (i,n+1) with
/// multiplicity b for each internal i, and (i,j) with multiplicity c for
/// 1 <= i < j <= n. The edge (0,n+1) is not present.
pub fn build_kabc(n: usize, a: usize, b: usize, c: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("k^{a,b,c} needs n >= 1".into()));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("k^{a,b,c} needs a, b >= 1".into()));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.extend(std::iter::repeat((0, i)).take(a));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            edges.extend(std::iter::repeat((i, j)).take(c));
        }
    }
    for i in 1..=n {
        edges.extend(std::iter::repeat((i, n + 1)).take(b));
    }
    Multigraph::new(n, edges)
}

/// The graph k_{n+2}^{a,b,c}(S): k_{n+2}^{a,b,c} plus n copies of (0,n+1),
/// where each i in S trades one (0,i) edge for an extra (i,n+1) edge.
pub fn build_kabc_s(n: usize, a: usize, b: usize, c: usize, s: &SubsetS) -> Result<Multigraph> {
    if n == 0 || a == 0 || b == 0 {
        return Err(Error::InvalidParameter("k^{a,b,c}(S) needs n, a, b >= 1".into()));
    }
    if s.iter().any(|i| i < 1 || i > n) {
        return Err(Error::InvalidParameter(format!("S must be a subset of 1..={n}")));
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        let mult = if s.contains(i) { a - 1 } else { a };
        edges.extend(std::iter::repeat((0, i)).take(mult));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            edges.extend(std::iter::repeat((i, j)).take(c));
        }
    }
    for i in 1..=n {
        let mult = if s.contains(i) { b + 1 } else { b };
        edges.extend(std::iter::repeat((i, n + 1)).take(mult));
    }
    edges.extend(std::iter::repeat((0, n + 1)).take(n));
    Multigraph::new(n, edges)
}

/// The two-level graph on {0,1,2} with p parallel (0,1) edges and q parallel
/// (1,2) edges; its flow polytope is a product of two simplices.
pub fn build_gpq(p: usize, q: usize) -> Result<Multigraph> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("G(p,q) needs p, q >= 1".into()));
    }
    let mut edges = vec![(0, 1); p];
    edges.extend(std::iter::repeat((1, 2)).take(q));
    Multigraph::new(1, edges)
}

/// The complete graph k_{n+2} on {0, ..., n+1}, including the edge (0,n+1).
pub fn build_complete(n: usize) -> Result<Multigraph> {
    let mut edges = Vec::new();
    for i in 0..=n + 1 {
        for j in i + 1..=n + 1 {
            edges.push((i, j));
        }
    }
    Multigraph::new(n, edges)
}

/// Edge reversal with relabeling i -> n+1-i; edge k of G maps to edge k of
/// the result.
pub fn reverse(g: &Multigraph) -> Multigraph {
    let n = g.internal_count();
    let edges = g
        .edges()
        .iter()
        .map(|&(t, h)| (n + 1 - h, n + 1 - t))
        .collect();
    Multigraph::new(n, edges).expect("reversal preserves tail < head")
}

/// The reduction rule applied to edges e1 = (i,j), e2 = (j,k): returns
/// (G1, G2) with G1 = G minus (j,k) plus (i,k) and G2 = G minus (i,j) plus
/// (i,k). The replaced edge keeps its list position, so all other EdgeIds
/// are unchanged.
pub fn reduce(g: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<(Multigraph, Multigraph)> {
    let (i, j1) = g.edge(e1);
    let (j2, k) = g.edge(e2);
    if j1 != j2 {
        return Err(Error::BadReduction { tail_edge: e1, head_edge: e2 });
    }
    let mut edges1 = g.edges().to_vec();
    edges1[e2] = (i, k);
    let mut edges2 = g.edges().to_vec();
    edges2[e1] = (i, k);
    Ok((
        Multigraph::new(g.internal_count(), edges1)?,
        Multigraph::new(g.internal_count(), edges2)?,
    ))
}

/// One reduction step in the leaf recursion: the chosen vertex with its
/// smallest in-edge and out-edge pair, or None when every internal vertex
/// already has outdegree 1.
fn reduction_site(g: &Multigraph, pick: &mut dyn FnMut(&[usize]) -> usize) -> Option<(EdgeId, EdgeId)> {
    let eligible: Vec<usize> = (1..=g.internal_count()).filter(|&v| g.outdeg(v) > 1).collect();
    if eligible.is_empty() {
        return None;
    }
    let v = eligible[pick(&eligible)];
    let e1 = *g.in_edges(v).iter().min().expect("internal vertex has an in-edge");
    let e2 = *g.out_edges(v).iter().min().expect("outdeg > 1");
    Some((e1, e2))
}

fn reduction_leaves_impl(
    g: Multigraph,
    pick: &mut dyn FnMut(&[usize]) -> usize,
    out: &mut Vec<Multigraph>,
) -> Result<()> {
    match reduction_site(&g, pick) {
        None => {
            out.push(g);
            Ok(())
        }
        Some((e1, e2)) => {
            let j = g.edge(e1).1;
            let single_in = g.indeg(j) == 1;
            let (g1, g2) = reduce(&g, e1, e2)?;
            // With a single in-edge the flow into j bounds every outgoing
            // flow, so the child that drops the in-edge carries an empty
            // (volume-zero) piece and only G1 is kept.
            reduction_leaves_impl(g1, pick, out)?;
            if !single_in {
                reduction_leaves_impl(g2, pick, out)?;
            }
            Ok(())
        }
    }
}

/// Recursively applies the reduction rule until every internal vertex has
/// outdegree 1, keeping both children at vertices with indegree > 1 and only
/// the surviving child at vertices with indegree 1. Reduction sites are
/// chosen deterministically: smallest eligible vertex, then smallest
/// (e1, e2) EdgeId pair.
pub fn reduction_leaves(g: &Multigraph) -> Result<Vec<Multigraph>> {
    if !g.has_unique_source_sink() {
        return Err(Error::SourceSink);
    }
    let mut out = Vec::new();
    reduction_leaves_impl(g.clone(), &mut |_| 0, &mut out)?;
    Ok(out)
}

/// Same recursion with the eligible vertex chosen by an arbitrary strategy;
/// the leaf count must not depend on it.
pub fn reduction_leaves_with_order(
    g: &Multigraph,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Vec<Multigraph>> {
    if !g.has_unique_source_sink() {
        return Err(Error::SourceSink);
    }
    let mut out = Vec::new();
    reduction_leaves_impl(g.clone(), pick, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::random_connected_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kabc_edge_counts() {
        // (a+b)n + c*C(n,2), without (0,n+1)
        assert_eq!(build_kabc(2, 1, 1, 1).unwrap().edge_count(), 5);
        assert_eq!(build_kabc(1, 3, 2, 5).unwrap().edge_count(), 5);
        assert_eq!(build_kabc(2, 2, 1, 3).unwrap().edge_count(), 9);
        assert!(build_kabc(0, 1, 1, 1).is_err());
    }

    #[test]
    fn kabc_s_construction() {
        let n = 2;
        let g = build_kabc_s(n, 1, 1, 1, &SubsetS::empty()).unwrap();
        assert_eq!(g.edge_count(), 5 + n);
        let mut expected = build_kabc(n, 1, 1, 1).unwrap().edges().to_vec();
        expected.extend([(0, 3), (0, 3)]);
        assert!(g.same_edge_multiset(&Multigraph::new(n, expected).unwrap()));

        // S = {1,2}: both internal vertices lose their (0,i) and gain (i,3)
        let g = build_kabc_s(2, 1, 1, 1, &SubsetS::new([1, 2])).unwrap();
        assert_eq!(g.indeg(1), 0);
        assert_eq!(g.outdeg(1), 3); // (1,2), two copies of (1,3)
        assert_eq!(g.outdeg(2), 2);
        assert_eq!(g.edges().iter().filter(|&&e| e == (0, 3)).count(), 2);

        assert!(build_kabc_s(2, 1, 1, 1, &SubsetS::new([3])).is_err());
    }

    #[test]
    fn gpq_and_complete() {
        let g = build_gpq(2, 2).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(reverse(&g).same_edge_multiset(&build_gpq(2, 2).unwrap()));
        assert!(reverse(&build_gpq(3, 1).unwrap()).same_edge_multiset(&build_gpq(1, 3).unwrap()));

        let k4 = build_complete(2).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.edges().contains(&(0, 3)));
    }

    #[test]
    fn reverse_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 4, 9);
            assert_eq!(reverse(&reverse(&g)), g);
        }
    }

    #[test]
    fn reverse_swaps_kabc_roles() {
        let g = reverse(&build_kabc(3, 2, 1, 2).unwrap());
        assert!(g.same_edge_multiset(&build_kabc(3, 1, 2, 2).unwrap()));
    }

    #[test]
    fn reverse_kabc_s() {
        // reverse of k^{a,b,c}(S) is k^{b+1,a-1,c}([n] \ S)
        let n = 3;
        for (a, b, c) in [(2, 1, 1), (3, 2, 2), (2, 2, 0)] {
            for s in SubsetS::all_of_size(n, 2) {
                let g = reverse(&build_kabc_s(n, a, b, c, &s).unwrap());
                let expected = build_kabc_s(n, b + 1, a - 1, c, &s.complement(n)).unwrap();
                assert!(g.same_edge_multiset(&expected), "a={a} b={b} c={c}");
            }
        }
    }

    #[test]
    fn reverse_swaps_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g = random_connected_graph(&mut rng, 4, 9);
            let r = reverse(&g);
            let n = g.internal_count();
            assert_eq!(g.edge_count(), r.edge_count());
            for v in 0..=n + 1 {
                assert_eq!(r.indeg(v), g.outdeg(n + 1 - v));
            }
        }
    }

    #[test]
    fn reduce_on_path() {
        let g = Multigraph::new(1, vec![(0, 1), (1, 2)]).unwrap();
        let (g1, g2) = reduce(&g, 0, 1).unwrap();
        assert_eq!(g1.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(g2.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(g1.edge_count(), g.edge_count());
        assert_eq!(g2.edge_count(), g.edge_count());
    }

    #[test]
    fn reduce_requires_shared_vertex() {
        let g = Multigraph::new(2, vec![(0, 1), (2, 3)]).unwrap();
        assert!(reduce(&g, 0, 1).is_err());
    }

    #[test]
    fn reduction_leaves_fixed_point() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let leaves = reduction_leaves(&g).unwrap();
        assert_eq!(leaves, vec![g]);
    }

    #[test]
    fn reduction_leaf_counts_for_complete_graphs() {
        // leaf count equals the CRY volume: Catalan products 1, 2 for n = 2, 3
        assert_eq!(reduction_leaves(&build_complete(2).unwrap()).unwrap().len(), 1);
        assert_eq!(reduction_leaves(&build_complete(3).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn leaves_have_outdegree_one_and_unique_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let g = random_connected_graph(&mut rng, 4, 9);
            for leaf in reduction_leaves(&g).unwrap() {
                assert!(leaf.has_unique_source_sink());
                for v in 1..=leaf.internal_count() {
                    assert_eq!(leaf.outdeg(v), 1, "leaf {:?} of {:?}", leaf, g);
                }
            }
        }
    }

    #[test]
    fn leaf_count_independent_of_reduction_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let g = random_connected_graph(&mut rng, 4, 9);
            let baseline = reduction_leaves(&g).unwrap().len();
            for seed in 0..10 {
                let mut order_rng = ChaCha8Rng::seed_from_u64(seed);
                let count = reduction_leaves_with_order(&g, &mut |choices| {
                    order_rng.random_range(0..choices.len())
                })
                .unwrap()
                .len();
                assert_eq!(count, baseline, "graph {:?} seed {seed}", g);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = build_kabc(2, 2, 1, 1).unwrap();
        let s = g.to_json();
        assert_eq!(Multigraph::from_json(&s).unwrap(), g);
        assert!(s.starts_with("{\"n\":2,\"edges\":[[0,1]"));
    }
}
