//! Integer flows: enumeration, counting (Kostant partition functions), route
//! listing, and an Ehrhart-interpolation volume oracle.

use crate::digraph::{EdgeId, Multigraph};
use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Per-vertex net flow (outflow minus inflow); entries sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetFlow(Vec<i64>);

impl NetFlow {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        let sum: i64 = values.iter().sum();
        if sum != 0 {
            return Err(Error::NetflowSum(sum));
        }
        Ok(Self(values))
    }

    /// The unit netflow (1, 0, ..., 0, -1) on n+2 vertices.
    pub fn unit(n: usize) -> Self {
        let mut v = vec![0i64; n + 2];
        v[0] = 1;
        v[n + 1] = -1;
        Self(v)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entrywise scaling by a nonnegative integer.
    pub fn scaled(&self, t: i64) -> NetFlow {
        NetFlow(self.0.iter().map(|x| x * t).collect())
    }
}

impl std::ops::Index<usize> for NetFlow {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

/// Nonnegative integer flow values indexed by EdgeId.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerFlow(Vec<i64>);

impl IntegerFlow {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The netflow this assignment induces on the graph.
    pub fn net_flow(&self, g: &Multigraph) -> NetFlow {
        let mut values = vec![0i64; g.vertex_count()];
        for (e, &(t, h)) in g.edges().iter().enumerate() {
            values[t] += self.0[e];
            values[h] -= self.0[e];
        }
        NetFlow(values)
    }

    /// Checks nonnegativity and conservation against the given netflow.
    pub fn satisfies(&self, g: &Multigraph, a: &NetFlow) -> bool {
        self.0.len() == g.edge_count()
            && self.0.iter().all(|&x| x >= 0)
            && self.net_flow(g) == *a
    }
}

impl std::ops::Index<EdgeId> for IntegerFlow {
    type Output = i64;
    fn index(&self, e: EdgeId) -> &i64 {
        &self.0[e]
    }
}

fn check_netflow_len(g: &Multigraph, a: &NetFlow) -> Result<()> {
    if a.len() != g.vertex_count() {
        return Err(Error::NetflowLength { got: a.len(), expected: g.vertex_count() });
    }
    Ok(())
}

/// All integer points of the flow polytope F_G(a), sorted lexicographically
/// by EdgeId values. Infeasible netflows give an empty list.
pub fn enumerate_flows(g: &Multigraph, a: &NetFlow) -> Result<Vec<IntegerFlow>> {
    check_netflow_len(g, a)?;
    let nv = g.vertex_count();
    let out_edges: Vec<Vec<EdgeId>> = (0..nv).map(|v| g.out_edges(v)).collect();
    let mut inflow = vec![0i64; nv];
    let mut flow = vec![0i64; g.edge_count()];
    let mut result = Vec::new();

    fn distribute(
        g: &Multigraph,
        out: &[EdgeId],
        idx: usize,
        remaining: i64,
        v: usize,
        out_edges: &Vec<Vec<EdgeId>>,
        a: &NetFlow,
        inflow: &mut Vec<i64>,
        flow: &mut Vec<i64>,
        result: &mut Vec<IntegerFlow>,
    ) {
        if idx == out.len() {
            debug_assert_eq!(remaining, 0);
            visit(g, v + 1, out_edges, a, inflow, flow, result);
            return;
        }
        let e = out[idx];
        let head = g.edge(e).1;
        let min = if idx == out.len() - 1 { remaining } else { 0 };
        for amt in min..=remaining {
            flow[e] = amt;
            inflow[head] += amt;
            distribute(g, out, idx + 1, remaining - amt, v, out_edges, a, inflow, flow, result);
            inflow[head] -= amt;
            flow[e] = 0;
        }
    }

    fn visit(
        g: &Multigraph,
        v: usize,
        out_edges: &Vec<Vec<EdgeId>>,
        a: &NetFlow,
        inflow: &mut Vec<i64>,
        flow: &mut Vec<i64>,
        result: &mut Vec<IntegerFlow>,
    ) {
        if v == g.vertex_count() - 1 {
            if a[v] + inflow[v] == 0 {
                result.push(IntegerFlow::new(flow.clone()));
            }
            return;
        }
        let supply = a[v] + inflow[v];
        if supply < 0 {
            return;
        }
        let out = &out_edges[v];
        if out.is_empty() {
            if supply == 0 {
                visit(g, v + 1, out_edges, a, inflow, flow, result);
            }
            return;
        }
        distribute(g, out, 0, supply, v, out_edges, a, inflow, flow, result);
    }

    visit(g, 0, &out_edges, a, &mut inflow, &mut flow, &mut result);
    result.sort();
    Ok(result)
}

/// Grouped outgoing arcs of one vertex: (head, multiplicity).
fn grouped_out_arcs(g: &Multigraph, v: usize) -> Vec<(usize, i64)> {
    let mut arcs: Vec<(usize, i64)> = Vec::new();
    for e in g.out_edges(v) {
        let h = g.edge(e).1;
        match arcs.iter_mut().find(|(head, _)| *head == h) {
            Some((_, m)) => *m += 1,
            None => arcs.push((h, 1)),
        }
    }
    arcs.sort_unstable();
    arcs
}

/// K_G(a): the number of integer points of F_G(a), computed by a memoized
/// vertex-by-vertex distribution that collapses parallel edges (s units over
/// m parallel copies contribute a weak-composition binomial factor).
pub fn kpf(g: &Multigraph, a: &NetFlow) -> Result<u64> {
    check_netflow_len(g, a)?;
    let nv = g.vertex_count();
    let arcs: Vec<Vec<(usize, i64)>> = (0..nv).map(|v| grouped_out_arcs(g, v)).collect();
    let mut memo: HashMap<(usize, Vec<i64>), u64> = HashMap::new();

    fn compositions(
        arcs: &[(usize, i64)],
        idx: usize,
        remaining: i64,
        inflow: &mut Vec<i64>,
        next: &mut dyn FnMut(&mut Vec<i64>) -> u64,
    ) -> u64 {
        if idx == arcs.len() - 1 {
            let (h, m) = arcs[idx];
            let ways = weak_compositions(remaining, m);
            if ways == 0 {
                return 0;
            }
            inflow[h] += remaining;
            let total = ways * next(inflow);
            inflow[h] -= remaining;
            return total;
        }
        let (h, m) = arcs[idx];
        let mut total = 0u64;
        for amt in 0..=remaining {
            let ways = weak_compositions(amt, m);
            if ways == 0 {
                continue;
            }
            inflow[h] += amt;
            total += ways * compositions(arcs, idx + 1, remaining - amt, inflow, next);
            inflow[h] -= amt;
        }
        total
    }

    fn visit(
        v: usize,
        inflow: &mut Vec<i64>,
        a: &NetFlow,
        arcs: &Vec<Vec<(usize, i64)>>,
        memo: &mut HashMap<(usize, Vec<i64>), u64>,
    ) -> u64 {
        let nv = a.len();
        if v == nv - 1 {
            return u64::from(a[v] + inflow[v] == 0);
        }
        let key = (v, inflow[v..].to_vec());
        if let Some(&cached) = memo.get(&key) {
            return cached;
        }
        let supply = a[v] + inflow[v];
        let count = if supply < 0 {
            0
        } else if arcs[v].is_empty() {
            if supply == 0 {
                visit(v + 1, inflow, a, arcs, memo)
            } else {
                0
            }
        } else {
            let arcs_v = arcs[v].clone();
            compositions(&arcs_v, 0, supply, inflow, &mut |inflow| {
                visit(v + 1, inflow, a, arcs, memo)
            })
        };
        memo.insert(key, count);
        count
    }

    let mut inflow = vec![0i64; nv];
    Ok(visit(0, &mut inflow, a, &arcs, &mut memo))
}

/// Ways to write s as an ordered sum of m nonnegative integers.
fn weak_compositions(s: i64, m: i64) -> u64 {
    if s < 0 {
        return 0;
    }
    crate::exact::binomial(s + m - 1, m - 1).to_u64().expect("composition count fits u64")
}

/// A route: an EdgeId sequence tracing a maximal path from source to sink.
pub type Route = Vec<EdgeId>;

/// All routes of G, lexicographic by EdgeId sequence.
pub fn routes(g: &Multigraph) -> Result<Vec<Route>> {
    if !g.has_unique_source_sink() {
        return Err(Error::SourceSink);
    }
    let mut result = Vec::new();
    let mut stack: Vec<EdgeId> = Vec::new();
    fn dfs(g: &Multigraph, v: usize, stack: &mut Vec<EdgeId>, result: &mut Vec<Route>) {
        if v == g.sink() {
            result.push(stack.clone());
            return;
        }
        for e in g.out_edges(v) {
            stack.push(e);
            dfs(g, g.edge(e).1, stack, result);
            stack.pop();
        }
    }
    dfs(g, 0, &mut stack, &mut result);
    Ok(result)
}

/// Rank over Q of the vertex-edge incidence matrix of G.
fn incidence_rank(g: &Multigraph) -> usize {
    let rows = g.vertex_count();
    let cols = g.edge_count();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols]; rows];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        m[t][e] = BigRational::one();
        m[h][e] = -BigRational::one();
    }
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        let inv = m[row][col].recip();
        for c in col..cols {
            let v = m[row][c].clone() * inv.clone();
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let v = m[r][c].clone() - f.clone() * m[row][c].clone();
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Normalized volume of F_G(a) via Ehrhart interpolation: counts lattice
/// points of the dilates t*a for t = 0..d, where d is the rank deficit of
/// the constraint system, and returns d! times the leading coefficient.
pub fn ehrhart_volume(g: &Multigraph, a: &NetFlow) -> Result<u64> {
    check_netflow_len(g, a)?;
    if kpf(g, a)? == 0 {
        return Err(Error::EmptyPolytope);
    }
    let d = g.edge_count() - incidence_rank(g);
    let mut counts = Vec::with_capacity(d + 1);
    for t in 0..=d as i64 {
        counts.push(kpf(g, &a.scaled(t))?);
    }
    // Lagrange interpolation at nodes 0..d: leading coefficient is
    // sum_t y_t / prod_{s != t} (t - s).
    let mut lead = BigRational::zero();
    for (t, &y) in counts.iter().enumerate() {
        let mut denom = BigInt::one();
        for s in 0..=d {
            if s != t {
                denom *= BigInt::from(t as i64 - s as i64);
            }
        }
        lead += BigRational::new(BigInt::from(y), denom);
    }
    let volume = lead * BigRational::from(crate::exact::factorial(d as u64));
    if !volume.is_integer() {
        return Err(Error::NonIntegralVolume(volume.to_string()));
    }
    volume
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegralVolume("negative interpolated volume".into()))
}
