//! Normalized volumes of flow polytopes by three routes: the indegree
//! Kostant partition function identity, the recursive subdivision count, and
//! the Lidskii composition formula. Also the integer-flow bijections that
//! drive the subdivision recursion.

use crate::digraph::{reduction_leaves, EdgeId, Multigraph};
use crate::error::{Error, Result};
use crate::flows::{kpf, IntegerFlow, NetFlow};
use num::ToPrimitive;

/// The netflow (0, d_1, ..., d_n, -sum d_i) with d_i = indeg(i) - 1.
pub fn indegree_netflow(g: &Multigraph) -> NetFlow {
    let n = g.internal_count();
    let mut values = vec![0i64; g.vertex_count()];
    let mut total = 0i64;
    for v in 1..=n {
        let d = g.indeg(v) as i64 - 1;
        values[v] = d;
        total += d;
    }
    values[n + 1] = -total;
    NetFlow::new(values).expect("indegree netflow sums to zero")
}

/// vol F_G(1,0,...,0,-1) as K_G(0, d_1, ..., d_n, -sum d_i).
pub fn volume_via_kpf(g: &Multigraph) -> Result<u64> {
    if !g.has_unique_source_sink() {
        return Err(Error::SourceSink);
    }
    kpf(g, &indegree_netflow(g))
}

/// Volume of a piece in a subdivision: zero when an internal vertex has been
/// cut off from the source (the piece is not full-dimensional), otherwise
/// the usual indegree KPF count.
pub(crate) fn volume_allowing_degenerate(g: &Multigraph) -> Result<u64> {
    if (1..=g.internal_count()).any(|v| g.indeg(v) == 0) {
        return Ok(0);
    }
    kpf(g, &indegree_netflow(g))
}

/// vol F_G(1,0,...,0,-1) as the number of reduction leaves; each leaf is a
/// unimodular simplex.
pub fn volume_via_subdivision(g: &Multigraph) -> Result<u64> {
    Ok(reduction_leaves(g)?.len() as u64)
}

/// The flow bijection onto G1 = reduce(g, e1, e2).0, defined on flows with
/// f(e2) <= f(e1): the new (i,k) edge (at e2's position) takes y = f(e2)
/// and the (i,j) edge keeps x - y.
pub fn phi1(g: &Multigraph, e1: EdgeId, e2: EdgeId, f: &IntegerFlow) -> Result<IntegerFlow> {
    let (x, y) = (f[e1], f[e2]);
    if y > x {
        return Err(Error::FlowPrecondition(format!(
            "phi1 needs f(e2) <= f(e1), got {y} > {x}"
        )));
    }
    let mut values = f.values().to_vec();
    values[e1] = x - y;
    values[e2] = y;
    Ok(IntegerFlow::new(values))
}

/// Inverse of `phi1`: from a flow on G1 back to G0.
pub fn phi1_inverse(
    _g: &Multigraph,
    e1: EdgeId,
    e2: EdgeId,
    f1: &IntegerFlow,
) -> Result<IntegerFlow> {
    let mut values = f1.values().to_vec();
    values[e1] = f1[e1] + f1[e2];
    values[e2] = f1[e2];
    Ok(IntegerFlow::new(values))
}

/// The flow bijection onto G2 = reduce(g, e1, e2).1, defined on flows with
/// f(e2) > f(e1): the new (i,k) edge (at e1's position) takes x = f(e1) and
/// the (j,k) edge drops to y - x - 1.
pub fn phi2(g: &Multigraph, e1: EdgeId, e2: EdgeId, f: &IntegerFlow) -> Result<IntegerFlow> {
    let (x, y) = (f[e1], f[e2]);
    if y <= x {
        return Err(Error::FlowPrecondition(format!(
            "phi2 needs f(e2) > f(e1), got {y} <= {x}"
        )));
    }
    let _ = g;
    let mut values = f.values().to_vec();
    values[e1] = x;
    values[e2] = y - x - 1;
    Ok(IntegerFlow::new(values))
}

/// Inverse of `phi2`: from a flow on G2 back to G0.
pub fn phi2_inverse(
    _g: &Multigraph,
    e1: EdgeId,
    e2: EdgeId,
    f2: &IntegerFlow,
) -> Result<IntegerFlow> {
    let mut values = f2.values().to_vec();
    values[e1] = f2[e1];
    values[e2] = f2[e2] + f2[e1] + 1;
    Ok(IntegerFlow::new(values))
}

/// Netflow for the G2 child: indegree at j drops by one and at k rises by
/// one relative to G0's indegree netflow.
pub fn netflow_for_g2(g: &Multigraph, e1: EdgeId, e2: EdgeId) -> Result<NetFlow> {
    let (_, j) = g.edge(e1);
    let (_, k) = g.edge(e2);
    let mut values = indegree_netflow(g).values().to_vec();
    let sink = values.len() - 1;
    values[j] -= 1;
    if k < sink {
        values[k] += 1;
    }
    values[sink] = -values[..sink].iter().sum::<i64>();
    NetFlow::new(values)
}

/// Normalized volume of F_G(a) for a source-loaded netflow
/// a = (sum of demands, -lambda_1, ..., -lambda_{n+1}) via the composition
/// formula: sum over compositions j of m-n-1 into n+1 parts of
/// multinomial(m-n-1; j) * prod lambda_i^{j_i} * K_G(0, d_1-j_1, ...).
pub fn lidskii_volume(g: &Multigraph, a: &NetFlow) -> Result<u64> {
    if a.len() != g.vertex_count() {
        return Err(Error::NetflowLength { got: a.len(), expected: g.vertex_count() });
    }
    let n = g.internal_count();
    for v in 0..=n {
        if g.outdeg(v) == 0 {
            return Err(Error::InvalidParameter(format!(
                "lidskii needs outdegree >= 1 at vertex {v}"
            )));
        }
    }
    if a.values()[1..].iter().any(|&x| x > 0) {
        return Err(Error::InvalidParameter(
            "lidskii netflow must be source-loaded: entries past vertex 0 must be <= 0".into(),
        ));
    }
    let lambdas: Vec<i64> = a.values()[1..].iter().map(|&x| -x).collect();
    let m = g.edge_count();
    if m < n + 1 {
        return Err(Error::InvalidParameter("graph has fewer than n+1 edges".into()));
    }
    let degree = (m - n - 1) as i64;
    let d: Vec<i64> = (1..=n + 1).map(|v| g.indeg(v) as i64 - 1).collect();

    let mut total: u128 = 0;
    let mut parts = vec![0i64; n + 1];
    fn rec(
        idx: usize,
        remaining: i64,
        parts: &mut Vec<i64>,
        lambdas: &[i64],
        d: &[i64],
        degree: i64,
        g: &Multigraph,
        total: &mut u128,
    ) -> Result<()> {
        if idx == parts.len() - 1 {
            parts[idx] = remaining;
            if lambdas[idx] != 0 || remaining == 0 {
                accumulate(parts, lambdas, d, degree, g, total)?;
            }
            parts[idx] = 0;
            return Ok(());
        }
        for j in 0..=remaining {
            if j > 0 && lambdas[idx] == 0 {
                break;
            }
            parts[idx] = j;
            rec(idx + 1, remaining - j, parts, lambdas, d, degree, g, total)?;
            parts[idx] = 0;
        }
        Ok(())
    }

    fn accumulate(
        parts: &[i64],
        lambdas: &[i64],
        d: &[i64],
        degree: i64,
        g: &Multigraph,
        total: &mut u128,
    ) -> Result<()> {
        let mut coeff: u128 = multinomial(degree, parts);
        for (i, &j) in parts.iter().enumerate() {
            coeff *= (lambdas[i] as u128).pow(j as u32);
        }
        if coeff == 0 {
            return Ok(());
        }
        let mut values = vec![0i64];
        for (i, &di) in d.iter().enumerate() {
            values.push(di - parts[i]);
        }
        let count = kpf(g, &NetFlow::new(values)?)?;
        *total += coeff * count as u128;
        Ok(())
    }

    rec(0, degree, &mut parts, &lambdas, &d, degree, g, &mut total)?;
    u64::try_from(total)
        .map_err(|_| Error::InvalidParameter("lidskii volume exceeds u64".into()))
}

fn multinomial(total: i64, parts: &[i64]) -> u128 {
    let mut acc = num::BigInt::from(1);
    let mut remaining = total;
    for &p in parts {
        acc *= crate::exact::binomial(remaining, p);
        remaining -= p;
    }
    debug_assert_eq!(remaining, 0);
    acc.to_u128().expect("multinomial fits u128")
}
