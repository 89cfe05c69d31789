//! Flow-counting interpretations of the Morris-type constant terms: sums of
//! Kostant partition functions over bounded netflows, sums of volumes over
//! the S-graphs, the one-reduction-per-vertex subdivision, and the edge
//! contraction bijection.

use crate::digraph::{build_kabc, build_kabc_s, reduce, EdgeId, Multigraph, SubsetS};
use crate::error::{Error, Result};
use crate::flows::{kpf, IntegerFlow, NetFlow};
use crate::formulas::MorrisParams;
use crate::volumes::volume_allowing_degenerate;

/// M_n(a,b,c) as K_{k^{a,b,c}}(0, a_1, ..., a_n, -sum a_i) with
/// a_i = a - 1 + c(i-1).
pub fn morris_via_kpf(n: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    if a == 0 {
        // vertex 1 would need netflow -1 with no possible inflow
        return Ok(0);
    }
    let params = MorrisParams::new(n, a, b, c, 0)?;
    let g = build_kabc(n as usize, a as usize, b as usize, c as usize)?;
    kpf(&g, &bound_netflow(&params, &(1..=n).map(|i| params.bound(i)).collect::<Vec<_>>()))
}

fn bound_netflow(params: &MorrisParams, values: &[i64]) -> NetFlow {
    let mut v = Vec::with_capacity(params.n as usize + 2);
    v.push(0);
    v.extend_from_slice(values);
    v.push(-values.iter().sum::<i64>());
    NetFlow::new(v).expect("constructed netflow sums to zero")
}

/// Psi_n(k,a,b,c) as the sum of K_{k^{a,b,c}}(0, a_1, ..) over netflows with
/// a_i <= a-1+c(i-1) and equality at exactly n-k indices. Strict entries
/// range down to the feasibility bound -sum_{j<i} (a-1+c(j-1)); below it the
/// count vanishes because inflow at vertex i cannot exceed the production of
/// the earlier vertices.
pub fn psi_via_kpf(n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    if n == 0 {
        return Ok(u64::from(k == 0));
    }
    if a == 0 {
        return Ok(0);
    }
    let params = MorrisParams::new(n, a, b, c, k)?;
    let g = build_kabc(n as usize, a as usize, b as usize, c as usize)?;
    let bounds: Vec<i64> = (1..=n).map(|i| params.bound(i)).collect();
    let mut lower = Vec::with_capacity(n as usize);
    let mut prefix = 0i64;
    for &p in &bounds {
        lower.push(-prefix);
        prefix += p;
    }

    let mut total = 0u64;
    for strict in SubsetS::all_of_size(n as usize, k as usize) {
        let mut values = bounds.clone();
        total += sum_over_strict(&g, &params, &strict, &lower, &mut values, 1)?;
    }
    Ok(total)
}

fn sum_over_strict(
    g: &Multigraph,
    params: &MorrisParams,
    strict: &SubsetS,
    lower: &[i64],
    values: &mut Vec<i64>,
    i: usize,
) -> Result<u64> {
    if i > params.n as usize {
        return kpf(g, &bound_netflow(params, values));
    }
    if !strict.contains(i) {
        return sum_over_strict(g, params, strict, lower, values, i + 1);
    }
    let hi = params.bound(i as u32) - 1;
    let lo = lower[i - 1];
    let mut total = 0;
    for v in lo..=hi {
        values[i - 1] = v;
        total += sum_over_strict(g, params, strict, lower, values, i + 1)?;
        values[i - 1] = params.bound(i as u32);
    }
    Ok(total)
}

/// Psi_n(k,a,b,c) as the total volume of the interior-disjoint polytopes of
/// the graphs k^{a,b,c}(S) over subsets S of size k. Pieces whose graph has
/// an internal vertex cut off from the source are lower-dimensional and
/// contribute zero.
pub fn psi_via_volumes(n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    if n == 0 {
        return Ok(u64::from(k == 0));
    }
    if a == 0 {
        return Ok(0);
    }
    let mut total = 0;
    for s in SubsetS::all_of_size(n as usize, k as usize) {
        let g = build_kabc_s(n as usize, a as usize, b as usize, c as usize, &s)?;
        total += volume_allowing_degenerate(&g)?;
    }
    Ok(total)
}

/// Phi_n(k,a,b,c) as the sum of K_{k^{a,b,c}}(0, a_1, ..) over netflows with
/// a_i in {a-2+c(i-1), a-1+c(i-1)} and the upper value at exactly n-k
/// indices.
pub fn phi_via_kpf(n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    if n == 0 {
        return Ok(u64::from(k == 0));
    }
    if a == 0 {
        return Ok(0);
    }
    let params = MorrisParams::new(n, a, b, c, k)?;
    let g = build_kabc(n as usize, a as usize, b as usize, c as usize)?;
    let mut total = 0;
    for dropped in SubsetS::all_of_size(n as usize, k as usize) {
        let values: Vec<i64> = (1..=n)
            .map(|i| params.bound(i) - i64::from(dropped.contains(i as usize)))
            .collect();
        total += kpf(&g, &bound_netflow(&params, &values))?;
    }
    Ok(total)
}

/// Subdivides F_{k^{a,b+1,c}} into the 2^n polytopes F_{k^{a,b,c}(S)} by
/// applying the reduction rule once at each internal vertex, pairing one
/// (0,i) edge against one (i,n+1) edge. Returns all (S, graph) pairs in
/// subset order.
pub fn subdivide_kabc(n: u32, a: u32, b: u32, c: u32) -> Result<Vec<(SubsetS, Multigraph)>> {
    if n == 0 || a == 0 || b == 0 {
        return Err(Error::InvalidParameter("subdivision needs n, a, b >= 1".into()));
    }
    let n = n as usize;
    let root = build_kabc(n, a as usize, (b + 1) as usize, c as usize)?;
    let mut current: Vec<(Vec<usize>, Multigraph)> = vec![(Vec::new(), root)];
    for i in 1..=n {
        let mut next = Vec::with_capacity(current.len() * 2);
        for (s, g) in current {
            let e1 = find_edge(&g, (0, i));
            let e2 = find_edge(&g, (i, n + 1));
            let (g1, g2) = reduce(&g, e1, e2)?;
            // g1 drops an (i,n+1) edge: vertex i keeps a in, b out (i not in S);
            // g2 drops a (0,i) edge: vertex i has a-1 in, b+1 out (i in S).
            next.push((s.clone(), g1));
            let mut s2 = s;
            s2.push(i);
            next.push((s2, g2));
        }
        current = next;
    }
    let mut out: Vec<(SubsetS, Multigraph)> = current
        .into_iter()
        .map(|(s, g)| (SubsetS::new(s), g))
        .collect();
    out.sort_by_key(|(s, _)| s.iter().collect::<Vec<_>>());
    Ok(out)
}

fn find_edge(g: &Multigraph, target: (usize, usize)) -> EdgeId {
    g.edges()
        .iter()
        .position(|&e| e == target)
        .expect("edge present by construction")
}

/// Edge contraction between the flows of k_{n+2}^{1,b,c} with netflow
/// (0, 0, a_2, ...) and the flows of k_{n+1}^{c+1,b,c} with the leading zero
/// dropped. All edges out of vertices 0 and 1 carry zero flow on the large
/// side, so contracting the (0,1) edge relabels everything else in place.
pub struct Contraction {
    from: Multigraph,
    to: Multigraph,
    /// for each edge of `to` with tail >= 1: the matching EdgeId in `from`
    edge_map: Vec<Option<EdgeId>>,
}

impl Contraction {
    /// n, b, c describe the source family k_{n+2}^{1,b,c}; needs n >= 2.
    pub fn new(n: u32, b: u32, c: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("contraction needs n >= 2".into()));
        }
        let from = build_kabc(n as usize, 1, b as usize, c as usize)?;
        let to = build_kabc((n - 1) as usize, (c + 1) as usize, b as usize, c as usize)?;
        let mut used = vec![false; from.edge_count()];
        let mut edge_map = Vec::with_capacity(to.edge_count());
        for &(t, h) in to.edges() {
            if t == 0 {
                edge_map.push(None);
                continue;
            }
            let wanted = (t + 1, h + 1);
            let e = from
                .edges()
                .iter()
                .enumerate()
                .position(|(idx, &edge)| edge == wanted && !used[idx])
                .ok_or_else(|| Error::InvalidParameter("edge correspondence failed".into()))?;
            used[e] = true;
            edge_map.push(Some(e));
        }
        Ok(Self { from, to, edge_map })
    }

    pub fn from_graph(&self) -> &Multigraph {
        &self.from
    }

    pub fn to_graph(&self) -> &Multigraph {
        &self.to
    }

    /// Maps (0, 0, a_2, ..., -sum) to (0, a_2, ..., -sum).
    pub fn map_netflow(&self, a: &NetFlow) -> Result<NetFlow> {
        if a.len() != self.from.vertex_count() {
            return Err(Error::NetflowLength {
                got: a.len(),
                expected: self.from.vertex_count(),
            });
        }
        if a[0] != 0 || a[1] != 0 {
            return Err(Error::FlowPrecondition(
                "contraction needs zero netflow at vertices 0 and 1".into(),
            ));
        }
        NetFlow::new(a.values()[1..].to_vec())
    }

    /// Contracts a flow; errors if any edge out of vertex 0 or 1 carries
    /// nonzero flow.
    pub fn apply(&self, f: &IntegerFlow) -> Result<IntegerFlow> {
        for (e, &(t, _)) in self.from.edges().iter().enumerate() {
            if t <= 1 && f[e] != 0 {
                return Err(Error::FlowPrecondition(format!(
                    "dropped edge {e} carries flow {}",
                    f[e]
                )));
            }
        }
        let values = self
            .edge_map
            .iter()
            .map(|m| m.map_or(0, |e| f[e]))
            .collect();
        Ok(IntegerFlow::new(values))
    }

    /// Re-inserts the zero flows; errors if a source edge of the small graph
    /// carries nonzero flow.
    pub fn invert(&self, f: &IntegerFlow) -> Result<IntegerFlow> {
        let mut values = vec![0i64; self.from.edge_count()];
        for (idx, m) in self.edge_map.iter().enumerate() {
            match m {
                Some(e) => values[*e] = f[idx],
                None => {
                    if f[idx] != 0 {
                        return Err(Error::FlowPrecondition(format!(
                            "source edge {idx} carries flow {}",
                            f[idx]
                        )));
                    }
                }
            }
        }
        Ok(IntegerFlow::new(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{catalan, narayana};
    use crate::flows::enumerate_flows;
    use crate::formulas;
    use num::{BigInt, BigRational, ToPrimitive};

    fn as_u64(v: BigRational) -> u64 {
        assert!(v.is_integer(), "{v} not integral");
        v.to_integer().to_u64().unwrap()
    }

    #[test]
    fn morris_via_kpf_examples() {
        assert_eq!(morris_via_kpf(2, 1, 1, 1).unwrap(), 1);
        assert_eq!(morris_via_kpf(3, 1, 1, 1).unwrap(), 2);
        // n = 1: weak compositions of a-1 into b parts
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                for c in 0..=2u32 {
                    let expected = crate::exact::binomial(a as i64 + b as i64 - 2, a as i64 - 1)
                        .to_u64()
                        .unwrap();
                    assert_eq!(morris_via_kpf(1, a, b, c).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn morris_three_way_small() {
        for n in 1..=3u32 {
            for a in 1..=3u32 {
                for b in 1..=3u32 {
                    for c in 0..=2u32 {
                        assert_eq!(
                            morris_via_kpf(n, a, b, c).unwrap(),
                            as_u64(formulas::morris(n, a, b, c).unwrap()),
                            "({n},{a},{b},{c})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn psi_via_kpf_spot_values() {
        assert_eq!(psi_via_kpf(2, 1, 2, 1, 1).unwrap(), 6);
        assert_eq!(psi_via_kpf(2, 1, 1, 2, 1).unwrap(), 1);
        // k = 0 reduces to the Morris count
        for a in 1..=3u32 {
            assert_eq!(psi_via_kpf(2, 0, a, 2, 1).unwrap(), morris_via_kpf(2, a, 2, 1).unwrap());
        }
        // relation (star) endpoint: strict at vertex 1 is infeasible for a = 1
        assert_eq!(psi_via_kpf(2, 2, 1, 1, 1).unwrap(), 0);
    }

    #[test]
    fn psi_three_way_grid() {
        for n in 1..=3u32 {
            for a in 1..=3u32 {
                for b in 1..=3u32 {
                    for c in 0..=2u32 {
                        for k in 0..=n {
                            let product = as_u64(formulas::psi_product(n, k, a, b, c).unwrap());
                            let via_kpf = psi_via_kpf(n, k, a, b, c).unwrap();
                            let via_vol = psi_via_volumes(n, k, a, b, c).unwrap();
                            assert_eq!(via_kpf, product, "kpf ({n},{k},{a},{b},{c})");
                            assert_eq!(via_vol, product, "volumes ({n},{k},{a},{b},{c})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn psi_narayana_refinement() {
        for n in 1..=4u32 {
            let prefix: BigInt = (1..n as u64).map(catalan).product();
            for k in 0..=n {
                let expected = narayana(n as u64, k as i64 + 1) * prefix.clone();
                assert_eq!(
                    BigInt::from(psi_via_kpf(n, k, 1, 1, 1).unwrap()),
                    expected,
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn psi_top_value_matches_shifted_morris() {
        // k = n with a >= 2 collapses to M_n(a-1, b+1, c)
        for a in 2..=3u32 {
            for b in 1..=2u32 {
                for c in 0..=2u32 {
                    assert_eq!(
                        psi_via_volumes(2, 2, a, b, c).unwrap(),
                        morris_via_kpf(2, a - 1, b + 1, c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn refinement_sum() {
        for n in 1..=3u32 {
            for a in 1..=3u32 {
                for b in 1..=2u32 {
                    for c in 0..=2u32 {
                        let sum: u64 = (0..=n)
                            .map(|k| psi_via_kpf(n, k, a, b, c).unwrap())
                            .sum();
                        assert_eq!(sum, morris_via_kpf(n, a, b + 1, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn phi_via_kpf_matches_scaled_product() {
        for n in 1..=3u32 {
            for a in 1..=3u32 {
                for b in 1..=3u32 {
                    for c in 0..=2u32 {
                        for k in 0..=n {
                            let expected = formulas::phi_scaled(n, k, a, b, c).unwrap();
                            assert!(expected.is_integer());
                            assert_eq!(
                                BigInt::from(phi_via_kpf(n, k, a, b, c).unwrap()),
                                expected.to_integer(),
                                "({n},{k},{a},{b},{c})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_spot_value() {
        assert_eq!(phi_via_kpf(2, 1, 1, 1, 1).unwrap(), 1);
        assert_eq!(phi_via_kpf(2, 0, 2, 1, 1).unwrap(), morris_via_kpf(2, 2, 1, 1).unwrap());
    }

    #[test]
    fn subdivision_produces_all_s_graphs() {
        let pieces = subdivide_kabc(2, 1, 1, 1).unwrap();
        assert_eq!(pieces.len(), 4);
        let sizes: Vec<usize> = pieces.iter().map(|(s, _)| s.len()).collect();
        assert_eq!(sizes.iter().filter(|&&x| x == 0).count(), 1);
        assert_eq!(sizes.iter().filter(|&&x| x == 1).count(), 2);
        assert_eq!(sizes.iter().filter(|&&x| x == 2).count(), 1);
        for (s, g) in &pieces {
            let expected = build_kabc_s(2, 1, 1, 1, s).unwrap();
            assert!(g.same_edge_multiset(&expected), "S = {:?}", s);
        }
    }

    #[test]
    fn subdivision_volume_sum() {
        for (n, a, b, c) in [(2u32, 1u32, 1u32, 1u32), (2, 2, 1, 1), (3, 1, 1, 1), (2, 2, 2, 2)] {
            let pieces = subdivide_kabc(n, a, b, c).unwrap();
            assert_eq!(pieces.len(), 1 << n);
            let total: u64 = pieces
                .iter()
                .map(|(_, g)| volume_allowing_degenerate(g).unwrap())
                .sum();
            assert_eq!(
                total,
                morris_via_kpf(n, a, b + 1, c).unwrap(),
                "({n},{a},{b},{c})"
            );
        }
    }

    #[test]
    fn contraction_is_a_flow_bijection() {
        let (n, b, c) = (3u32, 1u32, 1u32);
        let contraction = Contraction::new(n, b, c).unwrap();
        // zero flow maps to zero flow
        let zf = IntegerFlow::new(vec![0; contraction.from_graph().edge_count()]);
        let image = contraction.apply(&zf).unwrap();
        assert!(image.values().iter().all(|&x| x == 0));
        assert_eq!(contraction.invert(&image).unwrap(), zf);

        // all Psi-type netflows: counts match and round-trips hold
        let params = MorrisParams::new(n, 1, b, c, 0).unwrap();
        let bounds: Vec<i64> = (1..=n).map(|i| params.bound(i)).collect();
        let mut stack = vec![vec![0i64]];
        for i in 1..n as usize {
            let mut next = Vec::new();
            for prefix in &stack {
                let lo = -prefix.iter().sum::<i64>().max(0);
                for v in lo..=bounds[i] {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            stack = next;
        }
        for internal in stack {
            let mut values = vec![0i64];
            values.extend(&internal);
            values.push(-internal.iter().sum::<i64>());
            let a = NetFlow::new(values).unwrap();
            let small = contraction.map_netflow(&a).unwrap();
            let big_flows = enumerate_flows(contraction.from_graph(), &a).unwrap();
            let small_flows = enumerate_flows(contraction.to_graph(), &small).unwrap();
            assert_eq!(big_flows.len(), small_flows.len(), "netflow {:?}", a);
            let mut images: Vec<IntegerFlow> = big_flows
                .iter()
                .map(|f| {
                    let out = contraction.apply(f).unwrap();
                    assert_eq!(contraction.invert(&out).unwrap(), *f);
                    out
                })
                .collect();
            images.sort();
            assert_eq!(images, small_flows);
        }
    }

    #[test]
    fn contraction_identity_on_psi() {
        // Psi_3(k,1,1,1) = Psi_2(k,2,1,1)
        for k in 0..=2u32 {
            assert_eq!(
                psi_via_kpf(3, k, 1, 1, 1).unwrap(),
                psi_via_kpf(2, k, 2, 1, 1).unwrap(),
                "k={k}"
            );
        }
    }

    #[test]
    fn contraction_rejects_nonzero_dropped_flow() {
        let contraction = Contraction::new(2, 1, 1).unwrap();
        let mut values = vec![0i64; contraction.from_graph().edge_count()];
        values[0] = 1; // a (0,1) edge
        assert!(contraction.apply(&IntegerFlow::new(values)).is_err());
    }
}
