//! Named verification suites behind the `verify` CLI subcommand: each runs a
//! family of cross-checks between independent computation routes and returns
//! one record per comparison.

use crate::digraph::{build_complete, build_gpq, build_kabc, reverse};
use crate::dkk::{clique_to_tree, max_cliques, omega, reverse_framing, theta, theta_pairs, Framing};
use crate::error::{Error, Result};
use crate::exact::{catalan, narayana};
use crate::flows::{enumerate_flows, kpf, IntegerFlow};
use crate::formulas::{
    self, asymptotic_log_morris, morris, morris_a11, morris_a11_determinant, morris_ab1,
    morris_ab2k, morris_m11c_even, morris_m11c_odd, psi_k11c, psi_k1b1, psi_ka11, psi_narayana,
    AsymptoticCase, RelationCheck,
};
use crate::refine::{morris_via_kpf, phi_via_kpf, psi_via_kpf, psi_via_volumes};
use crate::samples::random_connected_graph;
use crate::volumes::{indegree_netflow, volume_via_kpf, volume_via_subdivision};
use num::{BigInt, BigRational, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::str::FromStr;

/// Parameter bounds for suite sweeps: n in 1..=n_max, a,b in 1..=a_max/b_max,
/// c in 0..=c_max.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub n_max: u32,
    pub a_max: u32,
    pub b_max: u32,
    pub c_max: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_max: 3, a_max: 3, b_max: 3, c_max: 2 }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Comma-separated bounds like "n<=3,a<=3,b<=2,c<=1"; omitted variables
    /// keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut grid = GridSpec::default();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (var, bound) = part
                .trim()
                .split_once("<=")
                .ok_or_else(|| Error::InvalidParameter(format!("bad grid clause '{part}'")))?;
            let value: u32 = bound
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad grid bound '{bound}'")))?;
            match var.trim() {
                "n" => grid.n_max = value,
                "a" => grid.a_max = value,
                "b" => grid.b_max = value,
                "c" => grid.c_max = value,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown grid variable '{other}'")))
                }
            }
        }
        Ok(grid)
    }
}

impl GridSpec {
    fn points(&self) -> impl Iterator<Item = (u32, u32, u32, u32)> + '_ {
        let (n_max, a_max, b_max, c_max) = (self.n_max, self.a_max, self.b_max, self.c_max);
        (1..=n_max).flat_map(move |n| {
            (1..=a_max).flat_map(move |a| {
                (1..=b_max).flat_map(move |b| (0..=c_max).map(move |c| (n, a, b, c)))
            })
        })
    }
}

fn record(out: &mut Vec<RelationCheck>, check: &str, params: String, lhs: String, rhs: String) {
    out.push(RelationCheck { relation: check.to_string(), params, pass: lhs == rhs, lhs, rhs });
}

fn record_err(out: &mut Vec<RelationCheck>, check: &str, params: String, err: &Error) {
    out.push(RelationCheck {
        relation: check.to_string(),
        params,
        lhs: format!("error: {err}"),
        rhs: String::new(),
        pass: false,
    });
}

fn record_values<L: ToString, R: ToString>(
    out: &mut Vec<RelationCheck>,
    check: &str,
    params: String,
    lhs: std::result::Result<L, Error>,
    rhs: std::result::Result<R, Error>,
) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => record(out, check, params, l.to_string(), r.to_string()),
        (Err(e), _) | (_, Err(e)) => record_err(out, check, params, &e),
    }
}

fn record_assertion(out: &mut Vec<RelationCheck>, check: &str, params: String, pass: bool, detail: String) {
    out.push(RelationCheck {
        relation: check.to_string(),
        params,
        lhs: detail,
        rhs: "expected".to_string(),
        pass,
    });
}

/// The full recurrence/contraction/symmetry relation suite over the grid,
/// with every relation evaluated from both the closed forms and the flow
/// enumerations.
pub fn suite_relations(grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for (n, a, b, c) in grid.points() {
        out.extend(formulas::check_relations(n, a, b, c));
    }
    out
}

/// Three-way agreement for the Morris constant term: closed form, flow
/// count, and series oracle.
pub fn suite_thm14(grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for (n, a, b, c) in grid.points() {
        let params = format!("n={n} a={a} b={b} c={c}");
        record_values(
            &mut out,
            "morris-formula-vs-kpf",
            params.clone(),
            morris(n, a, b, c).map(ratio_string),
            morris_via_kpf(n, a, b, c).map(|v| v.to_string()),
        );
        if n <= 3 && a <= 3 && b <= 3 && c <= 2 {
            record_values(
                &mut out,
                "morris-formula-vs-ct",
                params,
                morris(n, a, b, c).map(ratio_string),
                crate::ctseries::ct_morris(n, a, b, c).map(|v| v.to_string()),
            );
        }
    }
    out
}

fn ratio_string(v: BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        v.to_string()
    }
}

/// Four-way agreement for the refinement: product formula, bounded-netflow
/// counts, S-graph volumes, and the series oracle, plus the refinement sum
/// and the Narayana specialization.
pub fn suite_thm16(grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for (n, a, b, c) in grid.points() {
        for k in 0..=n {
            let params = format!("n={n} k={k} a={a} b={b} c={c}");
            record_values(
                &mut out,
                "psi-product-vs-kpf",
                params.clone(),
                formulas::psi_product(n, k, a, b, c).map(ratio_string),
                psi_via_kpf(n, k, a, b, c).map(|v| v.to_string()),
            );
            record_values(
                &mut out,
                "psi-product-vs-volumes",
                params.clone(),
                formulas::psi_product(n, k, a, b, c).map(ratio_string),
                psi_via_volumes(n, k, a, b, c).map(|v| v.to_string()),
            );
            if n <= 3 && a <= 3 && b <= 3 && c <= 2 {
                record_values(
                    &mut out,
                    "psi-product-vs-ct",
                    params,
                    formulas::psi_product(n, k, a, b, c).map(ratio_string),
                    crate::ctseries::ct_psi(n, k, a, b, c).map(|v| v.to_string()),
                );
            }
        }
        let params = format!("n={n} a={a} b={b} c={c}");
        let sum = (0..=n).try_fold(0u64, |acc, k| psi_via_kpf(n, k, a, b, c).map(|v| acc + v));
        record_values(
            &mut out,
            "psi-sum-vs-morris",
            params,
            sum.map(|v| v.to_string()),
            morris_via_kpf(n, a, b + 1, c).map(|v| v.to_string()),
        );
    }
    // paper spot values
    record_values(
        &mut out,
        "psi-spot-value",
        "n=2 k=1 a=2 b=1 c=1".into(),
        psi_via_kpf(2, 1, 2, 1, 1).map(|v| v.to_string()),
        Ok::<_, Error>("6".to_string()),
    );
    record_values(
        &mut out,
        "psi-spot-value",
        "n=2 k=1 a=1 b=2 c=1".into(),
        psi_via_kpf(2, 1, 1, 2, 1).map(|v| v.to_string()),
        Ok::<_, Error>("1".to_string()),
    );
    // Narayana refinement of the CRY volume
    for n in 1..=4u32 {
        let prefix: BigInt = (1..n as u64).map(catalan).product();
        for k in 0..=n {
            record_values(
                &mut out,
                "psi-narayana-refinement",
                format!("n={n} k={k}"),
                psi_via_kpf(n, k, 1, 1, 1).map(|v| v.to_string()),
                Ok::<_, Error>((narayana(n as u64, k as i64 + 1) * prefix.clone()).to_string()),
            );
        }
    }
    out
}

/// Agreement for the factorial-scaled refinement: product formula against
/// bounded-netflow counts, and the series oracle at small n.
pub fn suite_thm62(grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for (n, a, b, c) in grid.points() {
        for k in 0..=n {
            let params = format!("n={n} k={k} a={a} b={b} c={c}");
            record_values(
                &mut out,
                "phi-scaled-vs-kpf",
                params.clone(),
                formulas::phi_scaled(n, k, a, b, c).map(ratio_string),
                phi_via_kpf(n, k, a, b, c).map(|v| v.to_string()),
            );
            if n <= 2 && a <= 3 && b <= 3 && c <= 2 {
                record_values(
                    &mut out,
                    "phi-scaled-vs-ct",
                    params,
                    formulas::phi_scaled(n, k, a, b, c).map(ratio_string),
                    crate::ctseries::ct_phi(n, k, a, b, c).map(|v| v.to_string()),
                );
            }
        }
    }
    out
}

/// The a <-> b symmetry on all three levels: product formula, flow counts,
/// and an explicit flow bijection through the reversed framed graph.
pub fn suite_symmetry(grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    for (n, a, b, c) in grid.points() {
        let params = format!("n={n} a={a} b={b} c={c}");
        record_values(
            &mut out,
            "morris-symmetry-formula",
            params.clone(),
            morris(n, a, b, c).map(ratio_string),
            morris(n, b, a, c).map(ratio_string),
        );
        record_values(
            &mut out,
            "morris-symmetry-kpf",
            params,
            morris_via_kpf(n, a, b, c).map(|v| v.to_string()),
            morris_via_kpf(n, b, a, c).map(|v| v.to_string()),
        );
    }
    // explicit bijection for n = 2, a,b,c <= 2
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for a in 1..=2usize {
        for b in 1..=2usize {
            for c in 1..=2usize {
                let params = format!("n=2 a={a} b={b} c={c}");
                let outcome = (|| -> Result<(usize, usize, bool)> {
                    let g = build_kabc(2, a, b, c)?;
                    let fr = Framing::random(&g, &mut rng);
                    let gr = reverse(&g);
                    let mirror = build_kabc(2, b, a, c)?;
                    if !gr.same_edge_multiset(&mirror) {
                        return Err(Error::InvalidParameter(
                            "reverse of k^{a,b,c} is not k^{b,a,c}".into(),
                        ));
                    }
                    let domain: HashSet<IntegerFlow> =
                        enumerate_flows(&g, &indegree_netflow(&g))?.into_iter().collect();
                    let codomain: HashSet<IntegerFlow> =
                        enumerate_flows(&gr, &indegree_netflow(&gr))?.into_iter().collect();
                    let mut image = HashSet::new();
                    for f in &domain {
                        image.insert(theta(&g, &fr, f)?);
                    }
                    Ok((domain.len(), codomain.len(), image == codomain))
                })();
                match outcome {
                    Ok((d, cd, bij)) => record_assertion(
                        &mut out,
                        "theta-bijection-kabc",
                        params,
                        bij && d == cd,
                        format!("|domain|={d} |codomain|={cd} bijective={bij}"),
                    ),
                    Err(e) => record_err(&mut out, "theta-bijection-kabc", params, &e),
                }
            }
        }
    }
    out
}

/// Clique counts, the prefix-flow bijection, and the reversal bijection on
/// random framed graphs and on the two-level graphs with their spanning-tree
/// correspondence.
pub fn suite_theta(_grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    for trial in 0..20 {
        let g = random_connected_graph(&mut rng, 3, 9);
        let vol = match volume_via_kpf(&g) {
            Ok(v) => v,
            Err(e) => {
                record_err(&mut out, "clique-count-vs-volume", format!("trial={trial}"), &e);
                continue;
            }
        };
        for framing_idx in 0..3 {
            let fr = Framing::random(&g, &mut rng);
            let params = format!("trial={trial} framing={framing_idx}");
            let outcome = (|| -> Result<(u64, bool, bool)> {
                let cliques = max_cliques(&g, &fr)?;
                let sized =
                    cliques.iter().all(|c| c.len() == g.edge_count() - g.internal_count());
                let images: HashSet<IntegerFlow> = cliques
                    .iter()
                    .map(|c| omega(&g, c))
                    .collect::<Result<_>>()?;
                let flows: HashSet<IntegerFlow> =
                    enumerate_flows(&g, &indegree_netflow(&g))?.into_iter().collect();
                let bijective = images.len() == cliques.len() && images == flows;
                Ok((cliques.len() as u64, sized, bijective))
            })();
            match outcome {
                Ok((count, sized, bijective)) => {
                    record(
                        &mut out,
                        "clique-count-vs-volume",
                        params.clone(),
                        count.to_string(),
                        vol.to_string(),
                    );
                    record_assertion(
                        &mut out,
                        "clique-size-and-omega-bijection",
                        params,
                        sized && bijective,
                        format!("sizes_ok={sized} omega_bijective={bijective}"),
                    );
                }
                Err(e) => record_err(&mut out, "clique-count-vs-volume", params, &e),
            }
        }
    }
    // two-level graphs: tree correspondence and the degree-swap bijection
    for p in 1..=4usize {
        for q in 1..=4usize {
            let params = format!("p={p} q={q}");
            let outcome = (|| -> Result<(u64, u64, bool)> {
                let g = build_gpq(p, q)?;
                let fr = Framing::default_for(&g);
                let frr = reverse_framing(&g, &fr);
                let cliques = max_cliques(&g, &fr)?;
                let count = kpf(&g, &indegree_netflow(&g))?;
                let mut swap_ok = true;
                for clique in &cliques {
                    let tree = clique_to_tree(&g, &fr, clique)?;
                    let f = omega(&g, clique)?;
                    let t = theta(&g, &fr, &f)?;
                    let mut left = vec![0i64; p];
                    let mut right = vec![0i64; q];
                    for &(i, j) in &tree {
                        left[i - 1] += 1;
                        right[j - 1] += 1;
                    }
                    for (j, &e) in fr.out_order(1).iter().enumerate() {
                        swap_ok &= f[e] == right[j] - 1;
                    }
                    for (i, &e) in frr.out_order(1).iter().enumerate() {
                        swap_ok &= t[e] == left[i] - 1;
                    }
                }
                Ok((cliques.len() as u64, count, swap_ok))
            })();
            match outcome {
                Ok((cliques, count, swap_ok)) => {
                    let expected = crate::exact::binomial(
                        p as i64 + q as i64 - 2,
                        p as i64 - 1,
                    )
                    .to_u64()
                    .unwrap();
                    record(
                        &mut out,
                        "two-level-lattice-count",
                        params.clone(),
                        count.to_string(),
                        expected.to_string(),
                    );
                    record(
                        &mut out,
                        "two-level-clique-count",
                        params.clone(),
                        cliques.to_string(),
                        expected.to_string(),
                    );
                    record_assertion(
                        &mut out,
                        "two-level-degree-swap",
                        params,
                        swap_ok,
                        format!("tree_degree_swap={swap_ok}"),
                    );
                }
                Err(e) => record_err(&mut out, "two-level-lattice-count", params, &e),
            }
        }
    }
    // theta round-trips through theta_pairs stay within the flow sets
    let mut rng = ChaCha8Rng::seed_from_u64(8192);
    for trial in 0..5 {
        let g = random_connected_graph(&mut rng, 3, 8);
        let fr = Framing::random(&g, &mut rng);
        let params = format!("trial={trial}");
        match (|| -> Result<bool> {
            let pairs = theta_pairs(&g, &fr)?;
            let gr = reverse(&g);
            let codomain: HashSet<IntegerFlow> =
                enumerate_flows(&gr, &indegree_netflow(&gr))?.into_iter().collect();
            let image: HashSet<IntegerFlow> = pairs.iter().map(|(_, t)| t.clone()).collect();
            Ok(image == codomain && image.len() == pairs.len())
        })() {
            Ok(ok) => record_assertion(
                &mut out,
                "theta-bijection-random",
                params,
                ok,
                format!("bijective={ok}"),
            ),
            Err(e) => record_err(&mut out, "theta-bijection-random", params, &e),
        }
    }
    out
}

/// Catalan-family checks: the staircase volumes, the special-case product
/// formulas against the general form, and the Catalan determinant.
pub fn suite_cor_catalan(_grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    // volumes of the complete-graph polytopes: products of Catalan numbers
    for n in 2..=5usize {
        let expected: BigInt = (1..n as u64).map(catalan).product();
        let g = build_complete(n).unwrap();
        record_values(
            &mut out,
            "staircase-volume-kpf",
            format!("n={n}"),
            volume_via_kpf(&g).map(|v| v.to_string()),
            Ok::<_, Error>(expected.to_string()),
        );
        if n <= 4 {
            record_values(
                &mut out,
                "staircase-volume-subdivision",
                format!("n={n}"),
                volume_via_subdivision(&g).map(|v| v.to_string()),
                Ok::<_, Error>(expected.to_string()),
            );
            let fr = Framing::default_for(&g);
            record_values(
                &mut out,
                "staircase-volume-cliques",
                format!("n={n}"),
                max_cliques(&g, &fr).map(|c| c.len().to_string()),
                Ok::<_, Error>(expected.to_string()),
            );
        }
    }
    // special cases vs the general closed form
    for n in 1..=6u32 {
        for a in 1..=4u32 {
            record_values(
                &mut out,
                "special-a11",
                format!("n={n} a={a}"),
                Ok::<_, Error>(ratio_string(morris_a11(n, a))),
                morris(n, a, 1, 1).map(ratio_string),
            );
            if n <= 5 {
                record_values(
                    &mut out,
                    "special-a11-determinant",
                    format!("n={n} a={a}"),
                    Ok::<_, Error>(ratio_string(morris_a11_determinant(n, a))),
                    morris(n, a, 1, 1).map(ratio_string),
                );
            }
            for b in 1..=4u32 {
                record_values(
                    &mut out,
                    "special-ab1",
                    format!("n={n} a={a} b={b}"),
                    Ok::<_, Error>(ratio_string(morris_ab1(n, a, b))),
                    morris(n, a, b, 1).map(ratio_string),
                );
                for k in 1..=2u32 {
                    record_values(
                        &mut out,
                        "special-ab2k",
                        format!("n={n} a={a} b={b} k={k}"),
                        morris_ab2k(n, a, b, k).map(ratio_string),
                        morris(n, a, b, 2 * k).map(ratio_string),
                    );
                }
            }
        }
        for c in [2u32, 4] {
            record_values(
                &mut out,
                "special-m11c-even",
                format!("n={n} c={c}"),
                morris_m11c_even(n, c).map(ratio_string),
                morris(n, 1, 1, c).map(ratio_string),
            );
        }
        for c in [1u32, 3] {
            record_values(
                &mut out,
                "special-m11c-odd",
                format!("n={n} c={c}"),
                morris_m11c_odd(n, c).map(ratio_string),
                morris(n, 1, 1, c).map(ratio_string),
            );
        }
    }
    // refined special cases
    for n in 1..=4u32 {
        for k in 0..=n {
            record_values(
                &mut out,
                "special-psi-ka11",
                format!("n={n} k={k} a=2"),
                Ok::<_, Error>(ratio_string(psi_ka11(n, k, 2))),
                formulas::psi_product(n, k, 2, 1, 1).map(ratio_string),
            );
            record_values(
                &mut out,
                "special-psi-k1b1",
                format!("n={n} k={k} b=2"),
                Ok::<_, Error>(ratio_string(psi_k1b1(n, k, 2))),
                formulas::psi_product(n, k, 1, 2, 1).map(ratio_string),
            );
            record_values(
                &mut out,
                "special-psi-k11c",
                format!("n={n} k={k} c=2"),
                psi_k11c(n, k, 2).map(ratio_string),
                formulas::psi_product(n, k, 1, 1, 2).map(ratio_string),
            );
            record_values(
                &mut out,
                "special-psi-narayana",
                format!("n={n} k={k}"),
                Ok::<_, Error>(ratio_string(psi_narayana(n, k))),
                psi_via_kpf(n, k, 1, 1, 1).map(|v| v.to_string()),
            );
        }
    }
    out
}

/// Log-scale trend checks from exact big-integer values. The per-point
/// residual |log M - predicted|/n stays under 0.25 and, rescaled by n^2,
/// decreases along the sampled points.
pub fn suite_asymptotics(_grid: &GridSpec) -> Vec<RelationCheck> {
    let mut out = Vec::new();
    let mut prev = f64::INFINITY;
    for n in [10u32, 20, 40, 60] {
        match asymptotic_log_morris(AsymptoticCase::M111, n) {
            Ok((pred, exact)) => {
                let residual = (exact - pred).abs() / n as f64;
                record_assertion(
                    &mut out,
                    "asymptotic-m111-residual-bound",
                    format!("n={n}"),
                    residual <= 0.25,
                    format!("|logM-pred|/n = {residual:.6}"),
                );
                let scaled = residual / (n as f64 * n as f64);
                record_assertion(
                    &mut out,
                    "asymptotic-m111-trend",
                    format!("n={n}"),
                    scaled < prev,
                    format!("residual/n^3 = {scaled:.3e}, previous {prev:.3e}"),
                );
                prev = scaled;
            }
            Err(e) => record_err(&mut out, "asymptotic-m111", format!("n={n}"), &e),
        }
    }
    let mut prev = f64::INFINITY;
    for n in [6u32, 8, 10, 12, 14] {
        match asymptotic_log_morris(AsymptoticCase::Mn11, n) {
            Ok((pred, exact)) => {
                let rel = (exact - pred).abs() / pred.abs();
                record_assertion(
                    &mut out,
                    "asymptotic-mn11-trend",
                    format!("n={n}"),
                    rel < prev,
                    format!("relative error {rel:.4}, previous {prev:.4}"),
                );
                prev = rel;
            }
            Err(e) => record_err(&mut out, "asymptotic-mn11", format!("n={n}"), &e),
        }
    }
    let mut prev = f64::INFINITY;
    for n in [6u32, 8, 10, 12] {
        match asymptotic_log_morris(AsymptoticCase::Mnn1, n) {
            Ok((pred, exact)) => {
                let rel = (exact - pred).abs() / pred.abs();
                record_assertion(
                    &mut out,
                    "asymptotic-mnn1-trend",
                    format!("n={n}"),
                    rel < prev,
                    format!("relative error {rel:.4}, previous {prev:.4}"),
                );
                prev = rel;
            }
            Err(e) => record_err(&mut out, "asymptotic-mnn1", format!("n={n}"), &e),
        }
    }
    out
}

/// Runs a suite by name.
pub fn run_suite(name: &str, grid: &GridSpec) -> Result<Vec<RelationCheck>> {
    match name {
        "relations" => Ok(suite_relations(grid)),
        "thm14" => Ok(suite_thm14(grid)),
        "thm16" => Ok(suite_thm16(grid)),
        "thm62" => Ok(suite_thm62(grid)),
        "symmetry" => Ok(suite_symmetry(grid)),
        "theta" => Ok(suite_theta(grid)),
        "cor-catalan" => Ok(suite_cor_catalan(grid)),
        "asymptotics" => Ok(suite_asymptotics(grid)),
        other => Err(Error::InvalidParameter(format!("unknown suite '{other}'"))),
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "relations",
    "thm14",
    "thm16",
    "thm62",
    "symmetry",
    "theta",
    "cor-catalan",
    "asymptotics",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "n<=2,a<=2,b<=2,c<=1".parse().unwrap();
        assert_eq!(g, GridSpec { n_max: 2, a_max: 2, b_max: 2, c_max: 1 });
        let g: GridSpec = "n<=1".parse().unwrap();
        assert_eq!(g.n_max, 1);
        assert_eq!(g.a_max, 3);
        assert!("n<3".parse::<GridSpec>().is_err());
        assert!("q<=3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let grid: GridSpec = "n<=2,a<=2,b<=2,c<=1".parse().unwrap();
        for name in ["thm14", "thm62", "symmetry"] {
            let results = run_suite(name, &grid).unwrap();
            assert!(!results.is_empty());
            for r in &results {
                assert!(r.pass, "{name}: {} {} -> {} vs {}", r.relation, r.params, r.lhs, r.rhs);
            }
        }
    }
}
