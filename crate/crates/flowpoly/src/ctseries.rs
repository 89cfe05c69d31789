//! Independent constant-term oracle: a truncated multivariate Laurent-series
//! engine that expands the defining products in the region
//! |x_1| < ... < |x_n| < 1 and extracts the constant term directly.
//!
//! Factor expansion orders are derived from the flow-feasibility bounds, so
//! no term that can reach the constant coefficient is ever dropped; leaving
//! the exponent window is an error, never a silent truncation.

use crate::error::{Error, Result};
use crate::exact::binomial;
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;

/// A truncated Laurent series in `nvars` variables: a sparse coefficient map
/// over exponent vectors, each exponent confined to [-window, window].
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    nvars: usize,
    window: i64,
    terms: HashMap<Vec<i32>, BigRational>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, window: i64) -> Self {
        Self { nvars, window, terms: HashMap::new() }
    }

    pub fn constant(nvars: usize, window: i64, value: BigRational) -> Self {
        let mut s = Self::zero(nvars, window);
        if !value.is_zero() {
            s.terms.insert(vec![0; nvars], value);
        }
        s
    }

    pub fn monomial(nvars: usize, window: i64, exponents: Vec<i32>, coeff: BigRational) -> Result<Self> {
        let mut s = Self::zero(nvars, window);
        s.check_window(&exponents)?;
        if !coeff.is_zero() {
            s.terms.insert(exponents, coeff);
        }
        Ok(s)
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn check_window(&self, exponents: &[i32]) -> Result<()> {
        for &e in exponents {
            if (e as i64).abs() > self.window {
                return Err(Error::WindowOverflow { exponent: e as i64, window: self.window });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        TruncatedSeries { nvars: self.nvars, window: self.window, terms }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut terms: HashMap<Vec<i32>, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                for &e in &exps {
                    if (e as i64).abs() > self.window {
                        return Err(Error::WindowOverflow {
                            exponent: e as i64,
                            window: self.window,
                        });
                    }
                }
                let entry = terms.entry(exps).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries { nvars: self.nvars, window: self.window, terms })
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coefficient(&self, exponents: &[i32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The fully extracted constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Termwise d/dx_var.
    pub fn partial_derivative(&self, var: usize) -> TruncatedSeries {
        let mut terms = HashMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            terms.insert(exps, c * BigRational::from(BigInt::from(e[var])));
        }
        TruncatedSeries { nvars: self.nvars, window: self.window, terms }
    }

    /// Sum of coefficients of all terms with x_var exponent equal to -1,
    /// i.e. the residue in x_var viewed termwise.
    pub fn residue_sum(&self, var: usize) -> BigRational {
        self.terms
            .iter()
            .filter(|(e, _)| e[var] == -1)
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }
}

/// Morris grid limits for the oracle; the window formula is calibrated to
/// these and the evaluation cost grows quickly past them.
fn check_oracle_scale(n: u32, a: u32, b: u32, c: u32) -> Result<()> {
    if n > 3 || a > 3 || b > 3 || c > 2 {
        return Err(Error::InvalidParameter(format!(
            "constant-term oracle accepts n <= 3, a,b <= 3, c <= 2, got ({n},{a},{b},{c})"
        )));
    }
    Ok(())
}

fn window_for(n: u32, a: u32, b: u32, c: u32) -> i64 {
    ((a + b + c * n + 2) * n) as i64
}

/// Per-vertex production p_l = a-1+c(l-1) and the expansion-order bounds
/// B_l = p_l + sum_{i<l} B_i; no monomial with a factor index above its B_l
/// can cancel to the constant term.
fn order_bounds(n: usize, a: i64, c: i64) -> Vec<i64> {
    let mut bounds = Vec::with_capacity(n);
    let mut running = 0i64;
    for l in 0..n {
        let p = a - 1 + c * l as i64;
        let b = p + running;
        bounds.push(b);
        running += b;
    }
    bounds
}

/// Expansion of (1 - x_l)^(-b) up to x_l^order.
fn geometric_power(
    nvars: usize,
    window: i64,
    var: usize,
    b: i64,
    order: i64,
) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::zero(nvars, window);
    for m in 0..=order {
        let mut exps = vec![0i32; nvars];
        exps[var] = m as i32;
        s = s.add(&TruncatedSeries::monomial(
            nvars,
            window,
            exps,
            BigRational::from(binomial(b - 1 + m, m)),
        )?);
    }
    Ok(s)
}

/// Expansion of (1 - x_i/x_j)^(-c) up to (x_i/x_j)^order.
fn ratio_power(
    nvars: usize,
    window: i64,
    i: usize,
    j: usize,
    c: i64,
    order: i64,
) -> Result<TruncatedSeries> {
    if c == 0 {
        return Ok(TruncatedSeries::constant(nvars, window, BigRational::one()));
    }
    let mut s = TruncatedSeries::zero(nvars, window);
    for m in 0..=order {
        let mut exps = vec![0i32; nvars];
        exps[i] = m as i32;
        exps[j] = -(m as i32);
        s = s.add(&TruncatedSeries::monomial(
            nvars,
            window,
            exps,
            BigRational::from(binomial(c - 1 + m, m)),
        )?);
    }
    Ok(s)
}

/// The common Morris integrand without any auxiliary factor: the expansion
/// of prod_i (1-x_i)^(-b) x_i^(-(a-1)) prod_{i<j} (x_j-x_i)^(-c) in the
/// region |x_1| < ... < |x_n| < 1, with (x_j-x_i)^(-c) read as
/// x_j^(-c) (1-x_i/x_j)^(-c).
fn morris_integrand(n: usize, a: i64, b: i64, c: i64, window: i64) -> Result<TruncatedSeries> {
    let bounds = order_bounds(n, a, c);
    let mut acc = TruncatedSeries::constant(n, window, BigRational::one());
    for l in 0..n {
        acc = acc.mul(&geometric_power(n, window, l, b, bounds[l])?)?;
        for j in l + 1..n {
            acc = acc.mul(&ratio_power(n, window, l, j, c, bounds[l])?)?;
        }
    }
    // offset x_l^(-(a-1) - c*l) collects the x_i^(-a+1) factors and the
    // x_j^(-c) prefactors of the region expansion
    let offset: Vec<i32> = (0..n).map(|l| (-(a - 1) - c * l as i64) as i32).collect();
    acc.mul(&TruncatedSeries::monomial(n, window, offset, BigRational::one())?)
}

/// CT of the Morris integrand; must be a nonnegative integer.
pub fn ct_morris(n: u32, a: u32, b: u32, c: u32) -> Result<BigInt> {
    check_oracle_scale(n, a, b, c)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let window = window_for(n, a, b, c);
    let series = morris_integrand(n as usize, a as i64, b as i64, c as i64, window)?;
    rational_to_int(series.constant_term())
}

fn rational_to_int(v: BigRational) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::InvalidParameter(format!("constant term {v} is not an integer")));
    }
    Ok(v.to_integer())
}

/// Subsets of {0, .., n-1} of size k, for the elementary-symmetric factor.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// [t^k] of prod_i (1 + t g_i) is e_k(g_1, ..., g_n); the auxiliary factor
/// g is x/(1-x) for the Psi refinement and x for the Phi refinement.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Auxiliary {
    RatioToOne,
    Linear,
}

fn auxiliary_series(
    kind: Auxiliary,
    nvars: usize,
    window: i64,
    var: usize,
    order: i64,
) -> Result<TruncatedSeries> {
    match kind {
        // x/(1-x) = x + x^2 + ...; empty when no positive power is feasible
        Auxiliary::RatioToOne => {
            let mut s = TruncatedSeries::zero(nvars, window);
            for m in 1..=order {
                let mut exps = vec![0i32; nvars];
                exps[var] = m as i32;
                s = s.add(&TruncatedSeries::monomial(nvars, window, exps, BigRational::one())?);
            }
            Ok(s)
        }
        Auxiliary::Linear => {
            let mut exps = vec![0i32; nvars];
            exps[var] = 1;
            TruncatedSeries::monomial(nvars, window, exps, BigRational::one())
        }
    }
}

fn ct_refined(kind: Auxiliary, n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<BigInt> {
    check_oracle_scale(n, a, b, c)?;
    if k > n {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let nv = n as usize;
    let window = window_for(n, a, b, c);
    let base = morris_integrand(nv, a as i64, b as i64, c as i64, window)?;
    let bounds = order_bounds(nv, a as i64, c as i64);
    let mut total = TruncatedSeries::zero(nv, window);
    for subset in subsets(nv, k as usize) {
        let mut factor = TruncatedSeries::constant(nv, window, BigRational::one());
        for &i in &subset {
            factor = factor.mul(&auxiliary_series(kind, nv, window, i, bounds[i])?)?;
        }
        total = total.add(&base.mul(&factor)?);
    }
    rational_to_int(total.constant_term())
}

/// CT [t^k] with the t-factor prod (1 + t x_i/(1-x_i)).
pub fn ct_psi(n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<BigInt> {
    ct_refined(Auxiliary::RatioToOne, n, k, a, b, c)
}

/// CT [t^k] with the t-factor prod (1 + t x_i).
pub fn ct_phi(n: u32, k: u32, a: u32, b: u32, c: u32) -> Result<BigInt> {
    ct_refined(Auxiliary::Linear, n, k, a, b, c)
}
