//! Exact arithmetic kernel: big integers and rationals, factorials, binomials,
//! Catalan and Narayana numbers, and the gamma function at half-integer
//! arguments carried as exact multiples of powers of sqrt(pi).

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Div, Mul};

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k); zero whenever k < 0, k > n, or n < 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i as i64) / BigInt::from(i + 1);
    }
    acc
}

/// The i-th Catalan number C_i = C(2i, i) / (i + 1).
pub fn catalan(i: u64) -> BigInt {
    binomial(2 * i as i64, i as i64) / BigInt::from(i + 1)
}

/// Narayana number N(n, k) = C(n,k) C(n,k-1) / n for 1 <= k <= n, else 0.
pub fn narayana(n: u64, k: i64) -> BigInt {
    if n == 0 || k < 1 || k > n as i64 {
        return BigInt::zero();
    }
    binomial(n as i64, k) * binomial(n as i64, k - 1) / BigInt::from(n)
}

/// Double factorial x!! (empty product for x <= 0).
pub fn double_factorial(x: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut x = x;
    while x > 0 {
        acc *= BigInt::from(x);
        x -= 2;
    }
    acc
}

/// An exact value q * pi^(m/2) with q rational and m an integer.
///
/// Products and quotients of gamma values at half-integer arguments live in
/// this set; a value converts to a rational only when the pi exponent is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGammaValue {
    coeff: BigRational,
    pi_half_power: i64,
}

impl HalfGammaValue {
    pub fn new(coeff: BigRational, pi_half_power: i64) -> Self {
        Self { coeff, pi_half_power }
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), 0)
    }

    /// sqrt(pi), i.e. Gamma(1/2).
    pub fn sqrt_pi() -> Self {
        Self::new(BigRational::one(), 1)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_half_power(&self) -> i64 {
        self.pi_half_power
    }

    /// Converts to a rational; errors unless the pi exponent is zero.
    pub fn into_rational(self) -> Result<BigRational> {
        if self.pi_half_power != 0 {
            return Err(Error::PiExponent(self.pi_half_power));
        }
        Ok(self.coeff)
    }
}

impl fmt::Display for HalfGammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_half_power == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * pi^({}/2)", self.coeff, self.pi_half_power)
        }
    }
}

impl Mul for HalfGammaValue {
    type Output = HalfGammaValue;
    fn mul(self, rhs: HalfGammaValue) -> HalfGammaValue {
        HalfGammaValue::new(self.coeff * rhs.coeff, self.pi_half_power + rhs.pi_half_power)
    }
}

impl Div for HalfGammaValue {
    type Output = HalfGammaValue;
    fn div(self, rhs: HalfGammaValue) -> HalfGammaValue {
        HalfGammaValue::new(self.coeff / rhs.coeff, self.pi_half_power - rhs.pi_half_power)
    }
}

impl Mul<BigRational> for HalfGammaValue {
    type Output = HalfGammaValue;
    fn mul(self, rhs: BigRational) -> HalfGammaValue {
        HalfGammaValue::new(self.coeff * rhs, self.pi_half_power)
    }
}

/// Gamma(x) for positive x with denominator 1 or 2.
///
/// Integer x gives ((x-1)!, pi^0); half-integer x = k + 1/2 gives
/// ((2k)! / (4^k k!), pi^(1/2)).
pub fn gamma_exact(x: &BigRational) -> Result<HalfGammaValue> {
    if !x.is_positive() {
        return Err(Error::GammaDomain(x.to_string()));
    }
    let denom = x.denom();
    if denom == &BigInt::one() {
        let n: u64 = x
            .numer()
            .try_into()
            .map_err(|_| Error::GammaDomain(x.to_string()))?;
        Ok(HalfGammaValue::new(BigRational::from(factorial(n - 1)), 0))
    } else if denom == &BigInt::from(2) {
        // x = k + 1/2 with k = (2x - 1) / 2 >= 0
        let two_x: u64 = x
            .numer()
            .try_into()
            .map_err(|_| Error::GammaDomain(x.to_string()))?;
        let k = (two_x - 1) / 2;
        let coeff = BigRational::new(factorial(2 * k), BigInt::from(4u8).pow(k as u32) * factorial(k));
        Ok(HalfGammaValue::new(coeff, 1))
    } else {
        Err(Error::GammaDomain(x.to_string()))
    }
}

/// Gamma at a half-integer argument given as twice its value.
pub fn gamma_exact_half(twice_x: i64) -> Result<HalfGammaValue> {
    gamma_exact(&BigRational::new(BigInt::from(twice_x), BigInt::from(2)))
}

/// Natural log of a positive big rational, computed from bit lengths so that
/// astronomically large values stay in range.
pub fn ln_big_rational(x: &BigRational) -> f64 {
    ln_big_int(x.numer()) - ln_big_int(x.denom())
}

fn ln_big_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 512 {
        let (_, digits) = x.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 2f64.powi(64) + *d as f64;
        }
        v.ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        let (_, digits) = top.to_u64_digits();
        (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent oracle: count Dyck paths of length 2n by backtracking.
    fn dyck_count(n: u64) -> u64 {
        fn rec(up: u64, down: u64, n: u64) -> u64 {
            if up == n && down == n {
                return 1;
            }
            let mut total = 0;
            if up < n {
                total += rec(up + 1, down, n);
            }
            if down < up {
                total += rec(up, down + 1, n);
            }
            total
        }
        rec(0, 0, n)
    }

    /// Independent oracle: monotone lattice paths (0,0) -> (n,n) weakly below
    /// the diagonal with exactly `turns` direction changes.
    fn path_turn_count(n: u64, turns: u64) -> u64 {
        fn rec(x: u64, y: u64, n: u64, last: Option<u8>, turns_so_far: u64, want: u64) -> u64 {
            if x == n && y == n {
                return if turns_so_far == want { 1 } else { 0 };
            }
            let mut total = 0;
            // step right
            if x < n {
                let t = turns_so_far + if last == Some(1) { 1 } else { 0 };
                if t <= want {
                    total += rec(x + 1, y, n, Some(0), t, want);
                }
            }
            // step up, staying weakly below y = x
            if y < x {
                let t = turns_so_far + if last == Some(0) { 1 } else { 0 };
                if t <= want {
                    total += rec(x, y + 1, n, Some(1), t, want);
                }
            }
            total
        }
        rec(0, 0, n, None, 0, turns)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, -1), BigInt::zero());
        assert_eq!(binomial(-3, 0), BigInt::zero());
        assert_eq!(binomial(3, 5), BigInt::zero());
        // #lattice points of 1 * Delta^1 with p = q = 2
        assert_eq!(binomial(2, 1), BigInt::from(2));
    }

    #[test]
    fn binomial_pascal_recurrence() {
        for n in 1..50i64 {
            for k in 0..=50i64 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "pascal at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(catalan(3), BigInt::from(5));
        // frozen from the Dyck-path oracle
        assert_eq!(dyck_count(5), 42);
        assert_eq!(catalan(5), BigInt::from(42));
        for n in 0..10 {
            assert_eq!(catalan(n).to_u64().unwrap(), dyck_count(n));
        }
    }

    #[test]
    fn narayana_values() {
        for n in 1..8 {
            assert_eq!(narayana(n, 1), BigInt::one());
        }
        assert_eq!(narayana(2, 3), BigInt::zero());
        assert_eq!(narayana(2, 0), BigInt::zero());
        // frozen from the turn-counting path oracle: 2k - 1 = 3 turns
        assert_eq!(path_turn_count(3, 3), 3);
        assert_eq!(narayana(3, 2), BigInt::from(3));
        for n in 1..6u64 {
            for k in 1..=n {
                assert_eq!(
                    narayana(n, k as i64).to_u64().unwrap(),
                    path_turn_count(n, 2 * k - 1),
                    "narayana({n},{k})"
                );
            }
        }
    }

    #[test]
    fn narayana_sums_to_catalan() {
        for n in 1..=12u64 {
            let sum: BigInt = (1..=n as i64).map(|k| narayana(n, k)).sum();
            assert_eq!(sum, catalan(n));
        }
    }

    #[test]
    fn gamma_at_half() {
        let g = gamma_exact(&rat(1, 2)).unwrap();
        assert_eq!(g, HalfGammaValue::new(rat(1, 1), 1));
    }

    #[test]
    fn gamma_at_integer() {
        let g = gamma_exact(&rat(3, 1)).unwrap();
        assert_eq!(g, HalfGammaValue::new(rat(2, 1), 0));
    }

    #[test]
    fn gamma_at_five_halves() {
        // apply Gamma(x+1) = x Gamma(x) twice from Gamma(1/2)
        let expected = rat(3, 2) * rat(1, 2);
        let g = gamma_exact(&rat(5, 2)).unwrap();
        assert_eq!(g, HalfGammaValue::new(expected, 1));
    }

    #[test]
    fn gamma_rejects_bad_arguments() {
        assert!(gamma_exact(&rat(0, 1)).is_err());
        assert!(gamma_exact(&rat(-3, 2)).is_err());
        assert!(gamma_exact(&rat(1, 3)).is_err());
    }

    #[test]
    fn gamma_functional_equation() {
        // Gamma(x + 1) = x Gamma(x) for x in (1/2)Z, x > 0
        for twice_x in 1..=20i64 {
            let x = rat(twice_x, 2);
            let lhs = gamma_exact(&(x.clone() + BigRational::one())).unwrap();
            let rhs = gamma_exact(&x).unwrap() * x.clone();
            assert_eq!(lhs, rhs, "x = {twice_x}/2");
        }
    }

    #[test]
    fn legendre_duplication() {
        // Gamma(x + 1/2) Gamma(x) = 2^(1-2x) sqrt(pi) Gamma(2x)
        for twice_x in 1..=20i64 {
            let x = rat(twice_x, 2);
            let lhs = gamma_exact(&(x.clone() + rat(1, 2))).unwrap() * gamma_exact(&x).unwrap();
            let pow = 1 - twice_x;
            let two_pow = if pow >= 0 {
                rat(2, 1).pow(pow as i32)
            } else {
                rat(1, 2).pow(-pow as i32)
            };
            let rhs = HalfGammaValue::sqrt_pi()
                * gamma_exact(&(x.clone() * rat(2, 1))).unwrap()
                * two_pow;
            assert_eq!(lhs, rhs, "x = {twice_x}/2");
        }
    }

    #[test]
    fn half_gamma_conversion() {
        assert!(HalfGammaValue::new(rat(3, 4), 1).into_rational().is_err());
        assert_eq!(HalfGammaValue::new(rat(3, 4), 0).into_rational().unwrap(), rat(3, 4));
        let product = gamma_exact(&rat(1, 2)).unwrap() * gamma_exact(&rat(1, 2)).unwrap();
        assert_eq!(product.pi_half_power(), 2);
    }

    #[test]
    fn ln_big_rational_accuracy() {
        let x = BigRational::from(factorial(200));
        let expected: f64 = (2..=200u64).map(|i| (i as f64).ln()).sum();
        assert!((ln_big_rational(&x) - expected).abs() < 1e-6);
        let huge = BigRational::from(BigInt::from(2).pow(10_000));
        assert!((ln_big_rational(&huge) - 10_000.0 * std::f64::consts::LN_2).abs() < 1e-6);
    }
}
