//! Closed-form bounds, threshold roots and factorial moments.

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::erf::erf_inv;

/// Upper bound on the 2-rSAT threshold over `[0, 1]` as printed in the text.
pub const STATED_K2_BOUND: f64 = 12.664;
/// Ratio above which 3-rSAT over `[0, 1]` is almost never satisfiable, as
/// printed in the text.
pub const STATED_K3_BOUND: f64 = 36.1;

const ROOT_TOL: f64 = 1e-9;

fn check_k(k: usize) -> Result<(), Error> {
    if k < 2 {
        return Err(Error::DomainError(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `k c (1 - 2^-k)^(c - 1)`, the per-variable growth of the expected number
/// of satisfying tight interpretations.
pub fn thm1_value(k: usize, c: f64) -> Result<f64, Error> {
    check_k(k)?;
    if !(c > 1.0) {
        return Err(Error::DomainError(format!("c must exceed 1, got {c}")));
    }
    let ln_q = (-(0.5f64.powi(k as i32))).ln_1p();
    Ok(k as f64 * c * ((c - 1.0) * ln_q).exp())
}

/// The `c` where [`thm1_value`] drops through 1, by bisection on the branch
/// past its maximum at `c = -1 / ln(1 - 2^-k)`.
pub fn thm1_root(k: usize) -> Result<f64, Error> {
    check_k(k)?;
    let ln_q = (-(0.5f64.powi(k as i32))).ln_1p();
    let mut lo = (-1.0 / ln_q).max(1.0 + ROOT_TOL);
    let mut hi = 2.0 * lo;
    while thm1_value(k, hi)? >= 1.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if thm1_value(k, mid)? >= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `log_{8/7} v`: above this ratio 3-rSAT over `v` values is almost never
/// satisfiable.
pub fn bejar_bound(v: u64) -> Result<f64, Error> {
    if v < 2 {
        return Err(Error::DomainError(format!("v must be at least 2, got {v}")));
    }
    Ok((v as f64).ln() / (8.0f64 / 7.0).ln())
}

/// Smallest `v` for which [`bejar_bound`] exceeds `thm1_root(3)`, i.e. from
/// which the continuous bound is the better one.
pub fn bejar_crossover() -> u64 {
    let root = thm1_root(3).expect("k = 3 is valid");
    let mut v = 2;
    while bejar_bound(v).expect("v >= 2") <= root {
        v += 1;
    }
    v
}

/// `2 ceil(ln n / ln(c / 2))`, the snake length used for ratio `c > 2`.
pub fn snake_length(n: u64, c: f64) -> Result<usize, Error> {
    if !(c > 2.0) {
        return Err(Error::DomainError(format!("c must exceed 2, got {c}")));
    }
    if n < 2 {
        return Err(Error::DomainError(format!("n must be at least 2, got {n}")));
    }
    let half = ((n as f64).ln() / (c / 2.0).ln()).ceil() as usize;
    Ok(2 * half.max(1))
}

/// Falling factorial `(x)_d`.
pub fn falling_factorial(x: u64, d: u64) -> BigInt {
    if d > x {
        return BigInt::zero();
    }
    (0..d).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

/// `E prod_j (R_j)_{d_j}` for the multinomial occurrence profile of `m`
/// clauses of `k` slots over `n` variables, which equals `(km)_D / n^D` with
/// `D = sum d_j`.
pub fn exact_factorial_moment(n: u32, m: u64, k: usize, d: &[u64]) -> Result<BigRational, Error> {
    if d.len() != n as usize {
        return Err(Error::DomainError(format!("need {n} exponents, got {}", d.len())));
    }
    let total: u64 = d.iter().sum();
    let num = falling_factorial(k as u64 * m, total);
    let den = BigInt::from(n).pow(total as u32);
    Ok(BigRational::new(num, den))
}

/// `(km / n)^D`, the bound the factorial moment never exceeds.
pub fn factorial_moment_bound(n: u32, m: u64, k: usize, d_total: u64) -> BigRational {
    BigRational::new(BigInt::from(k as u64 * m), BigInt::from(n)).pow(d_total as i32)
}

/// `thm1_value(k, m/n)^n`, an upper bound on the expected number of
/// satisfying tight interpretations over `[0, 1]`.
pub fn expected_tight_bound(n: u32, m: u64, k: usize) -> Result<f64, Error> {
    if m <= n as u64 {
        return Err(Error::DomainError(format!("need m > n, got m = {m}, n = {n}")));
    }
    Ok(thm1_value(k, m as f64 / n as f64)?.powi(n as i32))
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64), Error> {
    if trials == 0 || successes > trials {
        return Err(Error::DomainError(format!("{successes} successes in {trials} trials")));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::DomainError(format!("confidence {confidence} outside (0, 1)")));
    }
    let z = std::f64::consts::SQRT_2 * erf_inv(confidence);
    let nt = trials as f64;
    let p = successes as f64 / nt;
    let z2 = z * z;
    let denom = 1.0 + z2 / nt;
    let center = (p + z2 / (2.0 * nt)) / denom;
    let half = z / denom * (p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    Ok((lo, hi))
}

/// The closed-form bounds at one `(k, c, v)` point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub c: f64,
    /// `None` for the continuous set.
    pub v: Option<u64>,
    /// `None` when `c <= 1`.
    pub thm1_value: Option<f64>,
    pub thm1_root: f64,
    /// Only defined for `k = 3` and finite `v`.
    pub bejar_bound: Option<f64>,
}

impl BoundReport {
    pub fn new(k: usize, c: f64, v: Option<u64>) -> Result<Self, Error> {
        Ok(BoundReport {
            k,
            c,
            v,
            thm1_value: if c > 1.0 { Some(thm1_value(k, c)?) } else { None },
            thm1_root: thm1_root(k)?,
            bejar_bound: match v {
                Some(v) if k == 3 => Some(bejar_bound(v)?),
                _ => None,
            },
        })
    }

    /// Whether the first-moment bound already shows unsatisfiability a.a.s.
    pub fn thm1_unsat(&self) -> bool {
        self.thm1_value.is_some_and(|x| x < 1.0)
    }

    pub fn bejar_unsat(&self) -> Option<bool> {
        self.bejar_bound.map(|b| self.c > b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn thm1_examples() {
        assert_eq!(thm1_value(2, 1.0 + 1e-15).map(|x| (x - 2.0).abs() < 1e-12), Ok(true));
        assert!(thm1_value(2, 1.0).is_err());
        assert!(thm1_value(3, 36.1).unwrap() < 1.0);
        let r3 = thm1_root(3).unwrap();
        assert!(r3 > 36.0 && r3 <= 36.1, "{r3}");
        assert!((r3 - 36.07).abs() < 0.05);
        assert!((thm1_value(3, r3).unwrap() - 1.0).abs() < 1e-8);
        let r2 = thm1_root(2).unwrap();
        assert!((r2 - 12.06).abs() < 0.01, "{r2}");
        for k in 2..10 {
            assert!(thm1_root(k + 1).unwrap() > thm1_root(k).unwrap());
        }
    }

    #[test]
    fn bejar_examples() {
        // log base 8/7 of 2 is 1 / log2(8/7) = 1 / (3 - log2 7)
        assert!((bejar_bound(2).unwrap() - 1.0 / (3.0 - 7f64.log2())).abs() < 1e-12);
        assert!((bejar_bound(2).unwrap() - 5.190_9).abs() < 1e-4);
        for t in [5u32, 10, 20, 40] {
            let v = (8.0f64 / 7.0).powi(t as i32).round() as u64;
            assert!((bejar_bound(v).unwrap() - t as f64).abs() < 0.5 / (v as f64) * 8.0);
        }
        let v = bejar_crossover();
        assert!(bejar_bound(v).unwrap() > thm1_root(3).unwrap());
        assert!(bejar_bound(v - 1).unwrap() <= thm1_root(3).unwrap());
        assert_eq!(v, 124);
    }

    #[test]
    fn snake_length_examples() {
        assert_eq!(snake_length(100, 4.0), Ok(14));
        assert_eq!(snake_length(2, 4.0), Ok(2));
        assert!(snake_length(100, 2.0).is_err());
        let mut last = usize::MAX;
        for c in [2.1, 2.5, 3.0, 4.0, 8.0, 100.0] {
            let l = snake_length(1000, c).unwrap();
            assert!(l <= last && l % 2 == 0);
            last = l;
        }
    }

    /// `E prod (R_j)_{d_j}` by enumerating every assignment of the `km`
    /// slots to variables.
    fn enumerate_moment(n: u32, slots: u32, d: &[u64]) -> BigRational {
        let mut sum = BigInt::zero();
        let total = (n as u64).pow(slots);
        for code in 0..total {
            let mut r = vec![0u64; n as usize];
            let mut c = code;
            for _ in 0..slots {
                r[(c % n as u64) as usize] += 1;
                c /= n as u64;
            }
            sum += r
                .iter()
                .zip(d)
                .fold(BigInt::one(), |acc, (&rj, &dj)| acc * falling_factorial(rj, dj));
        }
        BigRational::new(sum, BigInt::from(total))
    }

    #[test]
    fn factorial_moment_examples() {
        let x = exact_factorial_moment(2, 2, 2, &[2, 0]).unwrap();
        assert_eq!(x, BigRational::from_integer(3.into()));
        assert_eq!(x, enumerate_moment(2, 4, &[2, 0]));
        assert!(x <= factorial_moment_bound(2, 2, 2, 2));
        assert_eq!(exact_factorial_moment(3, 4, 3, &[0, 0, 0]).unwrap(), BigRational::one());
    }

    #[test]
    fn expected_tight_bound_example() {
        assert!((expected_tight_bound(4, 8, 2).unwrap() - 81.0).abs() < 1e-9);
        assert!(expected_tight_bound(4, 4, 2).is_err());
    }

    #[test]
    fn wilson_examples() {
        let (lo, _) = wilson_interval(0, 100, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        let (_, hi) = wilson_interval(100, 100, 0.95).unwrap();
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_interval(50, 100, 0.95).unwrap();
        assert!((lo + hi - 1.0).abs() < 1e-12);
        // closed form with z = 1.959964: half-width z/(1+z^2/n) sqrt(1/4n + z^2/4n^2)
        let z: f64 = 1.959_963_984_540_054;
        let want = 2.0 * z / (1.0 + z * z / 100.0) * (0.25 / 100.0 + z * z / 40_000.0).sqrt();
        assert!((hi - lo - want).abs() < 1e-9);
        assert!((hi - lo - 0.19).abs() < 0.01);
        assert!(wilson_interval(5, 4, 0.95).is_err());
        assert!(wilson_interval(0, 0, 0.95).is_err());
    }

    #[test]
    fn bound_report() {
        let r = BoundReport::new(3, 40.0, Some(2)).unwrap();
        assert!(r.thm1_unsat());
        assert_eq!(r.bejar_unsat(), Some(true));
        assert!(!BoundReport::new(2, 1.0, None).unwrap().thm1_unsat());
    }

    proptest! {
        #[test]
        fn moment_matches_enumeration(n in 1u32..=3, m in 1u64..=3, k in 2usize..=3, seed: u64) {
            prop_assume!((n as u64).pow((k as u64 * m) as u32) <= 1 << 12);
            let d: Vec<u64> = (0..n).map(|j| (seed >> (4 * j)) % 4).collect();
            let exact = exact_factorial_moment(n, m, k, &d).unwrap();
            prop_assert_eq!(&exact, &enumerate_moment(n, (k as u64 * m) as u32, &d));
            let total: u64 = d.iter().sum();
            let bound = factorial_moment_bound(n, m, k, total);
            prop_assert!(exact <= bound);
            if total <= 1 {
                prop_assert_eq!(exact, bound);
            } else {
                prop_assert!(exact.to_f64().unwrap() < bound.to_f64().unwrap());
            }
        }

        #[test]
        fn thm1_decreasing_past_root(k in 2usize..=6, dc in 0.01f64..50.0) {
            let r = thm1_root(k).unwrap();
            prop_assert!(thm1_value(k, r + dc).unwrap() < thm1_value(k, r + dc / 2.0).unwrap());
        }
    }
}
