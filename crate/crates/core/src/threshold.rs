//! Exact rational values in the unit interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A rational number in `[0, 1]`, always stored in lowest terms.
///
/// Truth values and literal bounds are both thresholds. Comparison is exact
/// (cross-multiplication in 128 bits), so no floating point ever enters the
/// semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub const ZERO: Threshold = Threshold { num: 0, den: 1 };
    pub const ONE: Threshold = Threshold { num: 1, den: 1 };

    /// Builds `num/den`, reducing it. Fails unless `0 <= num/den <= 1`.
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 || num > den {
            return Err(Error::InvalidThreshold(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Threshold {
            num: num / g,
            den: den / g,
        })
    }

    /// Builds `num/den` only if it is already reduced.
    pub fn new_reduced(num: u64, den: u64) -> Result<Self, Error> {
        let t = Self::new(num, den)?;
        if t.num != num || t.den != den {
            return Err(Error::InvalidThreshold(format!(
                "{num}/{den} is not in lowest terms"
            )));
        }
        Ok(t)
    }

    /// The dyadic rational `bits / 2^lambda`.
    pub fn dyadic(bits: u64, lambda: u32) -> Result<Self, Error> {
        if lambda > 63 {
            return Err(Error::InvalidThreshold(format!(
                "dyadic precision {lambda} exceeds 63 bits"
            )));
        }
        Self::new(bits, 1u64 << lambda)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Threshold {
            num: self.den - self.num,
            den: self.den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The `i`-th binary digit after the point (`i >= 1`) of the expansion
    /// that does not end in an infinite run of ones. `1` itself has all
    /// digits equal to one.
    pub fn binary_digit(&self, i: u32) -> bool {
        if self.is_one() {
            return true;
        }
        let den = self.den as u128;
        let mut rem = self.num as u128;
        let mut digit = false;
        for _ in 0..i {
            rem *= 2;
            digit = rem >= den;
            if digit {
                rem -= den;
            }
        }
        digit
    }

    /// Keeps the first `lambda` binary digits: `floor(self * 2^lambda) / 2^lambda`.
    ///
    /// `1` is a fixed point.
    pub fn truncate_bits(&self, lambda: u32) -> Self {
        assert!(lambda <= 63, "truncation precision must be at most 63 bits");
        if self.is_one() {
            return *self;
        }
        let scaled = ((self.num as u128) << lambda) / self.den as u128;
        Threshold::new(scaled as u64, 1u64 << lambda).expect("truncation stays in [0, 1)")
    }

    /// Number of leading binary digits on which `self` and `other` agree.
    /// Returns `None` if the values are equal.
    pub fn common_binary_prefix(&self, other: &Threshold) -> Option<u32> {
        if self == other {
            return None;
        }
        let mut i = 1;
        loop {
            if self.binary_digit(i) != other.binary_digit(i) {
                return Some(i - 1);
            }
            i += 1;
        }
    }

    /// Lossy conversion for reporting.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Threshold {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Threshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Threshold {
    type Err = Error;

    /// Parses `num/den`; the fraction must already be reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidThreshold(format!("{s}: expected num/den")))?;
        let parse = |part: &str| {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::InvalidThreshold(format!("{s}: bad integer {part:?}")));
            }
            part.parse::<u64>()
                .map_err(|_| Error::InvalidThreshold(format!("{s}: integer out of range")))
        };
        Threshold::new_reduced(parse(n)?, parse(d)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(n: u64, d: u64) -> Threshold {
        Threshold::new(n, d).unwrap()
    }

    #[test]
    fn reduces_and_compares() {
        assert_eq!(t(2, 4), t(1, 2));
        assert!(t(3, 10) < t(1, 2));
        assert_eq!(t(0, 7), Threshold::ZERO);
        assert!(Threshold::new(3, 2).is_err());
        assert!(Threshold::new(1, 0).is_err());
    }

    #[test]
    fn parse_requires_lowest_terms() {
        assert_eq!("3/10".parse::<Threshold>().unwrap(), t(3, 10));
        assert!("2/4".parse::<Threshold>().is_err());
        assert!("0/2".parse::<Threshold>().is_err());
        assert!("-1/2".parse::<Threshold>().is_err());
        assert!("1/2/3".parse::<Threshold>().is_err());
    }

    #[test]
    fn binary_digits() {
        // 0.625 = 0.101
        let x = t(5, 8);
        assert!(x.binary_digit(1));
        assert!(!x.binary_digit(2));
        assert!(x.binary_digit(3));
        assert!(!x.binary_digit(4));
        assert_eq!(x.truncate_bits(2), t(1, 2));
        assert_eq!(x.truncate_bits(0), Threshold::ZERO);
        assert_eq!(Threshold::ONE.truncate_bits(0), Threshold::ONE);
        // 1/3 = 0.010101...
        assert_eq!(t(1, 3).truncate_bits(4), t(5, 16));
    }

    #[test]
    fn common_prefix() {
        assert_eq!(t(1, 4).common_binary_prefix(&t(3, 4)), Some(0));
        // 0.1010 vs 0.1011
        assert_eq!(t(10, 16).common_binary_prefix(&t(11, 16)), Some(3));
        assert_eq!(t(1, 2).common_binary_prefix(&t(1, 2)), None);
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(a in 0u64..1000, b in 1u64..1000, c in 0u64..1000, d in 1u64..1000) {
            prop_assume!(a <= b && c <= d);
            let x = t(a, b);
            let y = t(c, d);
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x == y, a * d == c * b);
        }

        #[test]
        fn truncation_is_floor(bits in 0u64..(1 << 20), lambda in 0u32..20) {
            let x = Threshold::dyadic(bits, 20).unwrap();
            let tr = x.truncate_bits(lambda);
            prop_assert!(tr <= x);
            prop_assert!(x.to_f64() - tr.to_f64() < 2f64.powi(-(lambda as i32)));
            prop_assert_eq!(tr.denom() & (tr.denom() - 1), 0);
            prop_assert!(tr.denom() <= 1 << lambda);
        }
    }
}
