//! Scalar abstraction shared by every geometric routine.
//!
//! All predicates are written against [`Scalar`] so the same code runs on
//! exact rationals (the default, used for every correctness-sensitive path)
//! and on `f64` (used for large benchmark sweeps where exactness is not the
//! point).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Ordered field used for coordinates, speeds and travel times.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lower and upper bounds on the square root of a non-negative value.
    ///
    /// Exact types return a tight rational bracket, floating types return the
    /// same value twice.
    fn sqrt_bounds(&self) -> (Self, Self);

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Equality up to the rounding of the type; exact types compare exactly.
    fn near(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for BigRational {
    fn sqrt_bounds(&self) -> (Self, Self) {
        if !self.is_positive() {
            return (Self::zero(), Self::zero());
        }
        // sqrt(n/d) = sqrt(n*d)/d, bracketed at 2^-64 relative to 1/d.
        let scale = BigInt::one() << 64usize;
        let n = self.numer();
        let d = self.denom();
        let radicand = n * d * &scale * &scale;
        let lo = radicand.sqrt();
        let hi = if &lo * &lo == radicand {
            lo.clone()
        } else {
            &lo + BigInt::one()
        };
        let den = d * &scale;
        (BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Scalar for f64 {
    fn sqrt_bounds(&self) -> (Self, Self) {
        let s = self.max(0.0).sqrt();
        (s, s)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn near(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * self.abs().max(other.abs()).max(1.0)
    }
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign<T: Scalar>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Parses `"a/b"`, integers and finite decimals such as `"12.375"` exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if neg { -value } else { value })
}

/// Canonical `"a/b"` (or `"a"` for integers) rendering of an exact value.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/4"), Some(q(3, 4)));
        assert_eq!(parse_rational("12.375"), Some(q(99, 8)));
        assert_eq!(parse_rational("-0.5"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational(".25"), Some(q(1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn format_round_trips() {
        for v in [q(3, 4), q(-7, 2), q(5, 1), q(0, 1)] {
            assert_eq!(parse_rational(&format_rational(&v)), Some(v));
        }
    }

    #[test]
    fn sqrt_bounds_bracket_the_root() {
        let (lo, hi) = q(2, 1).sqrt_bounds();
        assert!(&lo * &lo <= q(2, 1));
        assert!(&hi * &hi >= q(2, 1));
        assert!(hi - lo < q(1, 1_000_000_000));
        let (lo, hi) = q(9, 4).sqrt_bounds();
        assert_eq!(lo, q(3, 2));
        assert_eq!(hi, q(3, 2));
    }
}
