//! Scalar abstraction shared by every computation in the crate.
//!
//! The engine is written once against [`Scalar`]. The exact instantiation is
//! [`BigRational`]; `f64` and `f32` are available for quick approximate runs
//! but carry no exactness guarantee, so equality-based checks are only
//! meaningful for the rational type.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Integer;
use num_traits::{NumAssignRef, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Field-like scalar used for worths and payoffs.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Signed + NumAssignRef + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    /// `numer / denom`; `denom` must be nonzero.
    fn from_ratio(numer: i64, denom: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Adds (or, with `subtract`, subtracts) every entry of `table` into each
    /// entry whose index is a strict superset of its own, one bit at a time.
    /// `table.len()` must be a power of two.
    fn subset_transform(table: &mut [Self], subtract: bool)
    where
        Self: Sized,
    {
        if subtract {
            butterfly(table, |lo, hi| *hi -= &*lo);
        } else {
            butterfly(table, |lo, hi| *hi += &*lo);
        }
    }
}

/// Runs `op(lower, upper)` over every pair of table entries that differ in one bit.
fn butterfly<T>(table: &mut [T], op: impl Fn(&mut T, &mut T)) {
    debug_assert!(table.len().is_power_of_two());
    let mut half = 1;
    while half < table.len() {
        for block in table.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi) {
                op(a, b);
            }
        }
        half *= 2;
    }
}

impl Scalar for BigRational {
    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    /// Works on integer numerators over a common denominator, so each step
    /// is a plain big-integer addition with no gcd.
    fn subset_transform(table: &mut [Self], subtract: bool) {
        let denom = table.iter().fold(BigInt::one(), |acc, x| {
            if x.denom().is_one() {
                acc
            } else {
                acc.lcm(x.denom())
            }
        });
        let mut numers: Vec<BigInt> = table
            .iter()
            .map(|x| {
                if denom.is_one() {
                    x.numer().clone()
                } else {
                    x.numer() * (&denom / x.denom())
                }
            })
            .collect();
        if subtract {
            butterfly(&mut numers, |lo, hi| *hi -= &*lo);
        } else {
            butterfly(&mut numers, |lo, hi| *hi += &*lo);
        }
        for (slot, x) in table.iter_mut().zip(numers) {
            *slot = if denom.is_one() {
                BigRational::from_integer(x)
            } else {
                BigRational::new(x, denom.clone())
            };
        }
    }
}

impl Scalar for f64 {
    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_int(value: i64) -> Self {
        value as f32
    }

    fn from_ratio(numer: i64, denom: u64) -> Self {
        (numer as f64 / denom as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

/// Binomial coefficient; exact for every argument this crate uses (n <= 24).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i as u64 + 1);
    }
    acc
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `s! (n-s-1)! / n!`, the probability that a fixed player enters right after
/// a fixed coalition of size `s` that excludes it.
pub fn shapley_weight<T: Scalar>(n: usize, s: usize) -> T {
    debug_assert!(s < n);
    T::from_ratio(1, n as u64 * binomial(n - 1, s))
}

pub(crate) fn sum<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    let mut acc = T::zero();
    for x in values {
        acc += x;
    }
    acc
}

/// Parses an exact rational from an integer (`-12`), a decimal (`2.75`) or a
/// fraction (`7/3`).
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("cannot parse `{text}` as an exact rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_integer(num).ok_or_else(bad)?;
        let den: BigInt = parse_integer(den).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) || int_part.len() - int_digits.len() > 1
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let magnitude: BigInt = if digits.is_empty() {
            return Err(bad());
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(numer, scale));
    }
    Ok(BigRational::from_integer(parse_integer(s).ok_or_else(bad)?))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Formats `x` with `digits` significant digits, `%g` style.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if exponent < -5 || exponent >= digits as i32 {
        let s = format!("{:.*e}", digits.saturating_sub(1), x);
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Exact one for the rational instantiation, handy in tests and examples.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(23, 11), 1_352_078);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(factorial(9), 362_880);
    }

    #[test]
    fn weights_match_factorial_form() {
        for n in 1..=9 {
            for s in 0..n {
                let w: BigRational = shapley_weight(n, s);
                let direct = rat(
                    (factorial(s) * factorial(n - s - 1)) as i64,
                    factorial(n) as i64,
                );
                assert_eq!(w, direct, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("12").unwrap(), rat(12, 1));
        assert_eq!(parse_rational("-7/21").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("2.75").unwrap(), rat(11, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(8.5, 6), "8.5");
        assert_eq!(format_significant(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_significant(-2.0 / 3.0, 6), "-0.666667");
        assert_eq!(format_significant(1234567.0, 6), "1.23457e6");
        assert_eq!(format_significant(11.0, 6), "11");
    }
}
