//! Small exact-arithmetic helpers on top of `num`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `v!` for a vector: the product of the factorials of its entries.
pub fn vec_factorial(v: &[u32]) -> BigInt {
    v.iter().map(|&x| factorial(x)).product()
}

/// Multinomial coefficient `binom(|v|, v) = |v|! / v!`.
pub fn multinomial(v: &[u32]) -> BigInt {
    let total: u32 = v.iter().sum();
    factorial(total) / vec_factorial(v)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    multinomial(&[k, n - k])
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`.
pub fn pochhammer(x: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

pub fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.125"` or
/// `"-1.5e-3"` into an exact rational. Decimals never pass through binary
/// floating point.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(err)?;
        let den = parse_decimal(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(num / den);
    }
    parse_decimal(t).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

/// Lowest-terms rendering: `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rational(x: &BigRational) -> String {
    x.to_string()
}

pub fn to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down very large numerators/denominators before dividing.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
            let n = (x.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            let v = n / d;
            if x.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    values
        .into_iter()
        .fold(BigRational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(".125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("1.5e-1").unwrap(), ratio(3, 20));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&ratio(2, 12)), "1/6");
        assert_eq!(format_rational(&int(3)), "3");
    }

    #[test]
    fn pochhammer_small_values() {
        assert_eq!(pochhammer(&int(1), 4), int(24));
        assert_eq!(pochhammer(&ratio(1, 2), 2), ratio(3, 4));
        assert_eq!(pochhammer(&int(7), 0), int(1));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1]), BigInt::from(3));
        assert_eq!(multinomial(&[]), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }

    #[test]
    fn converts_huge_values_to_float() {
        let big = BigRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
