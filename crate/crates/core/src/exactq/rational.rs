//! Scalar helpers around [`BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num-rational`.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `"p"`, `"p/q"` (optionally signed, ASCII hyphen or Unicode minus).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let cleaned: String = text
        .trim()
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .filter(|c| !c.is_whitespace())
        .collect();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    if cleaned.is_empty() {
        return Err(bad());
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

/// `"p"` for integers, `"p/q"` otherwise. Never a float.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple). The zero vector maps to zeros.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q * from_int(&den)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Integer vector scaled by a positive factor so that the gcd is 1.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(from_int).collect()
}

/// Nearest integer, ties rounded up (`floor(q + 1/2)`).
pub fn round_half_up(q: &Rational) -> BigInt {
    (q + frac(1, 2)).floor().to_integer()
}

/// The sign of the first nonzero entry (0 for the zero vector).
pub fn leading_sign(v: &[Rational]) -> i8 {
    v.iter()
        .find(|x| !x.is_zero())
        .map_or(0, |x| if x.is_positive() { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("\u{2212}4/2").unwrap(), rat(-2));
        assert_eq!(parse_rational(" -7 ").unwrap(), rat(-7));
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/-2").is_err());
    }

    #[test]
    fn canonical_form_after_arithmetic() {
        let q = frac(2, -4) + frac(3, 12);
        assert_eq!(q.numer(), &BigInt::from(-1));
        assert_eq!(q.denom(), &BigInt::from(4));
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer(&[frac(1, 2), frac(-3, 4), rat(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        assert_eq!(round_half_up(&frac(-1, 2)), BigInt::from(0));
        assert_eq!(round_half_up(&frac(5, 3)), BigInt::from(2));
    }
}
