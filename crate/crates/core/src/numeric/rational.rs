//! Helpers around `BigRational`: parsing of `p/q` strings, the
//! `["p","q"]` JSON pair, and a few integer utilities.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p/q`, `p`, or `-p/q` with decimal integers. Floating point
/// syntax is rejected on purpose.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_pair(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

pub fn rational_from_pair(pair: &[String; 2]) -> Result<Rational> {
    let num: BigInt = pair[0]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {:?}", pair[0])))?;
    let den: BigInt = pair[1]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {:?}", pair[1])))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Whether a nonnegative rational is the square of a rational.
pub fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    is_square(q.numer()) && is_square(q.denom())
}

fn is_square(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => {
            let r = u.sqrt();
            &r * &r == u
        }
        None => false,
    }
}

/// Bit length of the integer ceiling of |q|; zero for |q| <= 1.
pub fn ceil_log2_abs(q: &Rational) -> u32 {
    let a = q.abs();
    if a <= Rational::one() {
        return 0;
    }
    let c = a.ceil().to_integer();
    let bits = c.bits() as u32;
    // exact power of two needs one bit less
    if c.clone() & (c.clone() - BigInt::one()) == BigInt::zero() {
        bits - 1
    } else {
        bits
    }
}

pub fn biguint_to_rational(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, n))
}

/// `n / 2^shift` as an exact rational.
pub fn dyadic(n: BigInt, shift: u32) -> Rational {
    Rational::new(n, BigInt::one() << shift)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Midpoint of two rationals.
pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}
