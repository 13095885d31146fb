//! Binary fixed-point evaluation of the basis constants. Every routine
//! returns an integer `m` together with a documented bound on
//! `|x * 2^w - m|`, from which the caller builds a rational enclosure.

use std::sync::RwLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::RationalInterval;
use super::rational::{dyadic, Rational};

const GUARD: u32 = 64;

/// Enclosure of `sqrt(r)` for positive rational `r`, width at most `2^-bits`.
pub fn sqrt_enclosure(r: &Rational, bits: u32) -> RationalInterval {
    debug_assert!(r.is_positive());
    // sqrt(p/q) = sqrt(p*q) / q
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let s = ((p * q) << (2 * bits)).sqrt();
    let den = BigInt::from_biguint(Sign::Plus, q << bits);
    let s = BigInt::from_biguint(Sign::Plus, s);
    RationalInterval::new(
        Rational::new(s.clone(), den.clone()),
        Rational::new(s + 1, den),
    )
}

/// `sum_k (-1)^k / ((2k+1) x^(2k+1))` scaled by `2^w`, each division
/// truncating; the error is below two units per term.
fn atan_inv(x: u32, w: u32) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

fn pi_machin(w: u32) -> BigInt {
    let wg = w + GUARD;
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let p = atan_inv(5, wg) * 16 - atan_inv(239, wg) * 4;
    p >> GUARD as usize
}

static PI_CACHE: RwLock<Option<(u32, BigInt)>> = RwLock::new(None);

/// `m` with `|pi * 2^w - m| < 2`. Shifting a cached value down keeps the
/// bound: the shifted error is below `2 / 2^s + 1`.
pub fn pi_fixed(w: u32) -> BigInt {
    if let Some((cw, m)) = PI_CACHE.read().expect("pi cache poisoned").as_ref() {
        if *cw >= w {
            return m >> (cw - w) as usize;
        }
    }
    let target = w.max(512).next_power_of_two();
    let m = pi_machin(target);
    let out = &m >> (target - w) as usize;
    let mut slot = PI_CACHE.write().expect("pi cache poisoned");
    if slot.as_ref().is_none_or(|(cw, _)| *cw < target) {
        *slot = Some((target, m));
    }
    out
}

pub fn pi_enclosure(bits: u32) -> RationalInterval {
    let w = bits + 2;
    let m = pi_fixed(w);
    RationalInterval::new(dyadic(&m - 2, w), dyadic(m + 2, w))
}

/// `m` with `|sin(k) * 2^w - m| < 3` for an integer `k`.
pub fn sin_int_fixed(k: &BigInt, w: u32) -> BigInt {
    let kbits = k.bits() as u32;
    let work = w + GUARD + 2 * kbits;
    let wp = work + kbits + 8;
    let pi = pi_fixed(wp);
    let two_pi = &pi << 1;
    let scaled = k << wp as usize;
    // nearest multiple of 2*pi
    let shifted: BigInt = &scaled + (&two_pi >> 1);
    let j = shifted.div_floor(&two_pi);
    let r_wp = &scaled - &j * &two_pi;
    // |r * 2^wp - r_wp| < 4|j| + 1, so after the shift the error is under 2
    let r = r_wp >> (wp - work) as usize;
    let r2 = (&r * &r) >> work as usize;
    let mut sum = r.clone();
    let mut term = r;
    let mut i: u64 = 1;
    loop {
        term = (&term * &r2) >> work as usize;
        term /= BigInt::from((2 * i) * (2 * i + 1));
        if term.is_zero() {
            break;
        }
        if i % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        i += 1;
    }
    sum >> (work - w) as usize
}

pub fn sin_int_enclosure(k: &BigInt, bits: u32) -> RationalInterval {
    let w = bits + 3;
    let m = sin_int_fixed(k, w);
    RationalInterval::new(dyadic(&m - 3, w), dyadic(m + 3, w))
}

/// Quick `(mid, radius)` for `sin(k)` via a 96-bit evaluation.
pub fn sin_int_f64(k: u64) -> (f64, f64) {
    let w = 96;
    let m = sin_int_fixed(&BigInt::from(k), w);
    let mid = m.to_f64().unwrap_or(0.0) / 2f64.powi(w as i32);
    (mid, 3.0 * 2f64.powi(-(w as i32)) + mid.abs() * 2f64.powi(-52))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, to_f64};

    #[test]
    fn sqrt_two_is_enclosed() {
        let iv = sqrt_enclosure(&int(2), 20);
        assert!(&iv.lo * &iv.lo < int(2));
        assert!(&iv.hi * &iv.hi > int(2));
        assert!(iv.width() <= dyadic(BigInt::one(), 20));
    }

    #[test]
    fn sqrt_of_fraction() {
        let r = Rational::new(BigInt::from(2), BigInt::from(3));
        let iv = sqrt_enclosure(&r, 30);
        assert!(&iv.lo * &iv.lo < r && &iv.hi * &iv.hi > r);
    }

    #[test]
    fn pi_matches_known_digits() {
        let iv = pi_enclosure(60);
        let lo = to_f64(&iv.lo);
        let hi = to_f64(&iv.hi);
        assert!(lo <= std::f64::consts::PI + 1e-15 && hi >= std::f64::consts::PI - 1e-15);
        // 3.14159265358979323846264338327950288...
        let digits = Rational::new(
            BigInt::parse_bytes(b"314159265358979323846264338327950288", 10).unwrap(),
            BigInt::from(10).pow(35),
        );
        assert!((&digits - &iv.lo).abs() < dyadic(BigInt::one(), 55));
    }

    #[test]
    fn cached_pi_matches_direct() {
        for w in [10, 100, 700, 1500] {
            let d = pi_machin(w) - pi_fixed(w);
            assert!(d.magnitude() < &num_bigint::BigUint::from(4u32), "w={w}");
        }
    }

    #[test]
    fn sine_agrees_with_libm() {
        for k in [1u64, 2, 3, 11, 355, 100_000] {
            let iv = sin_int_enclosure(&BigInt::from(k), 50);
            let s = (k as f64).sin();
            assert!(to_f64(&iv.lo) - 1e-12 <= s && s <= to_f64(&iv.hi) + 1e-12, "k={k}");
        }
    }

    #[test]
    fn sine_enclosures_shrink() {
        let k = BigInt::from(7);
        let a = sin_int_enclosure(&k, 40);
        let b = sin_int_enclosure(&k, 80);
        assert!(b.width() < a.width());
        assert!(a.intersect(&b).is_some());
    }
}
