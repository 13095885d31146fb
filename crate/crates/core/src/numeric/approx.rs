//! Cheap rigorous `f64` enclosures. Every exact comparison first asks the
//! enclosures; only overlapping enclosures fall through to exact refinement.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

const U: f64 = 1.0 / 9_007_199_254_740_992.0; // 2^-53
const TINY: f64 = 1e-300;

/// The real value lies in `[mid - rad, mid + rad]`. A non-finite field
/// marks an enclosure that decides nothing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub mid: f64,
    pub rad: f64,
}

impl Approx {
    pub const UNKNOWN: Approx = Approx {
        mid: 0.0,
        rad: f64::INFINITY,
    };

    pub fn exact(x: f64) -> Self {
        Approx { mid: x, rad: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return Approx::exact(0.0);
        }
        match q.to_f64() {
            Some(x) if x.is_finite() && x != 0.0 => Approx {
                mid: x,
                rad: x.abs() * 4.0 * U + TINY,
            },
            _ => Approx::UNKNOWN,
        }
    }

    /// Sign if the enclosure excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if !self.is_finite() {
            return None;
        }
        if self.mid - self.rad > 0.0 {
            Some(1)
        } else if self.mid + self.rad < 0.0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn sub(&self, other: &Approx) -> Approx {
        let mid = self.mid - other.mid;
        Approx {
            mid,
            rad: (self.rad + other.rad + mid.abs() * U) * (1.0 + 4.0 * U) + TINY,
        }
    }

    pub fn add(&self, other: &Approx) -> Approx {
        let mid = self.mid + other.mid;
        Approx {
            mid,
            rad: (self.rad + other.rad + mid.abs() * U) * (1.0 + 4.0 * U) + TINY,
        }
    }

    /// Ordering of the underlying reals when the enclosures are disjoint.
    pub fn try_cmp(&self, other: &Approx) -> Option<Ordering> {
        self.sub(other).sign().map(|s| s.cmp(&0))
    }

    pub fn lo(&self) -> f64 {
        self.mid - self.rad
    }

    pub fn hi(&self) -> f64 {
        self.mid + self.rad
    }
}

/// Double-double approximation of a basis constant:
/// `|value - (hi + lo)| <= err`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolApprox {
    pub hi: f64,
    pub lo: f64,
    pub err: f64,
}

impl SymbolApprox {
    pub const ONE: SymbolApprox = SymbolApprox {
        hi: 1.0,
        lo: 0.0,
        err: 0.0,
    };

    pub fn from_enclosure(lo: &BigRational, hi: &BigRational) -> Self {
        let two = BigRational::from_integer(2.into());
        let mid = (lo + hi) / &two;
        let half_width = (hi - lo) / &two;
        let h = mid.to_f64().unwrap_or(f64::NAN);
        let rest = &mid - BigRational::from_float(h).unwrap_or_else(BigRational::zero);
        let l = rest.to_f64().unwrap_or(f64::NAN);
        let hw = half_width.to_f64().unwrap_or(f64::INFINITY);
        SymbolApprox {
            hi: h,
            lo: l,
            err: hw * (1.0 + 4.0 * U) + l.abs() * 4.0 * U + TINY,
        }
    }
}

/// Accumulates `sum c_i * s_i` in double-double with a running error bound.
/// Coefficients that are integers below 2^53 enter exactly.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    hi: f64,
    lo: f64,
    err: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    /// Adds `c * s`, where `c` carries its own absolute error `c_err`.
    pub fn add_term(&mut self, c: f64, c_err: f64, s: &SymbolApprox) {
        let (p, pe) = two_prod(c, s.hi);
        let tl = c * s.lo;
        let (h, t) = two_sum(self.hi, p);
        self.hi = h;
        let lo = self.lo + t + pe + tl;
        self.err += (self.lo.abs() + t.abs() + pe.abs() + tl.abs()) * 4.0 * U
            + c.abs() * s.err
            + c_err * (s.hi.abs() + s.lo.abs() + s.err);
        self.lo = lo;
    }

    pub fn add_int(&mut self, c: i128, s: &SymbolApprox) {
        let cf = c as f64;
        let c_err = if c.unsigned_abs() < (1u128 << 53) {
            0.0
        } else {
            cf.abs() * U
        };
        self.add_term(cf, c_err, s);
    }

    pub fn finish(&self) -> Approx {
        let mid = self.hi + self.lo;
        let rad = (self.err + mid.abs() * U) * (1.0 + 8.0 * U) + TINY;
        if mid.is_finite() && rad.is_finite() {
            Approx { mid, rad }
        } else {
            Approx::UNKNOWN
        }
    }
}
