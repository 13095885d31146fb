//! Reference implementations that share no code with the library: exact
//! arithmetic in Q(sqrt 3) for the Kronecker system with `beta = sqrt 3`,
//! the best-approximation and finite-approximation definitions read
//! literally, and a fixed-point evaluator for sums of square roots.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

/// `a + b sqrt 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q3 {
    pub a: Q,
    pub b: Q,
}

fn sgn(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Q3 {
    pub fn rational(a: Q) -> Self {
        Q3 { a, b: Q::zero() }
    }

    pub fn sign(&self) -> i8 {
        let (sa, sb) = (sgn(&self.a), sgn(&self.b));
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: a^2 against 3 b^2
        let d = &self.a * &self.a - Q::from_integer(3.into()) * &self.b * &self.b;
        sgn(&d) * sa
    }

    pub fn sub(&self, o: &Q3) -> Q3 {
        Q3 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn cmp(&self, o: &Q3) -> Ordering {
        self.sub(o).sign().cmp(&0)
    }

    pub fn lt(&self, o: &Q3) -> bool {
        self.cmp(o) == Ordering::Less
    }
}

/// `f(n) = n - k sqrt 3` with `k` the largest integer such that
/// `k sqrt 3 < n`, i.e. `3 k^2 < n^2`.
pub fn kron_f(n: u64) -> Q3 {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let k = ((n2 - 1u32) / 3u32).sqrt();
    Q3 {
        a: Q::from_integer(n.into()),
        b: -Q::from_integer(k),
    }
}

pub fn kron_values(d: u64) -> Vec<Q3> {
    (1..=d).map(kron_f).collect()
}

/// `e` is a best left approximation of `c` when `f(e) < c` and no earlier
/// index has its value strictly between `f(e)` and `c`.
pub fn def1_left(vals: &[Q3], c: &Q3, depth: u64) -> Vec<u64> {
    (1..=depth)
        .filter(|&e| {
            let fe = &vals[e as usize - 1];
            fe.lt(c) && (1..e).all(|x| {
                let fx = &vals[x as usize - 1];
                !(fe.lt(fx) && fx.lt(c))
            })
        })
        .collect()
}

pub fn def1_right(vals: &[Q3], c: &Q3, depth: u64) -> Vec<u64> {
    (1..=depth)
        .filter(|&e| {
            let fe = &vals[e as usize - 1];
            c.lt(fe) && (1..e).all(|x| {
                let fx = &vals[x as usize - 1];
                !(c.lt(fx) && fx.lt(fe))
            })
        })
        .collect()
}

/// Clauses (1) to (3) of the finite-approximation definition, checked
/// pair by pair. `l` and `r` are read as sets.
pub fn literal_finite_approximation(vals: &[Q3], l: &[u64], r: &[u64], d: u64) -> bool {
    let f = |i: u64| &vals[i as usize - 1];
    if l.iter().chain(r).any(|&x| x == 0 || x > d) {
        return false;
    }
    for &x in l {
        for &y in r {
            if !f(x).lt(f(y)) {
                return false;
            }
        }
    }
    for &x in l {
        for &y in l {
            if x < y && !f(x).lt(f(y)) {
                return false;
            }
        }
    }
    for &x in r {
        for &y in r {
            if x < y && !f(y).lt(f(x)) {
                return false;
            }
        }
    }
    (1..=d).all(|e| {
        let fe = f(e);
        l.iter().any(|&x| x <= e && fe.cmp(f(x)) != Ordering::Greater)
            || r.iter().any(|&x| x <= e && f(x).cmp(fe) != Ordering::Greater)
    })
}

/// Every `R' = R + S` with `S` a subset of `(d1, d2]` such that `(L, R')`
/// is a finite approximation up to `d2`.
pub fn exhaustive_right_extensions(vals: &[Q3], l: &[u64], r: &[u64], d1: u64, d2: u64) -> Vec<Vec<u64>> {
    let fresh: Vec<u64> = (d1 + 1..=d2).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << fresh.len()) {
        let mut cand = r.to_vec();
        cand.extend(fresh.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        if literal_finite_approximation(vals, l, &cand, d2) {
            out.push(cand);
        }
    }
    out
}

/// `f` splits between `d1` and `d2`: every pair of values up to `d1` has a
/// value from `(d1, d2]` strictly between them.
pub fn literal_splits(vals: &[Q3], d1: u64, d2: u64) -> bool {
    let f = |i: u64| &vals[i as usize - 1];
    (1..=d1).all(|x| {
        (1..=d1).all(|y| !f(x).lt(f(y)) || (d1 + 1..=d2).any(|z| f(x).lt(f(z)) && f(z).lt(f(y))))
    })
}

/// Fixed-point value of `sum c_i sqrt(k_i)` scaled by `10^digits`, with
/// `k = 1` standing for the rational part. The error is below
/// `sum |c_i|` units after clearing denominators, so the sign is returned
/// only when the value clears that bound.
pub struct RootSum {
    pub terms: Vec<(u64, Q)>,
}

impl RootSum {
    pub fn scaled(&self, digits: u32) -> (BigInt, BigInt, BigInt) {
        let mut den = BigInt::from(1);
        for (_, c) in &self.terms {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let shift = BigInt::from(10).pow(2 * digits);
        let mut acc = BigInt::zero();
        let mut slack = BigInt::zero();
        for (k, c) in &self.terms {
            let ci = c.numer() * (&den / c.denom());
            let root = (BigInt::from(*k) * &shift).sqrt();
            acc += &ci * root;
            slack += ci.abs();
        }
        (acc, slack, den)
    }

    pub fn sign(&self, digits: u32) -> Option<i8> {
        let (acc, slack, _) = self.scaled(digits);
        if acc.abs() <= slack {
            if self.terms.iter().all(|(_, c)| c.is_zero()) {
                return Some(0);
            }
            return None;
        }
        Some(if acc.is_positive() { 1 } else { -1 })
    }

    /// The value as a rational within `10^-(digits - 10)` or so.
    pub fn value(&self, digits: u32) -> Q {
        let (acc, _, den) = self.scaled(digits);
        Q::new(acc, den * BigInt::from(10).pow(digits))
    }
}
