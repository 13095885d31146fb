use std::collections::HashSet;

use super::{EncodedParameter, TupleSet};
use crate::engine::{best_both, best_left};
use crate::error::{Error, Result};
use crate::numeric::{LinearForm, ParamReal};
use crate::systems::{g, ApproximationSystem};

/// What the decoder needs to know about `c_1, c_2, c_3` up to some depth.
struct View<'a> {
    l1: &'a [u64],
    l2: &'a [u64],
    l3: &'a [u64],
    r3: &'a [u64],
    c3: &'a ParamReal,
}

/// Last element of `S ∩ D<=d`. On a best-approximation set this is where
/// the max (left) or min (right) of f is attained.
fn last_upto(s: &[u64], d: u64) -> Option<u64> {
    let k = s.partition_point(|&x| x <= d);
    k.checked_sub(1).map(|i| s[i])
}

fn run(sys: &dyn ApproximationSystem, v: View<'_>, m: usize, count: usize) -> Result<TupleSet> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let l1 = v.l1;
    for (k, &e) in l1.iter().enumerate() {
        if out.len() >= count {
            break;
        }
        // e in X_c needs δ(e) and a point of L(c_2) in [e, δ(e)]
        let Some(&next) = l1.get(k + 1) else { break };
        let lo = v.l2.partition_point(|&x| x < e);
        if !v.l2.get(lo).is_some_and(|&x| x <= next) {
            continue;
        }
        let mut tuple = Vec::with_capacity(m);
        for i in 1..=m {
            let di = *l1.get(k + i - 1).ok_or_else(|| {
                Error::DepthExhausted(format!("the {}-th successor of {e} is beyond the depth", i - 1))
            })?;
            let (Some(l), Some(r)) = (last_upto(v.l3, di), last_upto(v.r3, di)) else {
                return Err(Error::InvalidInput(format!(
                    "third parameter has no best approximation on one side up to {di}"
                )));
            };
            let (a, b): (LinearForm, LinearForm) = (sys.f(l)?, sys.f(r)?);
            tuple.push(g(sys, v.c3, &a, &b, di)?);
        }
        if seen.insert(tuple.clone()) {
            out.push(tuple);
        }
    }
    TupleSet::new(m, out)
}

/// Reads `count` tuples off an encoder-produced parameter, using the
/// stored chains for `L(c_i)` and the final third bracket for `c_3`.
pub fn decode(
    sys: &dyn ApproximationSystem,
    param: &EncodedParameter,
    count: usize,
) -> Result<TupleSet> {
    let last = |i: usize| param.chains[i].last().ok_or_else(|| Error::InvalidChain("empty chain".into()));
    let (c1, c2, c3) = (last(0)?, last(1)?, last(2)?);
    let (lo, hi) = &param.brackets[2];
    let c3p = ParamReal::between(lo.clone(), hi.clone())?;
    run(
        sys,
        View {
            l1: &c1.l,
            l2: &c2.l,
            l3: &c3.l,
            r3: &c3.r,
            c3: &c3p,
        },
        param.m,
        count,
    )
}

/// Decodes from three parameters given directly, recomputing the best
/// approximation sets up to `depth`.
pub fn decode_reals(
    sys: &dyn ApproximationSystem,
    c: &[ParamReal; 3],
    m: usize,
    count: usize,
    depth: u64,
) -> Result<TupleSet> {
    if m == 0 {
        return Err(Error::InvalidInput("arity must be at least 1".into()));
    }
    let l1 = best_left(sys, &c[0], depth)?;
    let l2 = best_left(sys, &c[1], depth)?;
    let (l3, r3) = best_both(sys, &c[2], depth)?;
    run(
        sys,
        View {
            l1: &l1,
            l2: &l2,
            l3: &l3,
            r3: &r3,
            c3: &c[2],
        },
        m,
        count,
    )
}
