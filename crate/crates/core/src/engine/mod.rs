//! Best approximations, finite approximations and their extensions,
//! splitting, successors in `L(c)`, and limits of nested chains.

mod approximation;
mod split;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::{LinearForm, ParamReal};
use crate::systems::order::{cmp_f, locate_f};
use crate::systems::{max_index, ApproximationSystem};

pub use approximation::{ApproximationChain, FiniteApproximation, FiniteApproximationJson, Index};
pub use split::{find_split, splits_between, SplitTracker};

fn check_depth(sys: &dyn ApproximationSystem, depth: u64) -> Result<()> {
    let max = max_index(sys);
    if depth > max {
        return Err(Error::DepthExhausted(format!(
            "depth {depth} is beyond the largest usable index {max}"
        )));
    }
    Ok(())
}

/// Indices `e <= depth` with `f(e) < c` that beat every earlier f-value
/// below `c`, i.e. `L(c)` cut at `depth`.
pub fn best_left(sys: &dyn ApproximationSystem, c: &ParamReal, depth: u64) -> Result<Vec<u64>> {
    Ok(best_both(sys, c, depth)?.0)
}

/// Mirror of [`best_left`]: `R(c)` cut at `depth`.
pub fn best_right(sys: &dyn ApproximationSystem, c: &ParamReal, depth: u64) -> Result<Vec<u64>> {
    Ok(best_both(sys, c, depth)?.1)
}

/// `(L(c), R(c))` cut at `depth` in one pass.
pub fn best_both(
    sys: &dyn ApproximationSystem,
    c: &ParamReal,
    depth: u64,
) -> Result<(Vec<u64>, Vec<u64>)> {
    check_depth(sys, depth)?;
    let mut left: Vec<u64> = Vec::new();
    let mut right: Vec<u64> = Vec::new();
    for e in 1..=depth {
        match locate_f(sys, c, e)? {
            Ordering::Less => {
                // ties with the running maximum still qualify
                if left.last().map_or(Ok(true), |&m| {
                    cmp_f(sys, e, m).map(|o| o != Ordering::Less)
                })? {
                    left.push(e);
                }
            }
            Ordering::Greater => {
                if right.last().map_or(Ok(true), |&m| {
                    cmp_f(sys, e, m).map(|o| o != Ordering::Greater)
                })? {
                    right.push(e);
                }
            }
            Ordering::Equal => {}
        }
    }
    Ok((left, right))
}

/// Clauses (1)-(3) of a finite approximation up to `d`.
pub fn is_finite_approximation(
    sys: &dyn ApproximationSystem,
    l: &[u64],
    r: &[u64],
    d: u64,
) -> Result<bool> {
    check_depth(sys, d)?;
    let in_range = |s: &[u64]| s.iter().all(|&x| x >= 1 && x <= d);
    let increasing = |s: &[u64]| s.windows(2).all(|w| w[0] < w[1]);
    if !in_range(l) || !in_range(r) || !increasing(l) || !increasing(r) {
        return Ok(false);
    }
    // (2) f increases along L and decreases along R
    for w in l.windows(2) {
        if cmp_f(sys, w[0], w[1])? != Ordering::Less {
            return Ok(false);
        }
    }
    for w in r.windows(2) {
        if cmp_f(sys, w[0], w[1])? != Ordering::Greater {
            return Ok(false);
        }
    }
    // (1) with (2) reduces to max f(L) < min f(R)
    if let (Some(&lm), Some(&rm)) = (l.last(), r.last()) {
        if cmp_f(sys, lm, rm)? != Ordering::Less {
            return Ok(false);
        }
    }
    // (3) with (2): the latest L element up to e sits at or above f(e), or
    // the latest R element up to e sits at or below it
    let (mut li, mut ri) = (0usize, 0usize);
    for e in 1..=d {
        while li < l.len() && l[li] <= e {
            li += 1;
        }
        while ri < r.len() && r[ri] <= e {
            ri += 1;
        }
        let by_left = li > 0 && cmp_f(sys, l[li - 1], e)? != Ordering::Less;
        let by_right = !by_left && ri > 0 && cmp_f(sys, r[ri - 1], e)? != Ordering::Greater;
        if !by_left && !by_right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Picks a rational `c` strictly inside `(max f(L), min f(R))` and checks
/// that best approximations of `c` up to `d` give back `(L, R)`.
pub fn recoverability_check(
    sys: &dyn ApproximationSystem,
    l: &[u64],
    r: &[u64],
    d: u64,
) -> Result<bool> {
    if l.is_empty() || r.is_empty() {
        return Err(Error::InvalidInput("recoverability needs nonempty L and R".into()));
    }
    check_depth(sys, d)?;
    let fl = l.iter().map(|&i| sys.f(i)).collect::<Result<Vec<_>>>()?;
    let fr = r.iter().map(|&i| sys.f(i)).collect::<Result<Vec<_>>>()?;
    let mut lo = fl[0].clone();
    for x in &fl[1..] {
        lo = lo.max(x)?;
    }
    let mut hi = fr[0].clone();
    for x in &fr[1..] {
        hi = hi.min(x)?;
    }
    if lo.compare(&hi)? != Ordering::Less {
        return Err(Error::EmptyGap);
    }
    let c = crate::systems::select::rational_between(&lo, &hi)?;
    let c = ParamReal::Exact(LinearForm::rational(sys.basis(), c));
    let (bl, br) = best_both(sys, &c, d)?;
    let mut ls = l.to_vec();
    let mut rs = r.to_vec();
    ls.sort_unstable();
    rs.sort_unstable();
    Ok(bl == ls && br == rs)
}

/// The unique extension of a finite approximation up to `d2` that keeps
/// `L` unchanged.
pub fn right_extension(
    sys: &dyn ApproximationSystem,
    approx: &FiniteApproximation,
    d2: u64,
) -> Result<FiniteApproximation> {
    if d2 < approx.d {
        return Err(Error::InvalidInput(format!(
            "cannot extend from {} down to {d2}",
            approx.d
        )));
    }
    if !is_finite_approximation(sys, &approx.l, &approx.r, approx.d)? {
        return Err(Error::InvalidInput(format!(
            "{approx} is not a finite approximation"
        )));
    }
    right_extend_unchecked(sys, approx, d2)
}

/// [`right_extension`] without the validity check on the input.
pub fn right_extend_unchecked(
    sys: &dyn ApproximationSystem,
    approx: &FiniteApproximation,
    d2: u64,
) -> Result<FiniteApproximation> {
    check_depth(sys, d2)?;
    let mut r = approx.r.clone();
    let lmax = approx.l.last().copied();
    for e in approx.d + 1..=d2 {
        let above_left = match lmax {
            Some(m) => cmp_f(sys, e, m)? == Ordering::Greater,
            None => true,
        };
        if !above_left {
            continue;
        }
        let below_right = match r.last() {
            Some(&m) => cmp_f(sys, e, m)? == Ordering::Less,
            None => true,
        };
        if below_right {
            r.push(e);
        }
    }
    Ok(FiniteApproximation {
        l: approx.l.clone(),
        r,
        d: d2,
    })
}

/// The least element of `L(c1)` above `e`, searched up to `depth`.
pub fn successor(
    sys: &dyn ApproximationSystem,
    c1: &ParamReal,
    e: u64,
    depth: u64,
) -> Result<u64> {
    successor_iter(sys, c1, e, 1, depth)
}

/// `delta^i(e)`; `delta^0` is the identity.
pub fn successor_iter(
    sys: &dyn ApproximationSystem,
    c1: &ParamReal,
    e: u64,
    i: usize,
    depth: u64,
) -> Result<u64> {
    if i == 0 {
        return Ok(e);
    }
    let left = best_left(sys, c1, depth)?;
    let pos = left.iter().position(|&x| x == e).ok_or_else(|| {
        Error::InvalidInput(format!("{e} is not a best left approximation within depth {depth}"))
    })?;
    left.get(pos + i).copied().ok_or_else(|| {
        Error::DepthExhausted(format!(
            "no {i}-th successor of {e} among best left approximations up to {depth}"
        ))
    })
}

/// `[max f(L_last), min f(R_last)]`, after checking that the chain is
/// strictly increasing in depth, nested, and ends with nonempty sides.
/// Entries with an empty side (the chain may start from one) impose no
/// bound on that side.
pub fn limit_interval(
    sys: &dyn ApproximationSystem,
    chain: &ApproximationChain,
) -> Result<(LinearForm, LinearForm)> {
    let entries = &chain.entries;
    let last = entries
        .last()
        .ok_or_else(|| Error::InvalidChain("empty chain".into()))?;
    for w in entries.windows(2) {
        if w[0].d >= w[1].d {
            return Err(Error::InvalidChain(format!(
                "depths not increasing: {} then {}",
                w[0].d, w[1].d
            )));
        }
        if !w[1].extends(&w[0]) {
            return Err(Error::InvalidChain(format!("{} does not extend {}", w[1], w[0])));
        }
    }
    let (Some(&lm), Some(&rm)) = (last.l.last(), last.r.last()) else {
        return Err(Error::InvalidChain("last entry has an empty side".into()));
    };
    let lo = sys.f(lm)?;
    let hi = sys.f(rm)?;
    if lo.compare(&hi)? != Ordering::Less {
        return Err(Error::InvalidChain(format!("empty bracket at depth {}", last.d)));
    }
    Ok((lo, hi))
}

/// Every entry is a finite approximation up to its own depth and the
/// chain is nested; used on chains read from outside.
pub fn validate_chain(sys: &dyn ApproximationSystem, chain: &ApproximationChain) -> Result<()> {
    limit_interval(sys, chain)?;
    for a in &chain.entries {
        if !is_finite_approximation(sys, &a.l, &a.r, a.d)? {
            return Err(Error::InvalidChain(format!("{a} is not a finite approximation")));
        }
    }
    Ok(())
}
