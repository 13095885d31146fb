use std::cmp::Ordering;

use super::{EncodedParameter, TupleSet};
use crate::engine::{
    best_both, find_split, is_finite_approximation, limit_interval, right_extend_unchecked,
    ApproximationChain, FiniteApproximation,
};
use crate::error::{Error, Result};
use crate::numeric::{LinearForm, ParamReal, Rational};
use crate::systems::order::{cmp_f, cmp_f_form, sorted_indices};
use crate::systems::select::rational_between;
use crate::systems::{max_index, nearest, verify_condition_ii_with, ApproximationSystem};

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PropertyViolation(what()))
    }
}

/// Scans `start, start + 1, ...` for the first index satisfying `hit`,
/// within the depth and search caps.
fn scan(
    sys: &dyn ApproximationSystem,
    start: u64,
    what: &str,
    mut hit: impl FnMut(u64) -> Result<bool>,
) -> Result<u64> {
    let cap = sys.limits().search_cap;
    let max = max_index(sys);
    for step in 0..cap {
        let e = start + step;
        if e > max {
            return Err(Error::DepthExhausted(format!(
                "{what}: nothing found up to index {max}"
            )));
        }
        if hit(e)? {
            return Ok(e);
        }
    }
    Err(Error::search_cap(cap, what.to_string()))
}

/// Moves `x` a third of the way towards `lo`. Halving would stay among
/// the dyadic rationals, which can all be f-values.
fn nudge(lo: &Rational, x: &Rational) -> Rational {
    (lo + x + x) / Rational::from_integer(3.into())
}

fn argmin(sys: &dyn ApproximationSystem, idx: impl IntoIterator<Item = u64>) -> Result<Option<u64>> {
    let mut best: Option<u64> = None;
    for e in idx {
        if best.map_or(Ok(true), |b| cmp_f(sys, e, b).map(|o| o == Ordering::Less))? {
            best = Some(e);
        }
    }
    Ok(best)
}

fn bracket(sys: &dyn ApproximationSystem, a: &FiniteApproximation) -> Result<(LinearForm, LinearForm)> {
    match (a.l.last(), a.r.last()) {
        (Some(&l), Some(&r)) => Ok((sys.f(l)?, sys.f(r)?)),
        _ => Err(Error::PropertyViolation(format!("{a} has an empty side"))),
    }
}

/// An open rational interval `(b1, b2)` inside the previous third-chain
/// bracket on which `g(., max f(L3), min f(R3), d_prev)` is `target`.
pub fn condition_iv_witness(
    sys: &dyn ApproximationSystem,
    chain3_prev: &FiniteApproximation,
    d_prev: u64,
    target: u64,
) -> Result<(LinearForm, LinearForm)> {
    let (a, b) = bracket(sys, chain3_prev)?;
    let cands = sys.candidates(&a, &b, d_prev)?;
    let iv = verify_condition_ii_with(&cands, &a, &b, target)?;
    let basis = sys.basis();
    Ok((LinearForm::rational(basis, iv.lo), LinearForm::rational(basis, iv.hi)))
}

struct State<'a> {
    sys: &'a dyn ApproximationSystem,
    set: &'a TupleSet,
    depths: Vec<u64>,
    chains: [ApproximationChain; 3],
}

impl<'a> State<'a> {
    fn last(&self, i: usize) -> &FiniteApproximation {
        self.chains[i].last().expect("chains start at step 0")
    }

    fn step0(&mut self) -> Result<()> {
        let sys = self.sys;
        let d = self.set.max_entry(1);
        let low = argmin(sys, 1..=d)?.expect("tuple entries are at least 1");
        let d0 = scan(sys, d + 1, "looking for a new minimum", |e| {
            Ok(cmp_f(sys, e, low)? == Ordering::Less)
        })?;
        let basis = sys.basis();
        let exact = |q: Rational| ParamReal::Exact(LinearForm::rational(basis, q));

        // every f(e) with e < d0 is at least f(low)
        let a = rational_between(&sys.f(d0)?, &sys.f(low)?)?;
        let (l1, r1) = best_both(sys, &exact(a), d0)?;
        ensure(l1 == [d0], || format!("first left set is {l1:?}, expected [{d0}]"))?;
        let c1 = FiniteApproximation::new(l1, r1, d0)?;

        let c2 = right_extend_unchecked(sys, &FiniteApproximation::empty(), d0)?;

        let sorted = sorted_indices(sys, d0)?;
        let k = sorted.len() / 2;
        let mid = rational_between(&sys.f(sorted[k - 1])?, &sys.f(sorted[k])?)?;
        let (l3, r3) = best_both(sys, &exact(mid), d0)?;
        let c3 = FiniteApproximation::new(l3, r3, d0)?;

        self.depths.push(d0);
        for (i, a) in [c1, c2, c3].into_iter().enumerate() {
            ensure(is_finite_approximation(sys, &a.l, &a.r, a.d)?, || {
                format!("chain {} at step 0 is not a finite approximation", i + 1)
            })?;
            self.chains[i].push(a);
        }
        ensure(!self.last(2).l.is_empty() && !self.last(2).r.is_empty(), || {
            "third chain starts with an empty side".into()
        })
    }

    fn step(&mut self, n: usize) -> Result<()> {
        let sys = self.sys;
        let m = self.set.m();
        let (s, t) = ((n - 1) / m, (n - 1) % m + 1);
        let target = self.set.tuples()[s][t - 1];
        let prev = *self.depths.last().expect("step 0 ran");
        ensure(prev >= target, || format!("d_{} = {prev} is below {target}", n - 1))?;

        // (A) splitting and (B) past every entry of tuples 0..=n
        let mut d = find_split(sys, prev)?
            .max(self.set.max_entry(n + 1) + 1)
            .max(prev + 1);
        if t == 1 && self.last(1).l.is_empty() {
            // splitting gives no point below the least f-value, so make
            // sure one exists before d_n
            let r2 = *self.last(1).r.last().expect("right extension from nothing is nonempty");
            let below = scan(sys, prev + 1, "looking below the second chain", |e| {
                Ok(cmp_f(sys, e, r2)? == Ordering::Less)
            })?;
            d = d.max(below);
        }

        let (l3, r3) = bracket(sys, self.last(2))?;
        let cands = sys.candidates(&l3, &r3, prev)?;
        let iv = verify_condition_ii_with(&cands, &l3, &r3, target)?;
        let basis = sys.basis();
        let b1 = LinearForm::rational(basis, iv.lo.clone());
        let b2 = LinearForm::rational(basis, iv.hi.clone());

        let mut b3q = iv.midpoint();
        let (dp, c1, dn, b3) = loop {
            let b3 = LinearForm::rational(basis, b3q.clone());
            let Some(dp) = self.inner_depth(d, &b1, &b3, &b2)? else {
                b3q = nudge(&iv.lo, &b3q);
                continue;
            };
            let c1 = right_extend_unchecked(sys, self.last(0), dp)?;
            let lmax = *c1.l.last().expect("first chain is never empty on the left");
            let rmin = *c1.r.last().ok_or_else(|| {
                Error::PropertyViolation("first chain has an empty right side".into())
            })?;
            let mut touched = false;
            let dn = scan(sys, dp + 1, "looking for the next depth", |e| {
                touched |= cmp_f_form(sys, e, &b3)? == Ordering::Equal;
                Ok(cmp_f(sys, e, lmax)? == Ordering::Greater && cmp_f(sys, e, rmin)? == Ordering::Less)
            })?;
            if touched {
                b3q = nudge(&iv.lo, &b3q);
                continue;
            }
            break (dp, c1, dn, b3);
        };

        let mut l1 = c1.l;
        l1.push(dn);
        let c1 = FiniteApproximation::new(l1, c1.r, dn)?;

        let c2 = if t == 1 {
            let prev2 = self.last(1);
            let lo = prev2.l.last().copied();
            let hi = *prev2.r.last().expect("second chain has a right side");
            let mut found = None;
            for e in prev + 1..dn {
                let above = match lo {
                    Some(l) => cmp_f(sys, e, l)? == Ordering::Greater,
                    None => true,
                };
                if above && cmp_f(sys, e, hi)? == Ordering::Less {
                    found = Some(e);
                    break;
                }
            }
            let e = found.ok_or_else(|| {
                Error::PropertyViolation(format!("no new left point for chain 2 in ({prev}, {dn})"))
            })?;
            let mut l2 = prev2.l.clone();
            l2.push(e);
            let seeded = FiniteApproximation::new(l2, prev2.r.clone(), e)?;
            right_extend_unchecked(sys, &seeded, dn)?
        } else {
            right_extend_unchecked(sys, self.last(1), dn)?
        };

        let (l3n, r3n) = best_both(sys, &ParamReal::Exact(b3), dn)?;
        let c3 = FiniteApproximation::new(l3n, r3n, dn)?;

        // (I) to (IV) and validity
        ensure(c1.l.len() == n + 1 && c1.l[..n] == self.depths[..], || {
            format!("(I) fails at step {n}")
        })?;
        ensure(
            dn >= self.set.max_entry(n + 1) && dn > dp,
            || format!("(II) fails at step {n}"),
        )?;
        let hit = c2.l.iter().any(|&x| prev <= x && x <= dn);
        ensure(hit == (t == 1), || format!("(III) fails at step {n}"))?;
        let (nl, nr) = bracket(sys, &c3)?;
        ensure(nl.compare(&b1)? == Ordering::Greater && nr.compare(&b2)? == Ordering::Less, || {
            format!("third chain left (b1, b2) at step {n}")
        })?;
        let g = nearest(&ParamReal::between(nl, nr)?, &cands)?;
        ensure(g == target, || format!("(IV) fails at step {n}: g = {g}, wanted {target}"))?;

        self.depths.push(dn);
        for (i, a) in [c1, c2, c3].into_iter().enumerate() {
            let prev = self.last(i);
            ensure(a.extends(prev) && a.d > prev.d, || {
                format!("chain {} does not extend at step {n}", i + 1)
            })?;
            ensure(is_finite_approximation(sys, &a.l, &a.r, a.d)?, || {
                format!("chain {} at step {n} is not a finite approximation", i + 1)
            })?;
            self.chains[i].push(a);
        }
        Ok(())
    }

    /// Least `d' > d` with `b1 < max f(L(b3) ∩ D<=d') < min f(R(b3) ∩ D<=d') < b2`,
    /// or `None` when some `f(e)`, `e <= d'`, equals `b3`.
    fn inner_depth(&self, d: u64, b1: &LinearForm, b3: &LinearForm, b2: &LinearForm) -> Result<Option<u64>> {
        let sys = self.sys;
        let mut left: Option<u64> = None;
        let mut right: Option<u64> = None;
        let mut touched = false;
        let mut feed = |e: u64, left: &mut Option<u64>, right: &mut Option<u64>| -> Result<()> {
            match cmp_f_form(sys, e, b3)? {
                Ordering::Less => {
                    if left.map_or(Ok(true), |l| cmp_f(sys, e, l).map(|o| o == Ordering::Greater))? {
                        *left = Some(e);
                    }
                }
                Ordering::Greater => {
                    if right.map_or(Ok(true), |r| cmp_f(sys, e, r).map(|o| o == Ordering::Less))? {
                        *right = Some(e);
                    }
                }
                Ordering::Equal => touched = true,
            }
            Ok(())
        };
        for e in 1..=d {
            feed(e, &mut left, &mut right)?;
        }
        let inside = |left: Option<u64>, right: Option<u64>| -> Result<bool> {
            Ok(match (left, right) {
                (Some(l), Some(r)) => {
                    cmp_f_form(sys, l, b1)? == Ordering::Greater
                        && cmp_f_form(sys, r, b2)? == Ordering::Less
                }
                _ => false,
            })
        };
        let done = inside(left, right)?;
        let dp = if done {
            d + 1
        } else {
            scan(sys, d + 1, "bracketing the third parameter", |e| {
                feed(e, &mut left, &mut right)?;
                inside(left, right)
            })?
        };
        if done {
            feed(dp, &mut left, &mut right)?;
        }
        Ok(if touched { None } else { Some(dp) })
    }
}

/// Runs the `m*N` step construction and returns the three chains.
pub fn encode(sys: &dyn ApproximationSystem, set: &TupleSet) -> Result<EncodedParameter> {
    if set.is_empty() {
        return Err(Error::InvalidInput("cannot encode an empty tuple set".into()));
    }
    let max = max_index(sys);
    if let Some(&big) = set.tuples().iter().flatten().max() {
        if big > max {
            return Err(Error::InvalidInput(format!(
                "entry {big} lies outside the usable domain 1..={max}"
            )));
        }
    }
    let mut st = State {
        sys,
        set,
        depths: Vec::new(),
        chains: Default::default(),
    };
    st.step0()?;
    for n in 1..=set.m() * set.len() {
        st.step(n)?;
    }
    let brackets = [
        limit_interval(sys, &st.chains[0])?,
        limit_interval(sys, &st.chains[1])?,
        limit_interval(sys, &st.chains[2])?,
    ];
    Ok(EncodedParameter {
        system: sys.descriptor(),
        m: set.m(),
        n_tuples: set.len(),
        final_depth: *st.depths.last().expect("at least one step"),
        chains: st.chains,
        brackets,
    })
}
