//! The `h1` search shared by the Kronecker and sine systems.
//!
//! `h1(u, d, e)` is the least probe index `n` whose probe value `p(n)` lies
//! in `(f(e), f(e) + u)` with no `f(y)`, `y <= d`, in `(f(e), p(n)]`.

use std::cmp::Ordering;

use super::order::{cmp_f_form, partition_point, sorted_indices};
use super::ApproximationSystem;
use crate::error::{Error, Result};
use crate::numeric::{Approx, LinearForm};

/// The second sequence that `h1` searches.
pub(crate) trait ProbeSequence {
    /// First probe index worth testing against `D <= d`.
    fn probe_start(&self, d: u64) -> u64;
    fn probe_approx(&self, n: u64) -> Approx;
    fn probe(&self, n: u64) -> Result<LinearForm>;
}

fn check_args(sys: &dyn ApproximationSystem, u: &LinearForm, d: u64, e: u64) -> Result<()> {
    if e == 0 || e > d {
        return Err(Error::InvalidInput(format!("h1 needs 1 <= e <= d, got e={e}, d={d}")));
    }
    super::check_index(sys, d)?;
    if u.sign()? <= 0 {
        return Err(Error::InvalidInput(format!("h1 needs u > 0, got {u}")));
    }
    Ok(())
}

/// Whether `p(n) - f(e) < u`.
fn within(
    sys: &dyn ApproximationSystem,
    probes: &dyn ProbeSequence,
    n: u64,
    e: u64,
    u: &LinearForm,
) -> Result<bool> {
    let diff = probes.probe_approx(n).sub(&sys.f_approx(e));
    if let Some(o) = diff.try_cmp(&u.approx()) {
        return Ok(o == Ordering::Less);
    }
    Ok(probes.probe(n)?.sub(&sys.f(e)?)?.compare(u)? == Ordering::Less)
}

/// Direct search for one `e`.
pub(crate) fn h1(
    sys: &dyn ApproximationSystem,
    probes: &dyn ProbeSequence,
    u: &LinearForm,
    d: u64,
    e: u64,
) -> Result<u64> {
    check_args(sys, u, d, e)?;
    let fe = sys.f(e)?;
    // least f-value of D <= d above f(e)
    let mut succ: Option<LinearForm> = None;
    for y in 1..=d {
        if cmp_f_form(sys, y, &fe)? == Ordering::Greater {
            let fy = sys.f(y)?;
            if succ.as_ref().map_or(Ok(true), |s| fy.lt(s))? {
                succ = Some(fy);
            }
        }
    }
    let cap = sys.limits().search_cap;
    let start = probes.probe_start(d);
    for n in start..start.saturating_add(cap) {
        let pa = probes.probe_approx(n);
        let above = match pa.try_cmp(&fe.approx()) {
            Some(o) => o,
            None => probes.probe(n)?.compare(&fe)?,
        };
        if above != Ordering::Greater {
            continue;
        }
        if let Some(s) = &succ {
            let below = match pa.try_cmp(&s.approx()) {
                Some(o) => o,
                None => probes.probe(n)?.compare(s)?,
            };
            if below != Ordering::Less {
                continue;
            }
        }
        if within(sys, probes, n, e, u)? {
            return Ok(n);
        }
    }
    Err(Error::search_cap(cap, format!("h1(u, {d}, {e})")))
}

/// `h1(u, d, e)` for every `e` in `1..=d` with a single pass over the
/// probes: each probe value can only serve the `e` whose f-value is its
/// immediate predecessor among `f(1..=d)`.
pub(crate) fn h1_all(
    sys: &dyn ApproximationSystem,
    probes: &dyn ProbeSequence,
    u: &LinearForm,
    d: u64,
) -> Result<Vec<u64>> {
    check_args(sys, u, d, 1)?;
    let order = sorted_indices(sys, d)?;
    let approx: Vec<Approx> = order.iter().map(|&i| sys.f_approx(i)).collect();
    let mut out = vec![0u64; d as usize];
    let mut remaining = d as usize;
    let cap = sys.limits().search_cap;
    let start = probes.probe_start(d);
    for n in start..start.saturating_add(cap) {
        let pa = probes.probe_approx(n);
        let mut exact: Option<LinearForm> = None;
        let k = partition_point(order.len(), |j| {
            if let Some(o) = approx[j].try_cmp(&pa) {
                return Ok(o == Ordering::Less);
            }
            if exact.is_none() {
                exact = Some(probes.probe(n)?);
            }
            Ok(cmp_f_form(sys, order[j], exact.as_ref().expect("set above"))? == Ordering::Less)
        })?;
        if k == 0 {
            continue;
        }
        let e = order[k - 1];
        if out[(e - 1) as usize] != 0 {
            continue;
        }
        if within(sys, probes, n, e, u)? {
            out[(e - 1) as usize] = n;
            remaining -= 1;
            if remaining == 0 {
                return Ok(out);
            }
        }
    }
    Err(Error::search_cap(
        cap,
        format!("h1 sweep for d = {d} ({remaining} windows still empty)"),
    ))
}
