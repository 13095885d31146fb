//! The selector `g` and the constructive form of its interior property.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::Signed;

use super::order::{partition_point, sort_forms, sorted_indices};
use super::ApproximationSystem;
use crate::error::{Error, Result};
use crate::numeric::basis::LADDER_START;
use crate::numeric::rational::int;
use crate::numeric::{LinearForm, ParamReal, RationalInterval};

/// The `e` (1-based) whose candidate is nearest to `c`; exact ties go to
/// the smaller `e`. A bracket must sit inside a single nearest cell.
pub fn nearest(c: &ParamReal, cands: &[LinearForm]) -> Result<u64> {
    if cands.is_empty() {
        return Err(Error::InvalidInput("no candidates".into()));
    }
    let order = sort_forms(cands)?;
    // runs of equal values collapse to their smallest e
    let mut vals: Vec<(&LinearForm, usize)> = Vec::with_capacity(order.len());
    for &i in &order {
        match vals.last_mut() {
            Some((v, e)) if *v == &cands[i] => *e = (*e).min(i),
            _ => vals.push((&cands[i], i)),
        }
    }
    let mid = |k: usize| vals[k].0.midpoint(vals[k + 1].0);
    let cells = vals.len() - 1;
    match c {
        ParamReal::Exact(x) => {
            let pos = partition_point(cells, |k| Ok(mid(k)?.compare(x)? == Ordering::Less))?;
            if pos < cells && mid(pos)? == *x {
                return Ok(vals[pos].1.min(vals[pos + 1].1) as u64 + 1);
            }
            Ok(vals[pos].1 as u64 + 1)
        }
        ParamReal::Between(lo, hi) => {
            let pos = partition_point(cells, |k| Ok(mid(k)?.compare(lo)? != Ordering::Greater))?;
            if pos < cells && mid(pos)?.compare(hi)? == Ordering::Less {
                return Err(c.unresolved(&mid(pos)?));
            }
            Ok(vals[pos].1 as u64 + 1)
        }
    }
}

/// `g(c, a, b, d)`: `1` when `b <= a` or `d = 1`, else the nearest
/// candidate's index.
pub fn g(
    sys: &dyn ApproximationSystem,
    c: &ParamReal,
    a: &LinearForm,
    b: &LinearForm,
    d: u64,
) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidInput("g needs d >= 1".into()));
    }
    if b.compare(a)? != Ordering::Greater || d == 1 {
        return Ok(1);
    }
    nearest(c, &sys.candidates(a, b, d)?)
}

/// An open rational interval inside `(a, b)` on which `g(., a, b, d) = e`.
pub fn verify_condition_ii(
    sys: &dyn ApproximationSystem,
    a: &LinearForm,
    b: &LinearForm,
    d: u64,
    e: u64,
) -> Result<RationalInterval> {
    if e == 0 || e > d {
        return Err(Error::InvalidInput(format!("need 1 <= e <= d, got e={e}, d={d}")));
    }
    if a.compare(b)? != Ordering::Less {
        return Err(Error::InvalidInput(format!("need a < b, got a={a}, b={b}")));
    }
    let cands = sys.candidates(a, b, d)?;
    verify_condition_ii_with(&cands, a, b, e)
}

/// As [`verify_condition_ii`] with the candidates already computed. The
/// interval is centred on `v = v_e` with radius below
/// `r = min(v - a, b - v, |w - v| / 2 over the other candidates w)`.
pub fn verify_condition_ii_with(
    cands: &[LinearForm],
    a: &LinearForm,
    b: &LinearForm,
    e: u64,
) -> Result<RationalInterval> {
    let v = &cands[(e - 1) as usize];
    let mut r = v.sub(a)?.min(&b.sub(v)?)?;
    let half = crate::numeric::rational::ratio(1, 2);
    for (i, w) in cands.iter().enumerate() {
        if i as u64 == e - 1 {
            continue;
        }
        let diff = w.sub(v)?;
        if diff.is_zero() {
            return Err(Error::EmptyWitness(format!(
                "candidates {} and {e} coincide",
                i + 1
            )));
        }
        // skip neighbours that are clearly farther than 2r
        let (da, ra) = (diff.approx(), r.approx());
        if da.is_finite()
            && ra.is_finite()
            && (da.mid.abs() - da.rad) > 2.0 * (ra.mid + ra.rad) * (1.0 + 1e-12) + 1e-300
        {
            continue;
        }
        let dist = if diff.sign()? < 0 { diff.neg() } else { diff };
        r = r.min(&dist.scale(&half))?;
    }
    if r.sign()? <= 0 {
        return Err(Error::EmptyWitness(format!("candidate {e} is not inside (a, b)")));
    }
    rational_ball(v, &r)
}

/// A rational interval `(p, q)` with `v - r < p < v < q < v + r`.
pub(crate) fn rational_ball(v: &LinearForm, r: &LinearForm) -> Result<RationalInterval> {
    let cap = v.basis().precision_cap();
    let mut p = LADDER_START;
    loop {
        let vi = v.refine(p);
        let ri = r.refine(p);
        if ri.lo.is_positive() {
            let half = &ri.lo / int(2);
            if vi.width() < half {
                return Ok(RationalInterval::new(&vi.hi - &half, &vi.lo + &half));
            }
        }
        if p >= cap {
            return Err(Error::PrecisionCapExceeded {
                cap,
                context: format!("isolating a rational ball around {v}"),
            });
        }
        p = p.saturating_mul(2).min(cap);
    }
}

/// A rational strictly between two forms `lo < hi`.
pub(crate) fn rational_between(lo: &LinearForm, hi: &LinearForm) -> Result<crate::numeric::Rational> {
    let cap = lo.basis().precision_cap();
    let mut p = LADDER_START;
    loop {
        let a = lo.refine(p);
        let b = hi.refine(p);
        if a.hi < b.lo {
            return Ok(crate::numeric::rational::midpoint(&a.hi, &b.lo));
        }
        if p >= cap {
            return Err(Error::PrecisionCapExceeded {
                cap,
                context: format!("separating {lo} from {hi}"),
            });
        }
        p = p.saturating_mul(2).min(cap);
    }
}

/// Distinct gap lengths between the sorted values `f(1..=n)`. On a circle
/// the wrap-around gap is included.
pub fn gap_lengths(sys: &dyn ApproximationSystem, n: u64) -> Result<Vec<LinearForm>> {
    let order = sorted_indices(sys, n)?;
    let vals: Vec<LinearForm> = order.iter().map(|&i| sys.f(i)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |g: LinearForm| {
        if seen.insert(g.terms().to_vec()) {
            out.push(g);
        }
    };
    for w in vals.windows(2) {
        push(w[1].sub(&w[0])?);
    }
    if let (Some(len), Some(first), Some(last)) = (sys.circle_length(), vals.first(), vals.last()) {
        push(len.sub(last)?.add(first)?);
    }
    Ok(out)
}
