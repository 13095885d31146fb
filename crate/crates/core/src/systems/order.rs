//! Ordering helpers: enclosures first, exact comparison only on overlap.

use std::cmp::Ordering;

use super::ApproximationSystem;
use crate::error::Result;
use crate::numeric::{Approx, LinearForm, ParamReal};

/// Order of `f(i)` and `f(j)`.
pub fn cmp_f(sys: &dyn ApproximationSystem, i: u64, j: u64) -> Result<Ordering> {
    if i == j {
        return Ok(Ordering::Equal);
    }
    if let Some(o) = sys.f_approx(i).try_cmp(&sys.f_approx(j)) {
        return Ok(o);
    }
    sys.f(i)?.compare(&sys.f(j)?)
}

/// Order of `f(i)` and `x`.
pub fn cmp_f_form(sys: &dyn ApproximationSystem, i: u64, x: &LinearForm) -> Result<Ordering> {
    if let Some(o) = sys.f_approx(i).try_cmp(&x.approx()) {
        return Ok(o);
    }
    sys.f(i)?.compare(x)
}

/// Where `f(i)` lies relative to the parameter `c`.
pub fn locate_f(sys: &dyn ApproximationSystem, c: &ParamReal, i: u64) -> Result<Ordering> {
    if let Some(o) = c.locate_approx(&sys.f_approx(i)) {
        return Ok(o);
    }
    c.locate(&sys.f(i)?)
}

/// Sorts `items` ascending by value. Items are first ordered by enclosure
/// midpoints, then an insertion pass with the exact comparator repairs any
/// pair whose enclosures overlap; the result is exact whatever the
/// enclosures were.
pub fn sort_by_value<T>(
    mut items: Vec<T>,
    approx: impl Fn(&T) -> Approx,
    mut exact: impl FnMut(&T, &T) -> Result<Ordering>,
) -> Result<Vec<T>> {
    let mut keyed: Vec<(Approx, T)> = items.drain(..).map(|t| (approx(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.mid.total_cmp(&b.0.mid));
    for i in 1..keyed.len() {
        let mut j = i;
        while j > 0 {
            let ord = match keyed[j - 1].0.try_cmp(&keyed[j].0) {
                Some(o) => o,
                None => exact(&keyed[j - 1].1, &keyed[j].1)?,
            };
            if ord == Ordering::Greater {
                keyed.swap(j - 1, j);
                j -= 1;
            } else {
                break;
            }
        }
    }
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Indices `1..=d` sorted by f-value.
pub fn sorted_indices(sys: &dyn ApproximationSystem, d: u64) -> Result<Vec<u64>> {
    sort_by_value((1..=d).collect(), |&i| sys.f_approx(i), |&i, &j| cmp_f(sys, i, j))
}

/// Forms sorted by value, each paired with its original position.
pub fn sort_forms(forms: &[LinearForm]) -> Result<Vec<usize>> {
    sort_by_value(
        (0..forms.len()).collect(),
        |&i| forms[i].approx(),
        |&i, &j| forms[i].compare(&forms[j]),
    )
}

/// Number of entries of the ascending `sorted` list that are below the
/// probe, where `below(k)` says whether `sorted[k] < probe`.
pub fn partition_point(len: usize, mut below: impl FnMut(usize) -> Result<bool>) -> Result<usize> {
    let (mut lo, mut hi) = (0usize, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
