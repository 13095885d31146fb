use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::{LinearForm, Rational};
use crate::systems::order::cmp_f_form;
use crate::systems::{max_index, ApproximationSystem};

/// `(lo_1, hi_1) x ... x (lo_m, hi_m)` with rational sides.
pub type RationalBox = Vec<(Rational, Rational)>;

/// For each box of `w`, one `2m`-tuple `(s_1..s_m, r_1..r_m)` with
/// `(f(s_j), f(r_j))` inside `(lo_j, hi_j)` and containing
/// `[lo_j + margin, hi_j - margin]`. Boxes that the margin empties are
/// skipped.
pub fn cover_open_set(
    sys: &dyn ApproximationSystem,
    w: &[RationalBox],
    margin: &Rational,
    depth: u64,
) -> Result<Vec<Vec<u64>>> {
    if *margin <= Rational::from_integer(0.into()) {
        return Err(Error::InvalidInput("margin must be positive".into()));
    }
    let depth = depth.min(max_index(sys));
    let basis = sys.basis();
    let (ulo, uhi) = sys.interval();
    let form = |q: &Rational| LinearForm::rational(basis, q.clone());
    let mut out = Vec::with_capacity(w.len());
    'boxes: for b in w {
        if b.is_empty() {
            return Err(Error::InvalidInput("box of arity 0".into()));
        }
        let mut left = Vec::with_capacity(b.len());
        let mut right = Vec::with_capacity(b.len());
        for (lo, hi) in b {
            if form(lo).compare(&ulo)? == Ordering::Less || form(hi).compare(&uhi)? == Ordering::Greater {
                return Err(Error::InvalidInput(format!("box side ({lo}, {hi}) leaves U")));
            }
            let (ilo, ihi) = (lo + margin, hi - margin);
            if ilo > ihi {
                continue 'boxes;
            }
            let s = first_in(sys, &form(lo), &form(&ilo), depth)?;
            let r = first_in(sys, &form(&ihi), &form(hi), depth)?;
            left.push(s);
            right.push(r);
        }
        left.extend(right);
        out.push(left);
    }
    Ok(out)
}

/// Least `e <= depth` with `lo < f(e) < hi`.
fn first_in(sys: &dyn ApproximationSystem, lo: &LinearForm, hi: &LinearForm, depth: u64) -> Result<u64> {
    for e in 1..=depth {
        if cmp_f_form(sys, e, lo)? == Ordering::Greater && cmp_f_form(sys, e, hi)? == Ordering::Less {
            return Ok(e);
        }
    }
    Err(Error::DepthExhausted(format!(
        "no f-value in ({lo}, {hi}) up to index {depth}"
    )))
}
