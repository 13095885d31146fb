use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::systems::order::{cmp_f, partition_point, sorted_indices};
use crate::systems::{max_index, ApproximationSystem};

/// Tracks which gaps between adjacent sorted f-values of `D <= d1` have
/// received a later f-value.
pub struct SplitTracker<'a> {
    sys: &'a dyn ApproximationSystem,
    d1: u64,
    sorted: Vec<u64>,
    filled: Vec<bool>,
    open: usize,
}

impl<'a> SplitTracker<'a> {
    pub fn new(sys: &'a dyn ApproximationSystem, d1: u64) -> Result<Self> {
        let sorted = sorted_indices(sys, d1)?;
        let gaps = sorted.len().saturating_sub(1);
        Ok(SplitTracker {
            sys,
            d1,
            sorted,
            filled: vec![false; gaps],
            open: gaps,
        })
    }

    /// Records `f(e)` for some `e > d1`.
    pub fn feed(&mut self, e: u64) -> Result<()> {
        debug_assert!(e > self.d1);
        if self.open == 0 {
            return Ok(());
        }
        let (sys, sorted) = (self.sys, &self.sorted);
        let pos = partition_point(sorted.len(), |k| Ok(cmp_f(sys, sorted[k], e)? == Ordering::Less))?;
        // pos values lie below f(e); a hit needs one below and one strictly above
        if pos == 0 || pos == sorted.len() || cmp_f(sys, sorted[pos], e)? == Ordering::Equal {
            return Ok(());
        }
        let gap = pos - 1;
        if !self.filled[gap] {
            self.filled[gap] = true;
            self.open -= 1;
        }
        Ok(())
    }

    pub fn is_split(&self) -> bool {
        self.open == 0
    }
}

/// Whether every gap between adjacent sorted f-values of `D <= d1`
/// contains some `f(e)` with `d1 < e <= d2`.
pub fn splits_between(sys: &dyn ApproximationSystem, d1: u64, d2: u64) -> Result<bool> {
    if d1 == 0 || d1 >= d2 {
        return Err(Error::InvalidInput(format!("need 1 <= d1 < d2, got {d1}, {d2}")));
    }
    let mut t = SplitTracker::new(sys, d1)?;
    for e in d1 + 1..=d2 {
        if t.is_split() {
            break;
        }
        t.feed(e)?;
    }
    Ok(t.is_split())
}

/// The least `d2 > d1` such that f splits between `d1` and `d2`.
pub fn find_split(sys: &dyn ApproximationSystem, d1: u64) -> Result<u64> {
    if d1 == 0 {
        return Err(Error::InvalidInput("find_split needs d1 >= 1".into()));
    }
    let mut t = SplitTracker::new(sys, d1)?;
    let cap = sys.limits().search_cap;
    let max = max_index(sys);
    for step in 0..cap {
        let e = d1 + 1 + step;
        if e > max {
            return Err(Error::DepthExhausted(format!(
                "no split after {d1} within the domain (largest index {max})"
            )));
        }
        t.feed(e)?;
        if t.is_split() {
            return Ok(e);
        }
    }
    Err(Error::search_cap(cap, format!("finding a split after {d1}")))
}
