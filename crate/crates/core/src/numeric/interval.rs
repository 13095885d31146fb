use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::rational::{rational_from_pair, rational_to_pair, Rational};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo <= hi`. Whether the endpoints are
/// meant as open or closed is up to the caller; the encoder's brackets and
/// witnesses are open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

pub type RationalInterval = Interval<Rational>;

impl<T> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Interval { lo, hi }
    }
}

impl RationalInterval {
    pub fn point(q: Rational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn checked(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        super::rational::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = if self.lo >= other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi <= other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        })
    }

    /// `q * self`, flipping endpoints when `q` is negative.
    pub fn scale(&self, q: &Rational) -> RationalInterval {
        if q.is_negative() {
            Interval {
                lo: q * &self.hi,
                hi: q * &self.lo,
            }
        } else {
            Interval {
                lo: q * &self.lo,
                hi: q * &self.hi,
            }
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }
}

/// JSON shape `{"lo": ["p","q"], "hi": ["p","q"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalIntervalJson {
    pub lo: [String; 2],
    pub hi: [String; 2],
}

impl From<&RationalInterval> for RationalIntervalJson {
    fn from(iv: &RationalInterval) -> Self {
        RationalIntervalJson {
            lo: rational_to_pair(&iv.lo),
            hi: rational_to_pair(&iv.hi),
        }
    }
}

impl TryFrom<&RationalIntervalJson> for RationalInterval {
    type Error = Error;

    fn try_from(j: &RationalIntervalJson) -> Result<Self> {
        RationalInterval::checked(rational_from_pair(&j.lo)?, rational_from_pair(&j.hi)?)
    }
}
