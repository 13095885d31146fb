//! Exact elements of the rational span of an [`IrrationalBasis`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::approx::{Accumulator, Approx};
use super::basis::{IrrationalBasis, LADDER_START};
use super::interval::RationalInterval;
use super::rational::{
    ceil_log2_abs, format_rational, rational_from_pair, rational_to_pair, uint, Rational,
};
use crate::error::{Error, Result};

const U: f64 = 1.0 / 9_007_199_254_740_992.0;

/// `sum c_i * s_i` over a shared basis. Terms are sorted by symbol index and
/// carry nonzero coefficients, so equality of forms is equality of values.
#[derive(Clone)]
pub struct LinearForm {
    basis: Arc<IrrationalBasis>,
    terms: Vec<(u32, Rational)>,
    approx: OnceLock<Approx>,
}

impl PartialEq for LinearForm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) && self.terms == other.terms
    }
}

impl Eq for LinearForm {}

impl std::hash::Hash for LinearForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            if *idx == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                let name = self.basis.entry(*idx).symbol.name();
                if mag.is_one() {
                    write!(f, "[{name}]")?;
                } else {
                    write!(f, "{}*[{name}]", format_rational(&mag))?;
                }
            }
        }
        Ok(())
    }
}

fn merge(
    a: &[(u32, Rational)],
    b: &[(u32, Rational)],
    sb: impl Fn(&Rational) -> Rational,
) -> Vec<(u32, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, sb(&b[j].1)));
            j += 1;
        } else {
            let c = &a[i].1 + sb(&b[j].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl LinearForm {
    fn from_terms(basis: Arc<IrrationalBasis>, terms: Vec<(u32, Rational)>) -> Self {
        LinearForm {
            basis,
            terms,
            approx: OnceLock::new(),
        }
    }

    pub fn zero(basis: &Arc<IrrationalBasis>) -> Self {
        Self::from_terms(basis.clone(), Vec::new())
    }

    pub fn rational(basis: &Arc<IrrationalBasis>, q: Rational) -> Self {
        Self::term(basis, 0, q)
    }

    pub fn integer(basis: &Arc<IrrationalBasis>, n: i64) -> Self {
        Self::rational(basis, Rational::from_integer(BigInt::from(n)))
    }

    /// `q * s_idx`.
    pub fn term(basis: &Arc<IrrationalBasis>, idx: u32, q: Rational) -> Self {
        debug_assert!((idx as usize) < basis.len());
        let terms = if q.is_zero() { Vec::new() } else { vec![(idx, q)] };
        Self::from_terms(basis.clone(), terms)
    }

    pub fn symbol(basis: &Arc<IrrationalBasis>, idx: u32) -> Self {
        Self::term(basis, idx, Rational::one())
    }

    /// Builds a form from `(symbol index, coefficient)` pairs in any order.
    pub fn from_coeffs(
        basis: &Arc<IrrationalBasis>,
        coeffs: impl IntoIterator<Item = (u32, Rational)>,
    ) -> Result<Self> {
        let mut acc = Self::zero(basis);
        for (idx, q) in coeffs {
            if idx as usize >= basis.len() {
                return Err(Error::InvalidInput(format!("symbol index {idx} outside basis")));
            }
            acc = acc.add(&Self::term(basis, idx, q))?;
        }
        Ok(acc)
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    /// Nonzero coefficients, sorted by symbol index.
    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, idx: u32) -> Rational {
        self.terms
            .iter()
            .find(|(i, _)| *i == idx)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Dense coefficient vector over the current basis.
    pub fn coeff_vector(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (i, c) in &self.terms {
            v[*i as usize] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    fn check(&self, other: &LinearForm) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn add(&self, other: &LinearForm) -> Result<LinearForm> {
        self.check(other)?;
        Ok(Self::from_terms(
            self.basis.clone(),
            merge(&self.terms, &other.terms, |c| c.clone()),
        ))
    }

    pub fn sub(&self, other: &LinearForm) -> Result<LinearForm> {
        self.check(other)?;
        Ok(Self::from_terms(
            self.basis.clone(),
            merge(&self.terms, &other.terms, |c| -c),
        ))
    }

    pub fn neg(&self) -> LinearForm {
        Self::from_terms(
            self.basis.clone(),
            self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> LinearForm {
        if q.is_zero() {
            return Self::zero(&self.basis);
        }
        Self::from_terms(
            self.basis.clone(),
            self.terms.iter().map(|(i, c)| (*i, c * q)).collect(),
        )
    }

    pub fn add_rational(&self, q: &Rational) -> LinearForm {
        self.add(&Self::rational(&self.basis, q.clone()))
            .expect("same basis")
    }

    /// `(self + other) / 2`.
    pub fn midpoint(&self, other: &LinearForm) -> Result<LinearForm> {
        Ok(self.add(other)?.scale(&Rational::new(1.into(), 2.into())))
    }

    /// Cached `f64` enclosure of the value.
    pub fn approx(&self) -> Approx {
        *self.approx.get_or_init(|| {
            let mut acc = Accumulator::new();
            for (idx, c) in &self.terms {
                let s = self.basis.symbol_approx(*idx);
                if c.denom().is_one() {
                    if let Some(n) = c.numer().to_i128() {
                        acc.add_int(n, &s);
                        continue;
                    }
                }
                let cf = c.to_f64().unwrap_or(f64::NAN);
                if !cf.is_finite() {
                    return Approx::UNKNOWN;
                }
                acc.add_term(cf, cf.abs() * U + 1e-300, &s);
            }
            acc.finish()
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.approx().mid
    }

    /// Enclosure of the value of width at most `2^-p`; enclosures for
    /// increasing `p` are nested.
    pub fn refine(&self, p: u32) -> RationalInterval {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let mut mass = Rational::zero();
        for (idx, c) in &self.terms {
            if *idx == 0 {
                lo += c;
                hi += c;
            } else {
                mass += c.abs();
            }
        }
        let q = p + ceil_log2_abs(&mass) + 1;
        for (idx, c) in &self.terms {
            if *idx == 0 {
                continue;
            }
            let enc = self.basis.entry(*idx).enclosure(q).scale(c);
            lo += enc.lo;
            hi += enc.hi;
        }
        RationalInterval::new(lo, hi)
    }

    /// Exact sign. Refines on the doubling schedule until the enclosure
    /// excludes zero or the basis precision cap is passed.
    pub fn sign(&self) -> Result<i8> {
        if self.terms.is_empty() {
            return Ok(0);
        }
        if let Some(s) = self.approx().sign() {
            return Ok(s);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let cap = self.basis.precision_cap();
        let mut p = LADDER_START;
        loop {
            let iv = self.refine(p);
            if iv.lo.is_positive() {
                return Ok(1);
            }
            if iv.hi.is_negative() {
                return Ok(-1);
            }
            if p >= cap {
                return Err(Error::PrecisionCapExceeded {
                    cap,
                    context: format!("sign of {self}"),
                });
            }
            p = p.saturating_mul(2).min(cap);
        }
    }

    pub fn compare(&self, other: &LinearForm) -> Result<Ordering> {
        self.check(other)?;
        if self.terms == other.terms {
            return Ok(Ordering::Equal);
        }
        if let Some(o) = self.approx().try_cmp(&other.approx()) {
            return Ok(o);
        }
        Ok(self.sub(other)?.sign()?.cmp(&0))
    }

    pub fn lt(&self, other: &LinearForm) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Less)
    }

    pub fn min(&self, other: &LinearForm) -> Result<LinearForm> {
        Ok(if self.compare(other)? == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        })
    }

    pub fn max(&self, other: &LinearForm) -> Result<LinearForm> {
        Ok(if self.compare(other)? == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        })
    }

    /// Largest positive `k` with `k * step < self`, or `0` when there is
    /// none, together with `k * step`. Requires `step > 0`.
    pub fn floor_multiple(&self, step: &LinearForm) -> Result<(u64, LinearForm)> {
        self.check(step)?;
        if step.sign()? <= 0 {
            return Err(Error::InvalidInput(format!(
                "floor_multiple step must be positive, got {step}"
            )));
        }
        // below(k) <=> k * step < self
        let below = |k: u64| -> Result<bool> {
            if k == 0 {
                return Ok(true);
            }
            let ks = step.scale(&uint(k));
            Ok(ks.compare(self)? == Ordering::Less)
        };
        let a = self.approx();
        let s = step.approx();
        let est = if a.is_finite() && s.is_finite() && s.mid > 0.0 {
            let x = (a.mid / s.mid).ceil() - 1.0;
            if (0.0..9.0e15).contains(&x) {
                x as u64
            } else {
                0
            }
        } else {
            0
        };
        // bracket lo <= k < hi with below(lo) and !below(hi)
        let mut lo = est.saturating_sub(1);
        let mut width = 1u64;
        while !below(lo)? {
            width = width.saturating_mul(2);
            lo = lo.saturating_sub(width);
        }
        let mut hi = est + 1;
        width = 1;
        while below(hi)? {
            lo = hi;
            width = width.saturating_mul(2);
            hi = hi.checked_add(width).ok_or_else(|| {
                Error::InvalidInput("floor_multiple quotient overflows u64".into())
            })?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, step.scale(&uint(lo))))
    }

    pub fn to_json(&self) -> LinearFormJson {
        if self.basis.is_growable() {
            let mut basis = vec!["1".to_string()];
            let mut coeffs = vec![rational_to_pair(&self.coeff(0))];
            for (idx, c) in &self.terms {
                if *idx != 0 {
                    basis.push(self.basis.entry(*idx).symbol.name());
                    coeffs.push(rational_to_pair(c));
                }
            }
            LinearFormJson { basis, coeffs }
        } else {
            LinearFormJson {
                basis: self.basis.names(),
                coeffs: self.coeff_vector().iter().map(rational_to_pair).collect(),
            }
        }
    }

    /// Reads a form against `basis`. Unknown symbols are interned when the
    /// basis is growable and rejected otherwise.
    pub fn from_json(j: &LinearFormJson, basis: &Arc<IrrationalBasis>) -> Result<LinearForm> {
        if j.basis.len() != j.coeffs.len() {
            return Err(Error::Parse(format!(
                "linear form has {} symbols but {} coefficients",
                j.basis.len(),
                j.coeffs.len()
            )));
        }
        if j.basis.first().map(String::as_str) != Some("1") {
            return Err(Error::Parse("linear form basis must start with \"1\"".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut pairs = Vec::with_capacity(j.basis.len());
        for (name, c) in j.basis.iter().zip(&j.coeffs) {
            if !seen.insert(name.as_str()) {
                return Err(Error::Parse(format!("symbol {name} listed twice")));
            }
            let q = rational_from_pair(c)?;
            let idx = match basis.lookup(name) {
                Some(i) => i,
                None if basis.is_growable() => basis.intern_name(name)?,
                None => return Err(Error::BasisMismatch),
            };
            pairs.push((idx, q));
        }
        Self::from_coeffs(basis, pairs)
    }
}

/// `{"basis": ["1", "sqrt:2", ...], "coeffs": [["p","q"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LinearFormJson {
    pub basis: Vec<String>,
    pub coeffs: Vec<[String; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, ratio};

    fn kron() -> (Arc<IrrationalBasis>, LinearForm, LinearForm) {
        let b = IrrationalBasis::from_names(&["1", "sqrt:2", "sqrt:3"], 1 << 12).unwrap();
        let a = LinearForm::symbol(&b, 1);
        let be = LinearForm::symbol(&b, 2);
        (b, a, be)
    }

    #[test]
    fn rational_refinement_is_exact() {
        let (b, _, _) = kron();
        let f = LinearForm::rational(&b, ratio(3, 2));
        for p in [0, 4, 100] {
            assert_eq!(f.refine(p), RationalInterval::point(ratio(3, 2)));
        }
    }

    #[test]
    fn sqrt_two_refines_to_width() {
        let (_, a, _) = kron();
        let iv = a.refine(4);
        assert!(iv.width() <= ratio(1, 16));
        assert!(&iv.lo * &iv.lo < int(2) && &iv.hi * &iv.hi > int(2));
    }

    #[test]
    fn signs() {
        let (b, a, _) = kron();
        assert_eq!(LinearForm::zero(&b).sign().unwrap(), 0);
        let one = LinearForm::integer(&b, 1);
        assert_eq!(a.sub(&one).unwrap().sign().unwrap(), 1);
        let f = LinearForm::integer(&b, 3).sub(&a.scale(&int(2))).unwrap();
        assert_eq!(f.sign().unwrap(), 1);
    }

    #[test]
    fn tiny_forms_need_refinement() {
        // 665857 - 470832*sqrt(2) is about 7.5e-13 and positive
        let (b, a, _) = kron();
        let f = LinearForm::integer(&b, 665_857).sub(&a.scale(&int(470_832))).unwrap();
        assert_eq!(f.sign().unwrap(), 1);
        // p^2 - 2q^2 = -1, so p - q*sqrt(2) is about -2.0e-16
        let p = BigInt::parse_bytes(b"2470433131948081", 10).unwrap();
        let q = BigInt::parse_bytes(b"1746860020068409", 10).unwrap();
        let g = LinearForm::rational(&b, Rational::from_integer(p))
            .sub(&a.scale(&Rational::from_integer(q)))
            .unwrap();
        assert_eq!(g.sign().unwrap(), -1);
    }

    #[test]
    fn comparisons() {
        let (b, a, be) = kron();
        let two_minus_beta = LinearForm::integer(&b, 2).sub(&be).unwrap();
        assert_eq!(
            two_minus_beta.compare(&LinearForm::integer(&b, 1)).unwrap(),
            Ordering::Less
        );
        assert_eq!(a.compare(&be).unwrap(), Ordering::Less);
        assert_eq!(a.compare(&a.clone()).unwrap(), Ordering::Equal);
        let other = IrrationalBasis::unit();
        assert_eq!(
            a.compare(&LinearForm::integer(&other, 1)),
            Err(Error::BasisMismatch)
        );
    }

    #[test]
    fn floor_multiples_of_sqrt3() {
        let (b, _, be) = kron();
        let fm = |n| LinearForm::integer(&b, n).floor_multiple(&be).unwrap();
        assert_eq!(fm(1), (0, LinearForm::zero(&b)));
        assert_eq!(fm(2), (1, be.clone()));
        assert_eq!(fm(5), (2, be.scale(&int(2))));
        assert_eq!(fm(1000).0, 577);
    }

    #[test]
    fn arithmetic_cancels_exactly() {
        let (_, a, be) = kron();
        let s = a.add(&be).unwrap().sub(&be).unwrap();
        assert_eq!(s, a);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let (b, a, be) = kron();
        let f = LinearForm::integer(&b, 2).sub(&be).unwrap().add(&a.scale(&ratio(-1, 3))).unwrap();
        let j = f.to_json();
        assert_eq!(j.basis, vec!["1", "sqrt:2", "sqrt:3"]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"basis":["1","sqrt:2","sqrt:3"],"coeffs":[["2","1"],["-1","3"],["-1","1"]]}"#
        );
        let back = LinearForm::from_json(&serde_json::from_str(&text).unwrap(), &b).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn growable_json_lists_support_only() {
        let b = IrrationalBasis::growable(1024);
        let s5 = b.intern_name("sin:5").unwrap();
        let f = LinearForm::symbol(&b, s5).add_rational(&ratio(1, 2));
        let j = f.to_json();
        assert_eq!(j.basis, vec!["1", "sin:5"]);
        let fresh = IrrationalBasis::growable(1024);
        let back = LinearForm::from_json(&j, &fresh).unwrap();
        assert_eq!(back.to_json(), j);
    }
}
