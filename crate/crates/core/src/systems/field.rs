//! Rational-valued `f` on `U = (0, 1)` with `h(a, b, e) = a + f(e)(b - a)`.
//! Everything here lives in the rationals, so the basis is just `{1}`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::descriptor::{RationalText, SystemDescriptor};
use super::order::{cmp_f, sorted_indices};
use super::{check_index, ApproximationSystem, Limits};
use crate::error::{Error, Result};
use crate::numeric::rational::{parse_rational, uint};
use crate::numeric::{Approx, IrrationalBasis, LinearForm, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFormula {
    /// Base-2 radical inverse: the binary digits of `n` mirrored about the
    /// point. Injective with dense image in `(0, 1)`.
    VanDerCorput,
}

impl FieldFormula {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "van_der_corput" => Ok(FieldFormula::VanDerCorput),
            _ => Err(Error::InvalidInput(format!("unknown field formula {name:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FieldFormula::VanDerCorput => "van_der_corput",
        }
    }

    pub fn eval(&self, n: u64) -> Rational {
        match self {
            FieldFormula::VanDerCorput => {
                let bits = 64 - n.leading_zeros();
                let rev = n.reverse_bits() >> (64 - bits);
                Rational::new(BigInt::from(rev), BigInt::one() << bits)
            }
        }
    }
}

/// 1-based indices of the first occurrence of each value.
pub fn dedupe_table(table: &[Rational]) -> Vec<u64> {
    let mut seen = HashSet::new();
    table
        .iter()
        .enumerate()
        .filter(|(_, q)| seen.insert((*q).clone()))
        .map(|(i, _)| i as u64 + 1)
        .collect()
}

/// Indices among `1..=n` whose f-value differs from every earlier one.
pub fn first_occurrences(sys: &dyn ApproximationSystem, n: u64) -> Result<Vec<u64>> {
    let order = sorted_indices(sys, n)?;
    let mut dup = vec![false; n as usize + 1];
    let mut k = 0;
    while k < order.len() {
        let mut j = k + 1;
        while j < order.len() && cmp_f(sys, order[k], order[j])? == Ordering::Equal {
            j += 1;
        }
        let first = order[k..j].iter().copied().min().expect("nonempty run");
        for &i in &order[k..j] {
            dup[i as usize] = i != first;
        }
        k = j;
    }
    Ok((1..=n).filter(|&i| !dup[i as usize]).collect())
}

#[derive(Debug)]
enum Source {
    Table {
        raw: Vec<Rational>,
        values: Vec<Rational>,
        approx: Vec<Approx>,
        kept: Vec<u64>,
    },
    Formula(FieldFormula),
}

#[derive(Debug)]
pub struct FieldSystem {
    basis: Arc<IrrationalBasis>,
    source: Source,
    limits: Limits,
}

impl FieldSystem {
    /// Table-driven system. The domain is re-indexed to the first
    /// occurrence of each value so that `f` is injective.
    pub fn from_table(raw: Vec<Rational>, limits: Limits) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidInput("empty f table".into()));
        }
        for q in &raw {
            if !q.is_positive() || *q >= Rational::one() {
                return Err(Error::InvalidInput(format!("f value {q} outside (0, 1)")));
            }
        }
        let kept = dedupe_table(&raw);
        let values: Vec<Rational> = kept.iter().map(|&i| raw[(i - 1) as usize].clone()).collect();
        let approx = values.iter().map(Approx::from_rational).collect();
        Ok(FieldSystem {
            basis: IrrationalBasis::with_cap(limits.precision_cap),
            source: Source::Table {
                raw,
                values,
                approx,
                kept,
            },
            limits,
        })
    }

    pub fn from_table_strings(t: &[RationalText], limits: Limits) -> Result<Self> {
        Self::from_table(t.iter().map(|q| q.0.clone()).collect(), limits)
    }

    pub fn from_strs(t: &[&str], limits: Limits) -> Result<Self> {
        let raw = t.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Self::from_table(raw, limits)
    }

    pub fn from_formula(formula: FieldFormula, limits: Limits) -> Self {
        FieldSystem {
            basis: IrrationalBasis::with_cap(limits.precision_cap),
            source: Source::Formula(formula),
            limits,
        }
    }

    /// Original table positions kept after de-duplication.
    pub fn kept_indices(&self) -> Option<&[u64]> {
        match &self.source {
            Source::Table { kept, .. } => Some(kept),
            Source::Formula(_) => None,
        }
    }

    fn value(&self, n: u64) -> Result<Rational> {
        check_index(self, n)?;
        Ok(match &self.source {
            Source::Table { values, .. } => values[(n - 1) as usize].clone(),
            Source::Formula(f) => f.eval(n),
        })
    }

    fn rational_arg(x: &LinearForm, what: &str) -> Result<Rational> {
        x.as_rational().ok_or_else(|| {
            Error::InvalidInput(format!("field system needs a rational {what}, got {x}"))
        })
    }

    /// `a + f(e)(b - a)` when `a < b`, else `a`.
    pub fn field_h(&self, a: &LinearForm, b: &LinearForm, e: u64) -> Result<LinearForm> {
        let ar = Self::rational_arg(a, "a")?;
        let br = Self::rational_arg(b, "b")?;
        if ar >= br {
            return Ok(a.clone());
        }
        let fe = self.value(e)?;
        Ok(LinearForm::rational(&self.basis, &ar + fe * (&br - &ar)))
    }
}

impl ApproximationSystem for FieldSystem {
    fn descriptor(&self) -> SystemDescriptor {
        match &self.source {
            Source::Table { raw, .. } => SystemDescriptor::field_table(raw),
            Source::Formula(f) => SystemDescriptor::field_formula(f.name()),
        }
    }

    fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    fn limits(&self) -> &Limits {
        &self.limits
    }

    fn interval(&self) -> (LinearForm, LinearForm) {
        (
            LinearForm::zero(&self.basis),
            LinearForm::integer(&self.basis, 1),
        )
    }

    fn domain_len(&self) -> Option<u64> {
        match &self.source {
            Source::Table { values, .. } => Some(values.len() as u64),
            Source::Formula(_) => None,
        }
    }

    fn value_of(&self, n: u64) -> Result<LinearForm> {
        check_index(self, n)?;
        let v = match &self.source {
            Source::Table { kept, .. } => kept[(n - 1) as usize],
            Source::Formula(_) => n,
        };
        Ok(LinearForm::rational(&self.basis, uint(v)))
    }

    fn f(&self, n: u64) -> Result<LinearForm> {
        Ok(LinearForm::rational(&self.basis, self.value(n)?))
    }

    fn f_approx(&self, n: u64) -> Approx {
        match &self.source {
            Source::Table { approx, .. } => match n.checked_sub(1) {
                Some(i) if (i as usize) < approx.len() => approx[i as usize],
                _ => Approx::UNKNOWN,
            },
            Source::Formula(_) if n > 0 && n < (1 << 53) => {
                // a dyadic with at most 53 significant bits is exact in f64
                let bits = 64 - n.leading_zeros();
                let rev = n.reverse_bits() >> (64 - bits);
                Approx::exact(rev as f64 / (bits as f64).exp2())
            }
            Source::Formula(f) => Approx::from_rational(&f.eval(n)),
        }
    }

    fn candidates(&self, a: &LinearForm, b: &LinearForm, d: u64) -> Result<Vec<LinearForm>> {
        let ar = Self::rational_arg(a, "a")?;
        let br = Self::rational_arg(b, "b")?;
        let w = &br - &ar;
        (1..=d)
            .map(|e| {
                let fe = self.value(e)?;
                Ok(LinearForm::rational(&self.basis, &ar + fe * &w))
            })
            .collect()
    }
}
