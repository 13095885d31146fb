//! `f(n) = n - floor_beta(n)` on `D = N`, `U = (0, beta)`, with `g` driven by
//! the second rotation `f_alpha(n) = n*alpha - floor_beta(n*alpha)`.

use std::sync::Arc;

use super::descriptor::{ConstantDescriptor, SystemDescriptor};
use super::sweep::{self, ProbeSequence};
use super::{check_index, ApproximationSystem, Limits};
use crate::error::{Error, Result};
use crate::numeric::approx::{Accumulator, SymbolApprox};
use crate::numeric::rational::uint;
use crate::numeric::{Approx, IrrationalBasis, LinearForm};

#[derive(Debug)]
pub struct KroneckerSystem {
    basis: Arc<IrrationalBasis>,
    alpha_desc: ConstantDescriptor,
    beta_desc: ConstantDescriptor,
    alpha_idx: u32,
    alpha: LinearForm,
    beta: LinearForm,
    alpha_s: SymbolApprox,
    beta_s: SymbolApprox,
    beta_approx: Approx,
    limits: Limits,
}

impl KroneckerSystem {
    pub fn new(
        alpha: ConstantDescriptor,
        beta: ConstantDescriptor,
        limits: Limits,
    ) -> Result<Self> {
        let basis = IrrationalBasis::with_cap(limits.precision_cap);
        let alpha_idx = basis.intern(alpha.symbol())?;
        let beta_idx = basis.intern(beta.symbol())?;
        if alpha_idx == beta_idx {
            return Err(Error::InvalidBasis("alpha and beta coincide".into()));
        }
        let a = LinearForm::symbol(&basis, alpha_idx);
        let b = LinearForm::symbol(&basis, beta_idx);
        if a.sign()? <= 0 || b.sign()? <= 0 {
            return Err(Error::InvalidInput("alpha and beta must be positive".into()));
        }
        let beta_s = basis.symbol_approx(beta_idx);
        let mut acc = Accumulator::new();
        acc.add_int(1, &beta_s);
        Ok(KroneckerSystem {
            alpha_s: basis.symbol_approx(alpha_idx),
            beta_s,
            beta_approx: acc.finish(),
            basis,
            alpha_desc: alpha,
            beta_desc: beta,
            alpha_idx,
            alpha: a,
            beta: b,
            limits,
        })
    }

    /// `alpha = sqrt 2`, `beta = sqrt 3` with default limits.
    pub fn sqrt2_sqrt3() -> Self {
        Self::with_limits(Limits::default())
    }

    pub fn with_limits(limits: Limits) -> Self {
        Self::new(ConstantDescriptor::sqrt(2), ConstantDescriptor::sqrt(3), limits)
            .expect("sqrt 2 and sqrt 3 form a valid basis")
    }

    pub fn alpha(&self) -> &LinearForm {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearForm {
        &self.beta
    }

    /// `k` with `k*beta < n*s <= (k+1)*beta` and an enclosure of
    /// `n*s - k*beta`, from floating point when it can be certified.
    fn reduce_fast(&self, s: &SymbolApprox, n: u64) -> Option<(u64, Approx)> {
        let x = n as f64 * s.hi;
        let est = (x / self.beta_s.hi).floor();
        if !(0.0..1e15).contains(&est) {
            return None;
        }
        let est = est as i128;
        for k in [est, est - 1, est + 1] {
            if k < 0 {
                continue;
            }
            let mut acc = Accumulator::new();
            acc.add_int(n as i128, s);
            acc.add_int(-k, &self.beta_s);
            let r = acc.finish();
            if r.sign() == Some(1) && r.sub(&self.beta_approx).sign() == Some(-1) {
                return Some((k as u64, r));
            }
        }
        None
    }

    fn reduce(&self, sym: u32, n: u64) -> Result<(u64, LinearForm)> {
        let s = if sym == 0 { SymbolApprox::ONE } else { self.basis.symbol_approx(sym) };
        let x = LinearForm::term(&self.basis, sym, uint(n));
        let k = match self.reduce_fast(&s, n) {
            Some((k, _)) => k,
            None => x.floor_multiple(&self.beta)?.0,
        };
        Ok((k, x.sub(&self.beta.scale(&uint(k)))?))
    }

    /// `n - floor_beta(n)`, in `(0, beta)`.
    pub fn kron_f(&self, n: u64) -> Result<LinearForm> {
        check_index(self, n)?;
        Ok(self.reduce(0, n)?.1)
    }

    /// `n*alpha - floor_beta(n*alpha)`, in `(0, beta)`.
    pub fn kron_f_alpha(&self, n: u64) -> Result<LinearForm> {
        if n == 0 {
            return Err(Error::InvalidInput("alpha multiples start at 1".into()));
        }
        Ok(self.reduce(self.alpha_idx, n)?.1)
    }

    fn f_alpha_approx(&self, n: u64) -> Approx {
        match self.reduce_fast(&self.alpha_s, n) {
            Some((_, r)) => r,
            None => self
                .kron_f_alpha(n)
                .map(|f| f.approx())
                .unwrap_or(Approx::UNKNOWN),
        }
    }

    /// Least `n` with `f_alpha(n)` in `(f(e), f(e) + u)` and no `f(y)`,
    /// `y <= d`, in `(f(e), f_alpha(n)]`.
    pub fn h1(&self, u: &LinearForm, d: u64, e: u64) -> Result<u64> {
        sweep::h1(self, self, u, d, e)
    }

    /// `f_alpha(h1(u, d, e)) - f(e)`, in `(0, u)`.
    pub fn h2(&self, u: &LinearForm, d: u64, e: u64) -> Result<LinearForm> {
        let n = self.h1(u, d, e)?;
        self.kron_f_alpha(n)?.sub(&self.kron_f(e)?)
    }

    /// `h2(u, d, e)` for `e = 1..=d`.
    pub fn h2_all(&self, u: &LinearForm, d: u64) -> Result<Vec<LinearForm>> {
        let h1 = sweep::h1_all(self, self, u, d)?;
        h1.iter()
            .enumerate()
            .map(|(i, &n)| self.kron_f_alpha(n)?.sub(&self.kron_f(i as u64 + 1)?))
            .collect()
    }
}

impl ProbeSequence for KroneckerSystem {
    fn probe_start(&self, _d: u64) -> u64 {
        1
    }

    fn probe_approx(&self, n: u64) -> Approx {
        self.f_alpha_approx(n)
    }

    fn probe(&self, n: u64) -> Result<LinearForm> {
        self.kron_f_alpha(n)
    }
}

impl ApproximationSystem for KroneckerSystem {
    fn descriptor(&self) -> SystemDescriptor {
        SystemDescriptor::Kronecker {
            alpha: self.alpha_desc.clone(),
            beta: self.beta_desc.clone(),
        }
    }

    fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    fn limits(&self) -> &Limits {
        &self.limits
    }

    fn interval(&self) -> (LinearForm, LinearForm) {
        (LinearForm::zero(&self.basis), self.beta.clone())
    }

    fn value_of(&self, n: u64) -> Result<LinearForm> {
        check_index(self, n)?;
        Ok(LinearForm::rational(&self.basis, uint(n)))
    }

    fn f(&self, n: u64) -> Result<LinearForm> {
        self.kron_f(n)
    }

    fn f_approx(&self, n: u64) -> Approx {
        match self.reduce_fast(&SymbolApprox::ONE, n) {
            Some((_, r)) => r,
            None => self.kron_f(n).map(|f| f.approx()).unwrap_or(Approx::UNKNOWN),
        }
    }

    fn candidates(&self, a: &LinearForm, b: &LinearForm, d: u64) -> Result<Vec<LinearForm>> {
        let u = b.sub(a)?;
        self.h2_all(&u, d)?.iter().map(|h| a.add(h)).collect()
    }

    fn circle_length(&self) -> Option<LinearForm> {
        Some(self.beta.clone())
    }
}
