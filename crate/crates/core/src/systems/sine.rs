//! `f = sin` on `D = N`, `U = (-1, 1)`. Values are symbols `sin(k)` of a
//! basis that grows as indices are used; their independence over the
//! rationals comes from Lindemann-Weierstrass.

use std::sync::{Arc, RwLock};

use super::descriptor::SystemDescriptor;
use super::sweep::{self, ProbeSequence};
use super::{check_index, ApproximationSystem, Limits};
use crate::error::Result;
use crate::numeric::fixed::sin_int_f64;
use crate::numeric::rational::uint;
use crate::numeric::{Approx, IrrationalBasis, LinearForm, Symbol};

#[derive(Debug)]
pub struct SineSystem {
    basis: Arc<IrrationalBasis>,
    max_index_hint: u64,
    limits: Limits,
    // cache[n - 1] encloses sin(n)
    cache: RwLock<Vec<Approx>>,
}

impl SineSystem {
    pub fn new(max_index_hint: u64, limits: Limits) -> Self {
        SineSystem {
            basis: IrrationalBasis::growable(limits.precision_cap),
            max_index_hint,
            limits,
            cache: RwLock::new(Vec::with_capacity(max_index_hint.min(1 << 20) as usize)),
        }
    }

    pub fn sine_f(&self, n: u64) -> Result<LinearForm> {
        check_index(self, n)?;
        let idx = self.basis.intern(Symbol::Sin(n))?;
        Ok(LinearForm::symbol(&self.basis, idx))
    }

    /// Least `x` with `sin(x)` in `(sin(e), sin(e) + u)` and no `sin(y)`,
    /// `y <= d`, in `(sin(e), sin(x)]`.
    pub fn h1(&self, u: &LinearForm, d: u64, e: u64) -> Result<u64> {
        sweep::h1(self, self, u, d, e)
    }

    /// `sin(h1(u, d, e)) - sin(e)`.
    pub fn h2(&self, u: &LinearForm, d: u64, e: u64) -> Result<LinearForm> {
        let x = self.h1(u, d, e)?;
        self.sine_f(x)?.sub(&self.sine_f(e)?)
    }

    pub fn h2_all(&self, u: &LinearForm, d: u64) -> Result<Vec<LinearForm>> {
        let h1 = sweep::h1_all(self, self, u, d)?;
        h1.iter()
            .enumerate()
            .map(|(i, &x)| self.sine_f(x)?.sub(&self.sine_f(i as u64 + 1)?))
            .collect()
    }

    fn sin_approx(n: u64) -> Approx {
        let (mid, rad) = sin_int_f64(n);
        Approx { mid, rad }
    }
}

impl ProbeSequence for SineSystem {
    fn probe_start(&self, d: u64) -> u64 {
        // sin(x) for x <= d is itself an excluded f-value
        d + 1
    }

    fn probe_approx(&self, n: u64) -> Approx {
        self.f_approx(n)
    }

    fn probe(&self, n: u64) -> Result<LinearForm> {
        self.sine_f(n)
    }
}

impl ApproximationSystem for SineSystem {
    fn descriptor(&self) -> SystemDescriptor {
        SystemDescriptor::Sine {
            max_index_hint: self.max_index_hint,
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
            LinearForm::integer(&self.basis, -1),
            LinearForm::integer(&self.basis, 1),
        )
    }

    fn value_of(&self, n: u64) -> Result<LinearForm> {
        check_index(self, n)?;
        Ok(LinearForm::rational(&self.basis, uint(n)))
    }

    fn f(&self, n: u64) -> Result<LinearForm> {
        self.sine_f(n)
    }

    fn f_approx(&self, n: u64) -> Approx {
        if n == 0 {
            return Approx::UNKNOWN;
        }
        let i = (n - 1) as usize;
        if let Some(a) = self.cache.read().expect("sine cache poisoned").get(i) {
            return *a;
        }
        // far beyond the cached prefix: compute without filling the gap
        let len = self.cache.read().expect("sine cache poisoned").len();
        if i > len + 4096 {
            return Self::sin_approx(n);
        }
        let mut cache = self.cache.write().expect("sine cache poisoned");
        while cache.len() <= i {
            let k = cache.len() as u64 + 1;
            cache.push(Self::sin_approx(k));
        }
        cache[i]
    }

    fn candidates(&self, a: &LinearForm, b: &LinearForm, d: u64) -> Result<Vec<LinearForm>> {
        let u = b.sub(a)?;
        self.h2_all(&u, d)?.iter().map(|h| a.add(h)).collect()
    }
}
