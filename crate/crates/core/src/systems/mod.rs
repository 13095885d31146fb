//! Approximation systems `(D, U, f, g)`: a discrete domain indexed by
//! `1, 2, ...`, an open interval `U`, a map `f: D -> U` with dense image,
//! and a selector `g` whose level sets have interior in every `(a, b)`.

mod descriptor;
pub mod field;
pub mod kronecker;
pub mod order;
pub mod select;
pub mod sine;
mod sweep;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Approx, IrrationalBasis, LinearForm, DEFAULT_PRECISION_CAP};

pub use descriptor::{ConstantDescriptor, SystemDescriptor};
pub use field::{dedupe_table, FieldFormula, FieldSystem};
pub use kronecker::KroneckerSystem;
pub use select::{g, gap_lengths, nearest, verify_condition_ii, verify_condition_ii_with};
pub use sine::SineSystem;

/// Bounds on every open-ended scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Iterations allowed in a single search (`h1`, `find_split`, ...).
    pub search_cap: u64,
    /// Largest domain index any computation may touch.
    pub depth_cap: u64,
    /// Refinement ceiling for sign determination, in bits.
    pub precision_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            search_cap: 1_000_000,
            depth_cap: 1_000_000,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.search_cap == 0 || self.depth_cap == 0 || self.precision_cap == 0 {
            return Err(Error::InvalidInput("caps must be positive".into()));
        }
        Ok(())
    }
}

pub trait ApproximationSystem: Send + Sync + fmt::Debug {
    fn descriptor(&self) -> SystemDescriptor;

    fn basis(&self) -> &Arc<IrrationalBasis>;

    fn limits(&self) -> &Limits;

    /// Endpoints of the open interval `U`.
    fn interval(&self) -> (LinearForm, LinearForm);

    /// Number of domain elements when `D` is finite.
    fn domain_len(&self) -> Option<u64> {
        None
    }

    /// The real number that the index `n` stands for.
    fn value_of(&self, n: u64) -> Result<LinearForm>;

    fn f(&self, n: u64) -> Result<LinearForm>;

    /// Enclosure of `f(n)`; may be [`Approx::UNKNOWN`] but never wrong.
    fn f_approx(&self, n: u64) -> Approx;

    /// Values `v_1, ..., v_d` for `a < b` such that `g(c, a, b, d)` is the
    /// `e` whose `v_e` is nearest to `c`.
    fn candidates(&self, a: &LinearForm, b: &LinearForm, d: u64) -> Result<Vec<LinearForm>>;

    /// Circumference when `f` is a rotation on a circle, used for the
    /// three-distance check.
    fn circle_length(&self) -> Option<LinearForm> {
        None
    }
}

/// Largest index the system may be asked about.
pub fn max_index(sys: &dyn ApproximationSystem) -> u64 {
    let cap = sys.limits().depth_cap;
    sys.domain_len().map_or(cap, |n| n.min(cap))
}

pub(crate) fn check_index(sys: &dyn ApproximationSystem, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("domain indices start at 1".into()));
    }
    if let Some(len) = sys.domain_len() {
        if n > len {
            return Err(Error::DepthExhausted(format!(
                "index {n} beyond the {len}-element domain"
            )));
        }
    }
    Ok(())
}

/// Builds the system a descriptor names.
pub fn build(desc: &SystemDescriptor, limits: Limits) -> Result<Arc<dyn ApproximationSystem>> {
    limits.validate()?;
    Ok(match desc {
        SystemDescriptor::Kronecker { alpha, beta } => {
            Arc::new(KroneckerSystem::new(alpha.clone(), beta.clone(), limits)?)
        }
        SystemDescriptor::Sine { max_index_hint } => {
            Arc::new(SineSystem::new(*max_index_hint, limits))
        }
        SystemDescriptor::Field { f_table, formula } => match (f_table, formula) {
            (Some(t), None) => Arc::new(FieldSystem::from_table_strings(t, limits)?),
            (None, Some(name)) => Arc::new(FieldSystem::from_formula(
                FieldFormula::parse(name)?,
                limits,
            )),
            _ => {
                return Err(Error::InvalidInput(
                    "field system needs exactly one of f_table and formula".into(),
                ))
            }
        },
    })
}
