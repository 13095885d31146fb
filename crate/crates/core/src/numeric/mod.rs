//! Exact scalars: rationals, rational intervals, and linear forms over a
//! basis of rationally independent reals with adaptive-precision signs.

pub mod approx;
pub mod basis;
pub mod fixed;
pub mod form;
pub mod interval;
pub mod param;
pub mod rational;

pub use approx::Approx;
pub use basis::{DigitStream, IrrationalBasis, Symbol, DEFAULT_PRECISION_CAP};
pub use form::{LinearForm, LinearFormJson};
pub use interval::{Interval, RationalInterval, RationalIntervalJson};
pub use param::{ParamReal, ParamRealJson};
pub use rational::{format_rational, parse_rational, Rational};
