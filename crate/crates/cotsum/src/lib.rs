//! Numerical evaluation of the cotangent sum
//! `c0(1/k) = -Σ_{m=1}^{k-1} (m/k)·cot(mπ/k)`
//! and of its large-`k` asymptotic expansion.
//!
//! Three independent evaluation routes are provided and cross-checked:
//!
//! * [`direct_sum`] — the literal O(k) sum with compensated accumulation;
//!   this is the ground truth the other routes are measured against.
//! * [`asymptotic`] — O(1) closed-form approximations, plus a generator
//!   that rebuilds every expansion coefficient from first principles
//!   (endpoint derivatives of the smooth auxiliary function, Bernoulli
//!   numbers, even zeta values) and two certified remainder evaluators.
//! * [`quadrature`] — oscillatory panel quadrature used to verify the
//!   finite Poisson summation identity underlying the expansion.
//!
//! The auxiliary function `g(x) = -x·cot(πx) - 1/(π(1-x))`, smooth on
//! `[0, 1]`, lives in [`auxiliary`]; digamma, Bernoulli and zeta helpers
//! in [`special`].

use std::fmt;

pub mod asymptotic;
pub mod auxiliary;
pub mod direct_sum;
mod kahan;
pub mod quadrature;
pub mod special;

pub use direct_sum::EvalReport;
pub use quadrature::{Estimate, QuadratureConfig};

/// Index `k` of the cotangent sum; always ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumIndex(u64);

impl SumIndex {
    /// Fails with [`Error::Domain`] for `k = 0`.
    pub fn new(k: u64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::Domain("sum index k must be >= 1".into()));
        }
        Ok(Self(k))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

impl TryFrom<u64> for SumIndex {
    type Error = Error;

    fn try_from(k: u64) -> Result<Self, Error> {
        Self::new(k)
    }
}

impl fmt::Display for SumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Error type shared by all fallible operations in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    Domain(String),
    /// A requested expansion/series order exceeds the exact-arithmetic cap.
    OrderCap { requested: u32, cap: u32 },
    /// A quadrature error estimate exceeded the configured tolerance.
    QuadratureNonConvergence { achieved: f64, required: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::OrderCap { requested, cap } => {
                write!(f, "order {requested} exceeds the cap {cap}")
            }
            Error::QuadratureNonConvergence { achieved, required } => write!(
                f,
                "quadrature did not converge: error estimate {achieved:.3e} > tolerance {required:.3e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Evaluates `c0(1/k)` exactly and through the five-term asymptotic
/// expansion, returning the comparison record used by the CLI.
pub fn evaluate(k: SumIndex) -> EvalReport {
    EvalReport::compare(
        k,
        direct_sum::c0_exact(k),
        asymptotic::c0_approx_series(k),
    )
}
