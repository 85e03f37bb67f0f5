//! Ground-truth evaluation of the cotangent sum and of the auxiliary sum
//! by direct compensated summation.
//!
//! `c0_exact` is kept maximally literal: one term per m, ascending, no
//! analytic pairing. The only transformation applied is the exact
//! argument reduction `cot(π(k-m)/k) = -cot(πm/k)`, which keeps every
//! cotangent argument in `(0, π/2]` and makes the m = k/2 term exactly
//! zero.

use std::f64::consts::PI;

use crate::auxiliary::g;
use crate::kahan::KahanSum;
use crate::SumIndex;

/// `c0(1/k) = -Σ_{m=1}^{k-1} (m/k)·cot(mπ/k)`.
pub fn c0_exact(k: SumIndex) -> f64 {
    let k = k.get();
    let kf = k as f64;
    let mut sum = KahanSum::new();
    for m in 1..k {
        sum.add(-(m as f64 / kf) * cot_pi_ratio(m, k));
    }
    sum.value()
}

/// The auxiliary sum `c(1/k) = Σ_{m=1}^{k-1} g(m/k)`.
pub fn c_exact(k: SumIndex) -> f64 {
    let k = k.get();
    let kf = k as f64;
    let mut sum = KahanSum::new();
    for m in 1..k {
        sum.add(g(m as f64 / kf));
    }
    sum.value()
}

/// Harmonic number H_n with compensated summation.
pub fn harmonic(n: u64) -> f64 {
    let mut sum = KahanSum::new();
    for m in 1..=n {
        sum.add(1.0 / m as f64);
    }
    sum.value()
}

/// `cot(mπ/k)` for 1 ≤ m < k, reduced to the first quadrant through the
/// exact symmetry m ↔ k-m.
pub(crate) fn cot_pi_ratio(m: u64, k: u64) -> f64 {
    debug_assert!(m >= 1 && m < k);
    let (m_reduced, sign) = if 2 * m > k { (k - m, -1.0) } else { (m, 1.0) };
    if 2 * m_reduced == k {
        return 0.0;
    }
    let theta = m_reduced as f64 * PI / k as f64;
    let (s, c) = theta.sin_cos();
    sign * c / s
}

/// Comparison record between the exact sum and an approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub k: u64,
    pub exact: f64,
    pub approx: f64,
    pub abs_err: f64,
    /// `None` when the exact value is zero.
    pub rel_err: Option<f64>,
    /// `-log10(rel_err)`; `None` when undefined.
    pub sig_digits: Option<f64>,
}

impl EvalReport {
    pub fn compare(k: SumIndex, exact: f64, approx: f64) -> Self {
        let abs_err = (exact - approx).abs();
        let rel_err = (exact != 0.0).then(|| abs_err / exact.abs());
        let sig_digits = rel_err.and_then(|r| (r > 0.0).then(|| -r.log10()));
        Self {
            k: k.get(),
            exact,
            approx,
            abs_err,
            rel_err,
            sig_digits,
        }
    }
}
