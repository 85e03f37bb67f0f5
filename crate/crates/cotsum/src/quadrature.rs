//! Panel-per-half-period Gauss quadrature for the oscillatory integrals
//! `∫₀¹ g(x)·cos(2πmkx) dx` (and the fifth-derivative sine variants), and
//! numerical verification of the finite Poisson summation identity
//!
//! ```text
//! Σ_{m=1}^{k-1} g(m/k) = -g(0)/2 - g(1)/2 + k·∫₀¹ g
//!                        + 2k·Σ_{m≥1} ∫₀¹ g(x)·cos(2πmkx) dx.
//! ```
//!
//! Panels are aligned to the zeros of the oscillating weight, so each
//! panel sees a smooth, non-oscillatory integrand and a fixed-order
//! Gauss rule converges spectrally. Error estimates come from doubling
//! the node count.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::auxiliary::{endpoint_derivatives, g, g_derivative};
use crate::direct_sum::c_exact;
use crate::kahan::KahanSum;
use crate::special::{zeta_even, LN_2PI};
use crate::{Error, SumIndex};

/// Panel strategy and truncation controls for the oscillatory integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss nodes per half-oscillation panel (≥ 4).
    pub nodes_per_half_period: usize,
    /// Default mode-truncation count M.
    pub max_modes: u32,
    /// Tolerance against which the doubling error estimate is checked.
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_half_period: 12,
            max_modes: 50,
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureConfig {
    pub(crate) fn validate(&self) -> Result<(), Error> {
        if self.nodes_per_half_period < 4 {
            return Err(Error::Domain(
                "QuadratureConfig: nodes_per_half_period must be >= 4".into(),
            ));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain(
                "QuadratureConfig: abs_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A value together with its error bound (quadrature estimate, or an
/// analytic truncation bound where one applies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error_bound: f64,
}

/// Result of checking the Poisson summation identity at one k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsfCheck {
    /// |left side - right side truncated at M modes|.
    pub residual: f64,
    /// Analytic bound on the modes discarded by the truncation.
    pub mode_tail_bound: f64,
    /// Accumulated quadrature error estimates of the right side.
    pub quadrature_error: f64,
    /// |(-g(0) - g(1))/2 - 3/(2π)|.
    pub endpoint_constant_residual: f64,
    /// |k·∫g - (-k·ln(2π)/π)|.
    pub integral_constant_residual: f64,
}

/// `∫₀¹ g(x)·cos(2πmkx) dx` with panels aligned to the cosine's zeros.
pub fn fourier_cos_integral(m: u64, k: SumIndex, q: &QuadratureConfig) -> Result<Estimate, Error> {
    q.validate()?;
    assert!(m >= 1, "fourier_cos_integral: m must be >= 1");
    let cycles = m * k.get();
    let omega = 2.0 * PI * cycles as f64;
    let est = integrate_refining(
        &|x| g(x) * (omega * x).cos(),
        &cosine_zero_edges(cycles),
        q.nodes_per_half_period,
    );
    check_converged(est, q)
}

/// `∫₀¹ g⁽⁵⁾(x)·sin(2πmkx) dx` with panels aligned to the sine's zeros.
pub fn g5_sin_integral(m: u64, k: SumIndex, q: &QuadratureConfig) -> Result<Estimate, Error> {
    q.validate()?;
    assert!(m >= 1, "g5_sin_integral: m must be >= 1");
    let cycles = m * k.get();
    let omega = 2.0 * PI * cycles as f64;
    let est = integrate_refining(
        &|x| g_derivative(x, 5) * (omega * x).sin(),
        &sine_zero_edges(cycles),
        q.nodes_per_half_period,
    );
    check_converged(est, q)
}

/// `∫₀¹ g(x) dx`; the exact value is -ln(2π)/π.
pub fn integral_g(q: &QuadratureConfig) -> Result<Estimate, Error> {
    q.validate()?;
    let edges: Vec<f64> = (0..=8).map(|j| j as f64 / 8.0).collect();
    let est = integrate_refining(&|x| g(x), &edges, q.nodes_per_half_period);
    check_converged(est, q)
}

/// Checks the Poisson summation identity at `k` with `modes` cosine modes
/// on the right side.
///
/// The left side is the direct sum `c(1/k)`; the discarded modes are
/// bounded through the integration-by-parts expansion of each mode
/// integral, using the endpoint derivative tables.
pub fn verify_psf(k: SumIndex, modes: u32, q: &QuadratureConfig) -> Result<PsfCheck, Error> {
    if k.get() < 2 {
        return Err(Error::Domain("verify_psf: k must be >= 2".into()));
    }
    if modes < 1 {
        return Err(Error::Domain("verify_psf: modes must be >= 1".into()));
    }
    q.validate()?;
    let kf = k.as_f64();

    let lhs = c_exact(k);
    let intg = integral_g(q)?;
    let mut rhs = KahanSum::new();
    rhs.add(-0.5 * g(0.0));
    rhs.add(-0.5 * g(1.0));
    rhs.add(kf * intg.value);
    let mut quad_err = kf * intg.error_bound;
    for m in 1..=modes {
        let mode = fourier_cos_integral(m as u64, k, q)?;
        rhs.add(2.0 * kf * mode.value);
        quad_err += 2.0 * kf * mode.error_bound;
    }

    let endpoint_constant_residual = (-0.5 * (g(0.0) + g(1.0)) - 1.5 / PI).abs();
    let integral_constant_residual = (kf * intg.value + kf * LN_2PI / PI).abs();

    Ok(PsfCheck {
        residual: (lhs - rhs.value()).abs(),
        mode_tail_bound: psf_mode_tail_bound(kf, modes),
        quadrature_error: quad_err,
        endpoint_constant_residual,
        integral_constant_residual,
    })
}

/// Bound on `|2k·Σ_{m>M} ∫₀¹ g(x)cos(2πmkx) dx|`.
///
/// Integrating by parts twice (and again) gives
/// `|∫| ≤ Δ₁/(2πmk)² + Δ₃/(2πmk)⁴ + max|g⁽⁵⁾|/(2πmk)⁵` with
/// `Δ_j = g⁽ʲ⁾(1) - g⁽ʲ⁾(0)`; the m-tails are `ζ(p) - Σ_{m≤M} m⁻ᵖ`
/// (and the integral bound `1/(4M⁴)` for p = 5).
fn psf_mode_tail_bound(kf: f64, modes: u32) -> f64 {
    let table = endpoint_derivatives(3).expect("order 3 within cap");
    let delta1 = (table.at_one[1] - table.at_zero[1]).abs();
    let delta3 = (table.at_one[3] - table.at_zero[3]).abs();
    let s2 = zeta_tail(2, modes);
    let s4 = zeta_tail(4, modes);
    let s5 = 0.25 / (modes as f64).powi(4);
    let alpha = 2.0 * PI * kf;
    2.0 * kf
        * (delta1 * s2 / alpha.powi(2)
            + delta3 * s4 / alpha.powi(4)
            + g5_max() * s5 / alpha.powi(5))
}

/// `Σ_{m>M} m^-p` for p = 2, 4 via the exact zeta value minus the
/// partial sum.
fn zeta_tail(p: u32, modes: u32) -> f64 {
    let mut partial = KahanSum::new();
    for m in 1..=modes {
        partial.add((m as f64).powi(-(p as i32)));
    }
    zeta_even(p).expect("p within cap") - partial.value()
}

/// max |g⁽⁵⁾| on [0, 1] from a dense scan, with a safety margin.
pub(crate) fn g5_max() -> f64 {
    static MAX: OnceLock<f64> = OnceLock::new();
    *MAX.get_or_init(|| {
        let n = 4096;
        let mut max = 0.0f64;
        for i in 0..=n {
            let x = i as f64 / n as f64;
            max = max.max(g_derivative(x, 5).abs());
        }
        max * 1.02
    })
}

fn check_converged(est: Estimate, q: &QuadratureConfig) -> Result<Estimate, Error> {
    if est.error_bound > q.abs_tol {
        return Err(Error::QuadratureNonConvergence {
            achieved: est.error_bound,
            required: q.abs_tol,
        });
    }
    Ok(est)
}

/// Panel edges a full half-period apart, aligned to cos(2πcx) zeros at
/// (2j+1)/(4c), plus the interval endpoints.
fn cosine_zero_edges(cycles: u64) -> Vec<f64> {
    let denom = (4 * cycles) as f64;
    let mut edges = Vec::with_capacity(2 * cycles as usize + 2);
    edges.push(0.0);
    for j in 0..2 * cycles {
        edges.push((2 * j + 1) as f64 / denom);
    }
    edges.push(1.0);
    edges
}

/// Panel edges at the zeros j/(2c) of sin(2πcx).
fn sine_zero_edges(cycles: u64) -> Vec<f64> {
    let denom = (2 * cycles) as f64;
    (0..=2 * cycles).map(|j| j as f64 / denom).collect()
}

/// Composite Gauss over the given panel edges at `nodes` and `2·nodes`
/// points per panel; the difference of the two refinements is the error
/// estimate attached to the finer value.
pub(crate) fn integrate_refining(
    f: &dyn Fn(f64) -> f64,
    edges: &[f64],
    nodes: usize,
) -> Estimate {
    let coarse = composite_gauss(f, edges, nodes);
    let fine = composite_gauss(f, edges, 2 * nodes);
    Estimate {
        value: fine,
        error_bound: (fine - coarse).abs(),
    }
}

fn composite_gauss(f: &dyn Fn(f64) -> f64, edges: &[f64], nodes: usize) -> f64 {
    let rule = gauss_rule(nodes);
    let mut sum = KahanSum::new();
    for pair in edges.windows(2) {
        sum.add(rule.integrate(f, pair[0], pair[1]));
    }
    sum.value()
}

struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    fn integrate(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Gauss–Legendre rule on [-1, 1] by Newton iteration on the Legendre
/// polynomial recurrence. Rules are small (≤ ~64 nodes) so they are
/// rebuilt per integral call; construction cost is negligible next to
/// the panel evaluations.
fn gauss_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

/// (P_n(x), P_n'(x)) from the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    for j in 0..n {
        let jf = j as f64;
        let p_next = ((2.0 * jf + 1.0) * x * p - jf * p_prev) / (jf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}
