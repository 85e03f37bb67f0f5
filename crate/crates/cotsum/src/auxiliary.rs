//! Stable evaluation of `g0(x) = -x·cot(πx)`, of the smooth auxiliary
//! function `g(x) = g0(x) - 1/(π(1-x))`, and of the derivatives of `g`
//! up to order six on `[0, 1]`.
//!
//! Near the endpoints both pieces of `g` blow up individually and their
//! closed forms cancel catastrophically, so evaluation switches to the
//! endpoint power series
//!
//! ```text
//! g(x)     = -2/π + (2/π)·Σ_{n≥1} ζ(2n)·x^{2n} - (1/π)·Σ_{n≥1} x^n
//! g(1 - t) = -1/π - (2/π)·Σ_{n≥1} ζ(2n)·(t^{2n-1} - t^{2n})
//! ```
//!
//! for `x < 0.1` and `x > 0.9`; there each term pair shrinks by at least
//! x² ≤ 0.01, so a handful of terms reaches full double precision.
//! Interior derivatives use the closed derivative polynomials of
//! `cot(πx)` in `u = cot(πx)` (e.g. `d/dx cot = -π(1 + u²)`).

use std::f64::consts::{FRAC_1_PI, PI};
use std::sync::OnceLock;

use crate::special::zeta_even;
use crate::Error;

/// Series branch activates below this x (and above `1 -` this, mirrored).
const SERIES_SWITCH_LO: f64 = 0.1;
const SERIES_SWITCH_HI: f64 = 0.9;

/// Stop once the next term drops below this relative threshold.
const SERIES_RELATIVE_EPS: f64 = 1e-17;

/// Hard cap on the number of series terms.
const SERIES_MAX_TERMS: u32 = 40;

/// Largest derivative order handled by the endpoint tables.
pub const ENDPOINT_ORDER_CAP: u32 = 39;

/// `g0(x) = -x·cot(πx)` on `[0, 1)`, with the removable value
/// `g0(0) = -1/π`.
///
/// Panics for x outside `[0, 1)`; `g0` has a pole at x = 1.
pub fn g0(x: f64) -> f64 {
    assert!(
        (0.0..1.0).contains(&x),
        "g0: argument {x} outside [0, 1)"
    );
    if x == 0.0 {
        return -FRAC_1_PI;
    }
    let (s, c) = (PI * x).sin_cos();
    -x * c / s
}

/// The smooth auxiliary function `g(x) = -x·cot(πx) - 1/(π(1-x))` on
/// `[0, 1]`.
///
/// Panics for x outside `[0, 1]`.
pub fn g(x: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&x),
        "g: argument {x} outside [0, 1]"
    );
    if x < SERIES_SWITCH_LO {
        series_about_zero(x)
    } else if x > SERIES_SWITCH_HI {
        series_about_one(1.0 - x)
    } else {
        g0(x) - 1.0 / (PI * (1.0 - x))
    }
}

/// n-th derivative of `g`, 1 ≤ n ≤ 6.
///
/// Interior points combine the cot derivative polynomials with the exact
/// derivative `-n!·π⁻¹·(1-x)^{-(n+1)}` of the pole correction; near the
/// endpoints the differentiated endpoint series is used instead.
pub fn g_derivative(x: f64, n: u32) -> f64 {
    assert!(
        (1..=6).contains(&n),
        "g_derivative: order {n} outside 1..=6"
    );
    assert!(
        (0.0..=1.0).contains(&x),
        "g_derivative: argument {x} outside [0, 1]"
    );
    if x < SERIES_SWITCH_LO {
        derivative_series_about_zero(x, n)
    } else if x > SERIES_SWITCH_HI {
        derivative_series_about_one(1.0 - x, n)
    } else {
        let (s, c) = (PI * x).sin_cos();
        let u = c / s;
        let p_n = eval_poly(COT_DERIVATIVE_POLY[n as usize], u);
        let p_prev = eval_poly(COT_DERIVATIVE_POLY[(n - 1) as usize], u);
        let pole = factorial(n) * FRAC_1_PI * (1.0 - x).powi(-(n as i32) - 1);
        -x * PI.powi(n as i32) * p_n - n as f64 * PI.powi(n as i32 - 1) * p_prev - pole
    }
}

/// Tables of g⁽ⁿ⁾(0) and g⁽ⁿ⁾(1) for n = 0..=max_order.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointDerivatives {
    pub max_order: u32,
    /// g⁽ⁿ⁾(0), n = 0..=max_order.
    pub at_zero: Vec<f64>,
    /// g⁽ⁿ⁾(1), n = 0..=max_order.
    pub at_one: Vec<f64>,
}

/// Endpoint derivative tables obtained from the endpoint series:
///
/// * at 0: odd orders give `-n!/π`, even orders `n!·(2ζ(n) - 1)/π`;
/// * at 1: `2·n!·ζ(n + (n mod 2))/π` for n ≥ 1.
pub fn endpoint_derivatives(max_order: u32) -> Result<EndpointDerivatives, Error> {
    if max_order < 1 {
        return Err(Error::Domain(
            "endpoint_derivatives: max_order must be >= 1".into(),
        ));
    }
    if max_order > ENDPOINT_ORDER_CAP {
        return Err(Error::OrderCap {
            requested: max_order,
            cap: ENDPOINT_ORDER_CAP,
        });
    }
    let mut at_zero = vec![-2.0 * FRAC_1_PI];
    let mut at_one = vec![-FRAC_1_PI];
    for n in 1..=max_order {
        let fact = factorial(n);
        if n % 2 == 1 {
            at_zero.push(-fact * FRAC_1_PI);
            at_one.push(2.0 * fact * zeta_table(n + 1) * FRAC_1_PI);
        } else {
            at_zero.push(fact * (2.0 * zeta_table(n) - 1.0) * FRAC_1_PI);
            at_one.push(2.0 * fact * zeta_table(n) * FRAC_1_PI);
        }
    }
    Ok(EndpointDerivatives {
        max_order,
        at_zero,
        at_one,
    })
}

/// Derivative polynomials of cot: `(d/dx)^n cot(πx) = π^n·P_n(u)` with
/// `u = cot(πx)`. Coefficients in ascending powers of u, generated by
/// `P_{n+1} = -(1 + u²)·P_n'` from `P_0 = u`.
const COT_DERIVATIVE_POLY: [&[f64]; 7] = [
    &[0.0, 1.0],
    &[-1.0, 0.0, -1.0],
    &[0.0, 2.0, 0.0, 2.0],
    &[-2.0, 0.0, -8.0, 0.0, -6.0],
    &[0.0, 16.0, 0.0, 40.0, 0.0, 24.0],
    &[-16.0, 0.0, -136.0, 0.0, -240.0, 0.0, -120.0],
    &[0.0, 272.0, 0.0, 1232.0, 0.0, 1680.0, 0.0, 720.0],
];

fn eval_poly(coeffs: &[f64], u: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * u + c;
    }
    acc
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// n·(n-1)···(n-d+1) as f64 (exact for the ranges used here).
fn falling_factorial(n: u32, d: u32) -> f64 {
    ((n - d + 1)..=n).map(|i| i as f64).product()
}

/// ζ(n) for even n. Beyond the exact cap the value is 1 to within 2^-42,
/// far below the series stopping threshold; two correction terms keep it
/// honest anyway.
fn zeta_table(n: u32) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    debug_assert!(n % 2 == 0);
    let table = TABLE.get_or_init(|| {
        (1..=20)
            .map(|j| zeta_even(2 * j).expect("index within cap"))
            .collect()
    });
    if n <= 40 {
        table[(n / 2 - 1) as usize]
    } else {
        1.0 + 2f64.powi(-(n as i32)) + 3f64.powi(-(n as i32))
    }
}

fn series_about_zero(x: f64) -> f64 {
    let mut sum = -2.0 * FRAC_1_PI;
    let mut x_pow = 1.0;
    for n in 1..=SERIES_MAX_TERMS {
        x_pow *= x;
        let coeff = if n % 2 == 0 {
            (2.0 * zeta_table(n) - 1.0) * FRAC_1_PI
        } else {
            -FRAC_1_PI
        };
        let term = coeff * x_pow;
        sum += term;
        if term.abs() < SERIES_RELATIVE_EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn series_about_one(t: f64) -> f64 {
    let mut sum = -FRAC_1_PI;
    let mut t_pow = 1.0; // t^{2j-2}
    for j in 1..=SERIES_MAX_TERMS / 2 {
        let z = 2.0 * zeta_table(2 * j) * FRAC_1_PI;
        let odd = z * t_pow * t;
        sum += odd * t - odd; // z·(t^{2j} - t^{2j-1})
        if odd.abs() < SERIES_RELATIVE_EPS * sum.abs() {
            break;
        }
        t_pow *= t * t;
    }
    sum
}

fn series_coefficient_at_zero(n: u32) -> f64 {
    if n % 2 == 0 {
        (2.0 * zeta_table(n) - 1.0) * FRAC_1_PI
    } else {
        -FRAC_1_PI
    }
}

fn series_coefficient_at_one(n: u32) -> f64 {
    // coefficient of t^n in g(1-t)
    if n % 2 == 1 {
        -2.0 * zeta_table(n + 1) * FRAC_1_PI
    } else {
        2.0 * zeta_table(n) * FRAC_1_PI
    }
}

fn derivative_series_about_zero(x: f64, d: u32) -> f64 {
    let mut sum = 0.0;
    let mut x_pow = 1.0;
    for n in d..(d + SERIES_MAX_TERMS) {
        let term = series_coefficient_at_zero(n) * falling_factorial(n, d) * x_pow;
        sum += term;
        if n > d && term.abs() < SERIES_RELATIVE_EPS * sum.abs() + f64::MIN_POSITIVE {
            break;
        }
        x_pow *= x;
    }
    sum
}

fn derivative_series_about_one(t: f64, d: u32) -> f64 {
    let mut sum = 0.0;
    let mut t_pow = 1.0;
    for n in d..(d + SERIES_MAX_TERMS) {
        let term = series_coefficient_at_one(n) * falling_factorial(n, d) * t_pow;
        sum += term;
        if n > d && term.abs() < SERIES_RELATIVE_EPS * sum.abs() + f64::MIN_POSITIVE {
            break;
        }
        t_pow *= t;
    }
    if d % 2 == 1 {
        -sum
    } else {
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn g0_reference_points() {
        assert_abs_diff_eq!(g0(0.5), 0.0, epsilon = 1e-16);
        assert_relative_eq!(g0(0.25), -0.25, max_relative = 1e-15);
        assert_relative_eq!(g0(0.0), -FRAC_1_PI, max_relative = 1e-16);
    }

    #[test]
    #[should_panic(expected = "outside [0, 1)")]
    fn g0_rejects_pole() {
        g0(1.0);
    }

    #[test]
    fn g_endpoint_and_midpoint_values() {
        assert_relative_eq!(g(0.0), -2.0 * FRAC_1_PI, max_relative = 1e-16);
        assert_relative_eq!(g(1.0), -FRAC_1_PI, max_relative = 1e-16);
        assert_relative_eq!(g(0.5), -2.0 * FRAC_1_PI, max_relative = 1e-15);
    }

    #[test]
    fn g_is_finite_and_smooth_up_to_one() {
        // no overflow anywhere on a fine grid including x = 1 itself
        for i in 0..=10_000 {
            let x = i as f64 / 10_000.0;
            assert!(g(x).is_finite(), "g({x}) not finite");
        }
        assert_relative_eq!(g(1.0), -FRAC_1_PI, max_relative = 1e-16);
    }

    #[test]
    fn series_and_closed_form_agree_on_overlap_grid() {
        // Both branches are valid away from the endpoints; the series
        // converges within the term cap for |x| ≤ 0.45 about either end.
        for i in 2..=45 {
            let x = i as f64 / 100.0;
            let closed = g0(x) - 1.0 / (PI * (1.0 - x));
            assert_abs_diff_eq!(series_about_zero(x), closed, epsilon = 1e-12);
        }
        for i in 55..=98 {
            let x = i as f64 / 100.0;
            let closed = g0(x) - 1.0 / (PI * (1.0 - x));
            assert_abs_diff_eq!(series_about_one(1.0 - x), closed, epsilon = 1e-12);
        }
    }

    #[test]
    fn derivative_branches_agree_at_switch_points() {
        for n in 1..=6 {
            for (x, t_side) in [(0.0999, false), (0.101, false), (0.899, true), (0.9001, true)] {
                let series = if t_side {
                    derivative_series_about_one(1.0 - x, n)
                } else {
                    derivative_series_about_zero(x, n)
                };
                let (s, c) = (PI * x).sin_cos();
                let u = c / s;
                let closed = -x * PI.powi(n as i32) * eval_poly(COT_DERIVATIVE_POLY[n as usize], u)
                    - n as f64 * PI.powi(n as i32 - 1) * eval_poly(COT_DERIVATIVE_POLY[(n - 1) as usize], u)
                    - factorial(n) * FRAC_1_PI * (1.0 - x).powi(-(n as i32) - 1);
                assert_relative_eq!(series, closed, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn first_and_third_derivative_endpoint_constants() {
        assert_relative_eq!(g_derivative(0.0, 1), -FRAC_1_PI, max_relative = 1e-14);
        assert_relative_eq!(g_derivative(1.0, 1), PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(g_derivative(0.0, 3), -6.0 * FRAC_1_PI, max_relative = 1e-14);
        assert_relative_eq!(
            g_derivative(1.0, 3),
            2.0 * PI.powi(3) / 15.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn fifth_derivative_endpoint_values() {
        assert_relative_eq!(g_derivative(0.0, 5), -120.0 * FRAC_1_PI, max_relative = 1e-14);
        // 2·5!·ζ(6)/π = 16π⁵/63
        assert_relative_eq!(
            g_derivative(1.0, 5),
            16.0 * PI.powi(5) / 63.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn endpoint_tables_match_pointwise_derivatives() {
        let table = endpoint_derivatives(6).unwrap();
        assert_eq!(table.at_zero.len(), 7);
        assert_relative_eq!(table.at_zero[0], -2.0 * FRAC_1_PI, max_relative = 1e-16);
        assert_relative_eq!(table.at_one[0], -FRAC_1_PI, max_relative = 1e-16);
        for n in 1..=6u32 {
            assert_relative_eq!(
                table.at_zero[n as usize],
                g_derivative(0.0, n),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                table.at_one[n as usize],
                g_derivative(1.0, n),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn endpoint_tables_odd_orders_at_zero() {
        let table = endpoint_derivatives(9).unwrap();
        for j in 1..=5u32 {
            let n = 2 * j - 1;
            assert_relative_eq!(
                table.at_zero[n as usize],
                -factorial(n) * FRAC_1_PI,
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn endpoint_tables_reject_bad_orders() {
        assert!(matches!(endpoint_derivatives(0), Err(Error::Domain(_))));
        assert!(matches!(
            endpoint_derivatives(40),
            Err(Error::OrderCap { .. })
        ));
    }

    /// n-th central difference of f at x with step h, O(h²) accurate.
    fn central_difference(f: &dyn Fn(f64) -> f64, x: f64, n: u32, h: f64) -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=n {
            let node = x + (n as f64 / 2.0 - i as f64) * h;
            acc += binom * f(node);
            binom *= -((n - i) as f64) / (i as f64 + 1.0);
        }
        acc / h.powi(n as i32)
    }

    /// Richardson-extrapolated derivative with a self-reported error
    /// estimate from the last extrapolation step.
    fn fd_derivative(f: &dyn Fn(f64) -> f64, x: f64, n: u32, h: f64) -> (f64, f64) {
        let d1 = central_difference(f, x, n, h);
        let d2 = central_difference(f, x, n, h / 2.0);
        let d3 = central_difference(f, x, n, h / 4.0);
        let r1 = (4.0 * d2 - d1) / 3.0;
        let r2 = (4.0 * d3 - d2) / 3.0;
        let r3 = (16.0 * r2 - r1) / 15.0;
        // truncation estimate plus the rounding floor of the finest stencil
        let noise = f64::EPSILON * 2f64.powi(n as i32) / (h / 4.0).powi(n as i32);
        ((r3), (r2 - r3).abs() + noise)
    }

    #[test]
    fn derivatives_match_finite_differences_interior() {
        let f = |x: f64| g(x);
        for n in 1..=5u32 {
            for &x in &[0.15, 0.3, 0.45, 0.6, 0.75, 0.85] {
                let (fd, est) = fd_derivative(&f, x, n, 0.02);
                let exact = g_derivative(x, n);
                let tol = 10.0 * est + 1e-10 * exact.abs();
                assert!(
                    (fd - exact).abs() <= tol,
                    "n={n} x={x}: fd {fd:.6e} vs exact {exact:.6e}, tol {tol:.2e}"
                );
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences_near_endpoints() {
        // Validates the differentiated series branch; g itself extends
        // smoothly through the sampled stencils.
        let f = |x: f64| g(x);
        for n in 1..=5u32 {
            for &x in &[0.05, 0.95] {
                let (fd, est) = fd_derivative(&f, x, n, 0.008);
                let exact = g_derivative(x, n);
                let tol = 10.0 * est + 1e-9 * exact.abs();
                assert!(
                    (fd - exact).abs() <= tol,
                    "n={n} x={x}: fd {fd:.6e} vs exact {exact:.6e}, tol {tol:.2e}"
                );
            }
        }
    }

    #[test]
    fn fifth_derivative_fd_oracle_at_percent_scale() {
        // Richardson-extrapolated stencil at x of scale 1e-2, compared
        // against the series evaluation. The closed form extends smoothly
        // to small negative x, which keeps the oracle independent of the
        // series branch under test.
        let closed_extension = |x: f64| -> f64 {
            if x == 0.0 {
                return -2.0 * FRAC_1_PI;
            }
            let (s, c) = (PI * x).sin_cos();
            -x * c / s - 1.0 / (PI * (1.0 - x))
        };
        let (fd, est) = fd_derivative(&closed_extension, 0.01, 5, 0.012);
        let exact = g_derivative(0.01, 5);
        assert!(
            (fd - exact).abs() <= 20.0 * est,
            "fd {fd:.6e} vs series {exact:.6e} (est {est:.2e})"
        );
        // and the estimate itself is small enough to be meaningful
        assert!(est < 1e-2 * exact.abs());
    }

    #[test]
    #[should_panic(expected = "order")]
    fn derivative_order_cap() {
        g_derivative(0.5, 7);
    }
}
