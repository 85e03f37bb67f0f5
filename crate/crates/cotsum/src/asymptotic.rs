//! Closed-form asymptotic evaluators for the cotangent sum, the
//! general-order expansion-term generator, and two independent remainder
//! evaluators.
//!
//! Everything is generated from first principles. Iterating integration
//! by parts on the mode integrals of the Poisson summation identity and
//! resumming over modes gives, for term j ≥ 1,
//!
//! ```text
//! a_j = (-1)^{j+1} · 2·ζ(2j) · [g^{(2j-1)}(1) - g^{(2j-1)}(0)] / (2π)^{2j}
//! ```
//!
//! as the coefficient of `k^{-(2j-1)}` alongside the exact digamma term
//! `(k/π)(ψ(k) + γ - ln 2π)`. Folding in the large-k expansion of ψ
//! cancels the rational `1/π` part of each `a_j` identically (the
//! generator asserts this), leaving a pure power of π per term. All
//! coefficient arithmetic is exact (rationals × powers of π); floats
//! appear only in the final values.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::auxiliary::{endpoint_derivatives, g_derivative};
use crate::kahan::KahanSum;
use crate::quadrature::{self, g5_sin_integral, Estimate, QuadratureConfig};
use crate::special::{
    bernoulli, digamma_integer, digamma_tail_coefficient, zeta_even_ratio, Rational, EULER_GAMMA,
    EVEN_ORDER_CAP, LN_2PI,
};
use crate::{Error, SumIndex};

/// Largest expansion index j accepted by [`expansion_terms`].
pub const EXPANSION_TERM_CAP: u32 = EVEN_ORDER_CAP / 2;

/// Exact coefficient as a sum of rational multiples of powers of π.
#[derive(Debug, Clone, PartialEq)]
pub struct PiForm {
    terms: BTreeMap<i32, Rational>,
}

impl PiForm {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(coefficient: Rational, pi_power: i32) -> Self {
        let mut form = Self::zero();
        form.add_term(coefficient, pi_power);
        form
    }

    fn add_term(&mut self, coefficient: Rational, pi_power: i32) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(pi_power)
            .or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&pi_power);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, c) in &other.terms {
            out.add_term(c.clone(), p);
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (&p, c) in &self.terms {
            out.add_term(c * factor, p);
        }
        out
    }

    /// Rational coefficient attached to π^power (zero when absent).
    pub fn coefficient_of(&self, pi_power: i32) -> Rational {
        self.terms
            .get(&pi_power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Floating-point value of the form.
    pub fn value(&self) -> f64 {
        let mut acc = 0.0;
        for (&p, c) in &self.terms {
            acc += c.to_f64().expect("coefficient representable") * PI.powi(p);
        }
        acc
    }
}

/// Renders as a single reduced fraction, e.g. `(pi^2 + 3)/(36 pi)`,
/// `-pi^3/5400`, `pi/36`.
impl fmt::Display for PiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let min_power = *self.terms.keys().next().expect("non-empty");
        let shift = (-min_power).max(0);

        let mut denom = BigInt::one();
        for c in self.terms.values() {
            denom = denom.lcm(c.denom());
        }
        let mut items: Vec<(i32, BigInt)> = self
            .terms
            .iter()
            .map(|(&p, c)| (p + shift, c.numer() * &denom / c.denom()))
            .collect();
        let mut common = denom.clone();
        for (_, c) in &items {
            common = common.gcd(c);
        }
        denom /= &common;
        for (_, c) in items.iter_mut() {
            *c /= &common;
        }

        let negate_all = items.iter().all(|(_, c)| c.is_negative());
        if negate_all {
            write!(f, "-")?;
            for (_, c) in items.iter_mut() {
                *c = -c.clone();
            }
        }
        items.sort_by(|a, b| b.0.cmp(&a.0));

        let mut numer = String::new();
        for (idx, (p, c)) in items.iter().enumerate() {
            if idx > 0 {
                numer.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                numer.push('-');
            }
            numer.push_str(&monomial(&c.abs(), *p));
        }

        let denom_str = match (denom.is_one(), shift) {
            (true, 0) => String::new(),
            (true, _) => pi_power_str(shift),
            (false, 0) => denom.to_string(),
            (false, _) => format!("({} {})", denom, pi_power_str(shift)),
        };
        if denom_str.is_empty() {
            write!(f, "{numer}")
        } else if items.len() > 1 {
            write!(f, "({numer})/{denom_str}")
        } else {
            write!(f, "{numer}/{denom_str}")
        }
    }
}

fn pi_power_str(p: i32) -> String {
    match p {
        1 => "pi".to_string(),
        _ => format!("pi^{p}"),
    }
}

fn monomial(magnitude: &BigInt, pi_power: i32) -> String {
    match (magnitude.is_one(), pi_power) {
        (_, 0) => magnitude.to_string(),
        (true, p) => pi_power_str(p),
        (false, p) => format!("{} {}", magnitude, pi_power_str(p)),
    }
}

/// One term of the asymptotic expansion: `coefficient / k^power`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm {
    /// Exponent p of k^{-p} (p = 2j - 1 for term j).
    pub power: u32,
    pub coefficient_exact: PiForm,
    pub coefficient_value: f64,
}

/// The generated expansion coefficients, in both arrangements.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerms {
    /// Coefficients alongside the exact digamma term
    /// `(k/π)(ψ(k) + γ - ln 2π) + 3/(2π) + Σ_j psi_form[j]/k^{2j-1}`.
    pub psi_form: Vec<ExpansionTerm>,
    /// Coefficients after folding in the digamma expansion, alongside
    /// `(k ln k)/π - (k/π)(ln 2π - γ) + 1/π + Σ_j series_form[j]/k^{2j-1}`.
    pub series_form: Vec<ExpansionTerm>,
}

/// Regenerates the expansion coefficients for j = 1..=max_j from the
/// endpoint derivatives of g, the even zeta values, and the Bernoulli
/// numbers. No coefficient is hard-coded.
pub fn expansion_terms(max_j: u32) -> Result<ExpansionTerms, Error> {
    if max_j < 1 {
        return Err(Error::Domain("expansion_terms: max_j must be >= 1".into()));
    }
    if max_j > EXPANSION_TERM_CAP {
        return Err(Error::OrderCap {
            requested: max_j,
            cap: EXPANSION_TERM_CAP,
        });
    }
    let mut psi_form = Vec::with_capacity(max_j as usize);
    let mut series_form = Vec::with_capacity(max_j as usize);
    for j in 1..=max_j {
        let power = 2 * j - 1;
        let zeta_ratio = zeta_even_ratio(2 * j)?; // ζ(2j)/π^{2j}, exact
        let fact = BigRational::from_integer(big_factorial(power));

        // Endpoint derivatives of g of order 2j-1, from the endpoint
        // series: g^{(2j-1)}(1) = 2·(2j-1)!·ζ(2j)/π and
        // g^{(2j-1)}(0) = -(2j-1)!/π.
        let at_one = PiForm::term(
            BigRational::from_integer(BigInt::from(2)) * &fact * &zeta_ratio,
            power as i32 - 1 + 1, // π^{2j}·π^{-1} = π^{2j-1}
        );
        let at_zero = PiForm::term(-&fact, -1);
        let delta = at_one.add(&at_zero.scale(&-BigRational::one()));

        // Term j of the mode-resummed expansion:
        //   a_j = (-1)^{j+1}·2·ζ(2j)·Δ_j/(2π)^{2j}
        //       = (-1)^{j+1}·ζ(2j)π^{-2j}·Δ_j/2^{2j-1}  (π^{2j} cancels).
        let mut scalar = &zeta_ratio
            / BigRational::from_integer(BigInt::one() << (2 * j - 1));
        if j % 2 == 0 {
            scalar = -scalar;
        }
        let a_j = delta.scale(&scalar);

        // Folding the digamma expansion term -B_{2j}/(2j·k^{2j})·(k/π):
        // the rational part of a_j is exactly B_{2j}/(2j·π) and cancels.
        let folded = a_j.add(&PiForm::term(-digamma_tail_coefficient(j), -1));
        assert!(
            folded.coefficient_of(-1).is_zero(),
            "1/pi part of the folded term {j} must cancel exactly"
        );

        let a_value = a_j.value();
        let folded_value = folded.value();
        psi_form.push(ExpansionTerm {
            power,
            coefficient_exact: a_j,
            coefficient_value: a_value,
        });
        series_form.push(ExpansionTerm {
            power,
            coefficient_exact: folded,
            coefficient_value: folded_value,
        });
    }
    Ok(ExpansionTerms {
        psi_form,
        series_form,
    })
}

fn big_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

struct EvaluatorTables {
    psi_constant: f64,
    series_constant: f64,
    psi_coefficients: Vec<f64>,
    series_coefficients: Vec<f64>,
}

/// Constants and coefficients of the five-term evaluators, produced by
/// the generator at first use: the constant is -g(0)/2 - g(1)/2 (and
/// picks up -1/(2π) from the digamma expansion in the folded form).
fn tables() -> &'static EvaluatorTables {
    static TABLES: OnceLock<EvaluatorTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let terms = expansion_terms(2).expect("two terms within cap");
        let endpoints = endpoint_derivatives(1).expect("order 1 within cap");
        let psi_constant = -0.5 * (endpoints.at_zero[0] + endpoints.at_one[0]);
        let series_constant = psi_constant - 0.5 / PI;
        EvaluatorTables {
            psi_constant,
            series_constant,
            psi_coefficients: terms.psi_form.iter().map(|t| t.coefficient_value).collect(),
            series_coefficients: terms
                .series_form
                .iter()
                .map(|t| t.coefficient_value)
                .collect(),
        }
    })
}

/// Five-term asymptotic value of c0(1/k) in O(1) work:
/// `(k ln k)/π - (k/π)(ln 2π - γ) + 1/π + π/(36k) - π³/(5400k³)`
/// with every constant drawn from the generator.
pub fn c0_approx_series(k: SumIndex) -> f64 {
    let t = tables();
    let kf = k.as_f64();
    let mut value = kf * kf.ln() / PI - kf / PI * (LN_2PI - EULER_GAMMA) + t.series_constant;
    let k_squared = kf * kf;
    let mut k_power = kf;
    for &coefficient in &t.series_coefficients {
        value += coefficient / k_power;
        k_power *= k_squared;
    }
    value
}

/// Digamma-form evaluation
/// `(k/π)(ψ(k) + γ - ln 2π) + 3/(2π) + a₁/k + a₂/k³` with exact ψ, i.e.
/// the expansion before ψ itself is expanded; the omitted remainder is
/// O(k⁻⁵).
pub fn c0_approx_psi_form(k: SumIndex) -> f64 {
    let t = tables();
    let kf = k.as_f64();
    let bracket = digamma_integer(k.get()) + EULER_GAMMA - LN_2PI;
    let mut value = kf / PI * bracket + t.psi_constant;
    let k_squared = kf * kf;
    let mut k_power = kf;
    for &coefficient in &t.psi_coefficients {
        value += coefficient / k_power;
        k_power *= k_squared;
    }
    value
}

/// Truncated-mode evaluation of the exact remainder
/// `r(k) = -1/(16π⁵k⁴)·Σ_m m⁻⁵·∫₀¹ g⁽⁵⁾(x)·sin(2πmkx) dx`.
///
/// The error bound combines the quadrature estimates of the computed
/// modes with the analytic tail `max|g⁽⁵⁾|·Σ_{m>M} m⁻⁵ ≤ max|g⁽⁵⁾|/(4M⁴)`.
pub fn remainder_reference(
    k: SumIndex,
    modes: u32,
    q: &QuadratureConfig,
) -> Result<Estimate, Error> {
    if modes < 1 {
        return Err(Error::Domain(
            "remainder_reference: modes must be >= 1".into(),
        ));
    }
    q.validate()?;
    let norm = 1.0 / (16.0 * PI.powi(5) * k.as_f64().powi(4));
    let mut mode_sum = KahanSum::new();
    let mut quad_err = KahanSum::new();
    for m in 1..=modes {
        let integral = g5_sin_integral(m as u64, k, q)?;
        let weight = (m as f64).powi(5);
        mode_sum.add(integral.value / weight);
        quad_err.add(integral.error_bound / weight);
    }
    let tail = quadrature::g5_max() * 0.25 / (modes as f64).powi(4);
    Ok(Estimate {
        value: -norm * mode_sum.value(),
        error_bound: norm * (quad_err.value() + tail),
    })
}

/// Closed form of `Σ_m sin(2πmy)/m⁵`: the degree-5 periodic Bernoulli
/// kernel `-(2π)⁵/(2·5!)·B₅({y})`.
pub fn sine_power5_kernel(y: f64) -> f64 {
    let coefficients = bernoulli_poly5_coefficients();
    let frac = y - y.floor();
    let mut b5 = 0.0;
    for &c in coefficients.iter().rev() {
        b5 = b5 * frac + c;
    }
    let factorial5: f64 = (1..=5).map(|i| i as f64).product();
    -(2.0 * PI).powi(5) / (2.0 * factorial5) * b5
}

/// Coefficients of B₅(y) = Σ_i C(5,i)·B_i·y^{5-i} in ascending powers,
/// built from the Bernoulli numbers (B₁ = -1/2).
fn bernoulli_poly5_coefficients() -> &'static [f64; 6] {
    static COEFFS: OnceLock<[f64; 6]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut coefficients = [0.0; 6];
        let mut binom = 1.0;
        for i in 0..=5u32 {
            let b_i = match i {
                0 => 1.0,
                1 => -0.5,
                _ if i % 2 == 1 => 0.0,
                _ => bernoulli(i)
                    .expect("index within cap")
                    .to_f64()
                    .expect("small rational"),
            };
            coefficients[(5 - i) as usize] = binom * b_i;
            binom = binom * (5 - i) as f64 / (i + 1) as f64;
        }
        coefficients
    })
}

/// The remainder as a single non-mode-truncated integral,
/// `r(k) = -1/(16π⁵k⁴)·∫₀¹ g⁽⁵⁾(x)·K₅({kx}) dx`, obtained by swapping
/// the mode sum and the integral and evaluating the sine sum in closed
/// form ([`sine_power5_kernel`]). Panels split at the kernel's zeros
/// (every half period of the underlying oscillation).
pub fn remainder_bernoulli_form(k: SumIndex, q: &QuadratureConfig) -> Result<Estimate, Error> {
    q.validate()?;
    let kf = k.as_f64();
    let half_periods = 2 * k.get();
    let edges: Vec<f64> = (0..=half_periods)
        .map(|j| j as f64 / half_periods as f64)
        .collect();
    let integral = quadrature::integrate_refining(
        &|x| g_derivative(x, 5) * sine_power5_kernel(kf * x),
        &edges,
        q.nodes_per_half_period,
    );
    if integral.error_bound > q.abs_tol {
        return Err(Error::QuadratureNonConvergence {
            achieved: integral.error_bound,
            required: q.abs_tol,
        });
    }
    let norm = 1.0 / (16.0 * PI.powi(5) * kf.powi(4));
    Ok(Estimate {
        value: -norm * integral.value,
        error_bound: norm * integral.error_bound,
    })
}
