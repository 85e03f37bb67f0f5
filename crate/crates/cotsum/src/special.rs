//! Digamma at integer arguments, exact Bernoulli numbers, and even zeta
//! values.
//!
//! Bernoulli numbers are computed once by the exact integer recurrence
//! `Σ_{j=0}^{m} C(m+1, j)·B_j = 0` over arbitrary-precision rationals and
//! memoized; the even zeta values follow from
//! `ζ(2n) = (-1)^{n+1}·B_{2n}·(2π)^{2n} / (2·(2n)!)`.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::kahan::KahanSum;
use crate::Error;

/// Euler–Mascheroni constant, 40 significant digits.
pub const EULER_GAMMA: f64 = 0.5772156649015328606065120900824024310422;

/// ln(2π), 40 significant digits.
pub const LN_2PI: f64 = 1.8378770664093454835606594728112352797228;

/// Largest even index accepted by [`bernoulli`] and [`zeta_even`].
pub const EVEN_ORDER_CAP: u32 = 40;

/// Exact rational coefficient (reduced, positive denominator).
pub type Rational = BigRational;

/// ψ(k) for integer k ≥ 1, via ψ(k) = H_{k-1} - γ with compensated
/// summation of the harmonic part.
///
/// Panics if `k == 0`.
pub fn digamma_integer(k: u64) -> f64 {
    assert!(k >= 1, "digamma_integer: k must be >= 1");
    let mut h = KahanSum::new();
    for m in 1..k {
        h.add(1.0 / m as f64);
    }
    h.value() - EULER_GAMMA
}

/// Truncated asymptotic expansion of ψ(k) for large k:
/// `ln k - 1/(2k) - Σ_j B_{2j}/(2j·k^{2j})`.
///
/// `order` counts the inverse-power correction terms kept after `ln k`:
/// 0 keeps only `ln k`, 1 adds `-1/(2k)`, and each further step adds the
/// next Bernoulli term (order 3 keeps everything through `1/k^4`).
///
/// Panics if `k == 0` or if the requested order needs Bernoulli numbers
/// past [`EVEN_ORDER_CAP`].
pub fn digamma_asymptotic(k: u64, order: u32) -> f64 {
    assert!(k >= 1, "digamma_asymptotic: k must be >= 1");
    assert!(
        order <= EVEN_ORDER_CAP / 2 + 1,
        "digamma_asymptotic: order {order} beyond the Bernoulli cap"
    );
    let kf = k as f64;
    let mut value = kf.ln();
    if order >= 1 {
        value -= 0.5 / kf;
    }
    let k2 = kf * kf;
    let mut k_pow = k2;
    for j in 1..order {
        let coeff = digamma_tail_coefficient(j)
            .to_f64()
            .expect("tail coefficient fits in f64");
        value -= coeff / k_pow;
        k_pow *= k2;
    }
    value
}

/// Coefficient `B_{2j}/(2j)` of `1/k^{2j}` in the digamma expansion.
pub(crate) fn digamma_tail_coefficient(j: u32) -> Rational {
    let b = bernoulli(2 * j).expect("index within cap");
    b / BigRational::from_integer(BigInt::from(2 * j))
}

fn bernoulli_table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = EVEN_ORDER_CAP as usize;
        // table[m] = B_m for m = 0..=n, built from the defining recurrence
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j.
        let mut table: Vec<BigRational> = Vec::with_capacity(n + 1);
        table.push(BigRational::one());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, b) in table.iter().enumerate() {
                acc += b * &binom;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            table.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        table
    })
}

/// Exact Bernoulli number B_{2n} for even index `2n` with 2 ≤ 2n ≤ 40.
pub fn bernoulli(index: u32) -> Result<Rational, Error> {
    if index < 2 || index % 2 != 0 {
        return Err(Error::Domain(format!(
            "bernoulli: index {index} must be an even integer >= 2"
        )));
    }
    if index > EVEN_ORDER_CAP {
        return Err(Error::OrderCap {
            requested: index,
            cap: EVEN_ORDER_CAP,
        });
    }
    Ok(bernoulli_table()[index as usize].clone())
}

/// ζ(2n) for even `2n` with 2 ≤ 2n ≤ 40.
pub fn zeta_even(index: u32) -> Result<f64, Error> {
    // (-1)^{n+1} B_{2n} is |B_{2n}|, so ζ(2n) = |B_{2n}|·(2π)^{2n}/(2·(2n)!).
    let b = bernoulli(index)?;
    let mut two_pi_pow_over_fact = 1.0;
    for i in 1..=index {
        two_pi_pow_over_fact *= 2.0 * std::f64::consts::PI / i as f64;
    }
    let b_abs = b.abs().to_f64().expect("Bernoulli number fits in f64");
    Ok(b_abs * two_pi_pow_over_fact / 2.0)
}

/// Exact rational ratio ζ(2n)/π^{2n} = (-1)^{n+1}·B_{2n}·2^{2n}/(2·(2n)!).
pub fn zeta_even_ratio(index: u32) -> Result<Rational, Error> {
    let b = bernoulli(index)?;
    let sign = if (index / 2) % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut numer = BigInt::from(sign) << index; // (+/-) 2^{2n}
    let mut denom = BigInt::from(2u32);
    for i in 2..=index {
        denom *= BigInt::from(i);
    }
    numer *= b.numer();
    denom *= b.denom();
    Ok(BigRational::new(numer, denom))
}
