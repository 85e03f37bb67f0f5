//! Compensated (Kahan) floating-point accumulation.

/// Running sum that tracks and reinjects rounding error, keeping the total
/// error near one rounding unit of the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_low_bits() {
        // 1 + 2^-60 repeated: a naive sum loses every small increment.
        let tiny = 2f64.powi(-60);
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..1_000_000 {
            acc.add(tiny);
        }
        let expected = 1.0 + 1_000_000.0 * tiny;
        assert!((acc.value() - expected).abs() <= f64::EPSILON * expected);
    }

    #[test]
    fn harmonic_partial_sum_reference() {
        // H_10 = 7381/2520
        let mut acc = KahanSum::new();
        for m in 1..=10 {
            acc.add(1.0 / m as f64);
        }
        assert!((acc.value() - 7381.0 / 2520.0).abs() < 1e-15);
    }
}
