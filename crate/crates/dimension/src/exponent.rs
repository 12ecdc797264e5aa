use serde::Serialize;

use crate::error::DimensionError;
use crate::estimate::{DimensionEstimate, Method};
use crate::orbit::OrbitSample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentConfig {
    pub s_lo: f64,
    pub s_hi: f64,
    /// Indicator values above this count as growth.
    pub threshold: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub tol: f64,
    /// Points of the coarse monotonicity scan across the bracket.
    pub scan: usize,
}

impl Default for ExponentConfig {
    fn default() -> Self {
        Self { s_lo: 0.05, s_hi: 1.5, threshold: 1.05, tol: 1e-4, scan: 16 }
    }
}

/// Growth indicator at exponent s: the mean annulus weight of e^{-s d} over
/// [R/2, R) divided by the mean over [R/4, R/2).
///
/// Annulus sums behave like e^{(delta - s) n}, so the ratio is about
/// e^{(delta - s) 3R/8}. Comparing cumulative totals instead would keep
/// reporting growth well above the exponent, since a slowly convergent tail
/// still adds a lot between R/2 and R.
pub fn growth_indicator(sample: &OrbitSample, s: f64) -> f64 {
    let r = sample.budget;
    let lo = sample.window_sum(s, r / 4.0, r / 2.0) / (r / 4.0);
    let hi = sample.window_sum(s, r / 2.0, r) / (r / 2.0);
    if lo == 0.0 {
        if hi == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        hi / lo
    }
}

/// Abscissa of convergence of the orbit series by bisection on the growth
/// indicator.
///
/// The reported uncertainty is the final half-bracket plus the offset that
/// the threshold itself introduces, ln(threshold) / (3R/8).
pub fn critical_exponent(sample: &OrbitSample, config: &ExponentConfig) -> Result<DimensionEstimate, DimensionError> {
    let r = sample.budget;
    if !(config.s_lo < config.s_hi) || config.s_lo < 0.0 {
        return Err(DimensionError::BadBracket { lo: config.s_lo, hi: config.s_hi });
    }
    let tail = sample.distances.iter().filter(|&&d| d >= r / 4.0).count();
    if tail == 0 {
        return Ok(DimensionEstimate::new(Method::SeriesAbscissa, 0.0, f64::EPSILON)
            .with("tail_terms", 0.0)
            .with("budget", r)
            .note(format!("{}: empty tail, the series converges for every s > 0", sample.label)));
    }
    let grows = |s: f64| growth_indicator(sample, s) > config.threshold;

    let scan: Vec<bool> = (0..config.scan.max(2))
        .map(|i| grows(config.s_lo + (config.s_hi - config.s_lo) * i as f64 / (config.scan.max(2) - 1) as f64))
        .collect();
    let monotone = scan.windows(2).all(|w| w[0] || !w[1]);
    let straddles = scan[0] && !scan[scan.len() - 1];

    let (mut lo, mut hi) = (config.s_lo, config.s_hi);
    while hi - lo > config.tol {
        let mid = 0.5 * (lo + hi);
        if grows(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let bias = config.threshold.ln() / (3.0 * r / 8.0);
    let mut est = DimensionEstimate::new(Method::SeriesAbscissa, mid, 0.5 * (hi - lo) + bias)
        .with("budget", r)
        .with("terms", sample.len() as f64)
        .with("tail_terms", tail as f64)
        .with("threshold_offset", bias)
        .with("indicator_at_estimate", growth_indicator(sample, mid))
        .note(format!("source {}", sample.label));
    if !monotone || !straddles {
        est.flagged = true;
        est = est
            .with("indicator_at_s_lo", growth_indicator(sample, config.s_lo))
            .with("indicator_at_s_hi", growth_indicator(sample, config.s_hi))
            .note(if !straddles {
                "bracket does not straddle the exponent".to_string()
            } else {
                "indicator is not monotone across the bracket".to_string()
            });
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Points with density e^{delta x} on [0, R).
    fn synthetic(delta: f64, r: f64) -> OrbitSample {
        let mut d = Vec::new();
        let mut x = 0.0;
        while x < r {
            d.push(x);
            x += (-delta * x).exp() * 0.1;
        }
        OrbitSample::new("synthetic", r, d)
    }

    #[test]
    fn recovers_a_synthetic_exponent() {
        for delta in [0.3, 0.7] {
            let e = critical_exponent(&synthetic(delta, 12.0), &ExponentConfig::default()).unwrap();
            assert!(!e.flagged);
            assert!(e.contains(delta), "{delta}: {e:?}");
        }
    }

    #[test]
    fn empty_tail_is_zero() {
        let s = OrbitSample::new("trivial", 20.0, vec![0.0]);
        let e = critical_exponent(&s, &ExponentConfig::default()).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(e.uncertainty > 0.0);
    }

    #[test]
    fn bad_bracket_is_flagged() {
        let c = ExponentConfig { s_lo: 0.8, s_hi: 1.2, ..ExponentConfig::default() };
        let e = critical_exponent(&synthetic(0.3, 12.0), &c).unwrap();
        assert!(e.flagged);
        assert!(critical_exponent(&synthetic(0.3, 12.0), &ExponentConfig { s_lo: 1.0, s_hi: 0.5, ..c }).is_err());
    }
}
