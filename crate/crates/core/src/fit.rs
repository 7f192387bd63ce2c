//! Fitting of geometric envelopes `A_n <= C h^n` from sampled magnitude data,
//! shared by the growth certificates, the Watson-type checks and the
//! asymptotic verifier.

use crate::error::{Error, Result};

/// Safety factor applied to fitted rates: at finite order the limsup is
/// approached from below.
pub const RATE_SAFETY: f64 = 1.05;

/// A fitted pair `(c, h)` with `value_n <= c * h^n` at every supplied index.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GeometricFit {
    pub c: f64,
    pub h: f64,
    /// Per-index roots `value_n^{1/n}` the rate was read from.
    pub rates: Vec<f64>,
}

/// Fit `(C, h)` so that `values[n].1 <= C h^{values[n].0}` holds at every
/// supplied pair, reading `h` from a stable tail window (the last half of the
/// indices) and then taking `C` as the worst ratio.
///
/// Returns [`Error::GrowthExceeded`] when the per-index rate keeps climbing
/// across the window faster than `log h` drift allows — the data then admits
/// no finite geometric envelope in any meaningful sense.
pub fn fit_geometric(values: &[(usize, f64)], divergence_slope: f64) -> Result<GeometricFit> {
    let positive: Vec<(usize, f64)> = values
        .iter()
        .copied()
        .filter(|&(n, v)| n >= 1 && v > 0.0 && v.is_finite())
        .collect();
    if positive.is_empty() {
        // vacuous data: anything bounds it
        return Ok(GeometricFit {
            c: 1.0,
            h: 1.0,
            rates: Vec::new(),
        });
    }
    if values.iter().any(|&(_, v)| !v.is_finite()) {
        return Err(Error::GrowthExceeded);
    }
    let rates: Vec<f64> = positive
        .iter()
        .map(|&(n, v)| v.powf(1.0 / n as f64))
        .collect();

    let window_start = positive.len() / 2;
    let window = &rates[window_start..];
    // divergence: log-rate still climbing steadily across the window
    if window.len() >= 4 {
        let m = window.len();
        let xs: Vec<f64> = (0..m).map(|i| positive[window_start + i].0 as f64).collect();
        let ys: Vec<f64> = window.iter().map(|r| r.ln()).collect();
        let xbar = xs.iter().sum::<f64>() / m as f64;
        let ybar = ys.iter().sum::<f64>() / m as f64;
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
        let den: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
        if den > 0.0 && num / den > divergence_slope {
            return Err(Error::GrowthExceeded);
        }
    }

    let h = window.iter().copied().fold(0.0f64, f64::max).max(1e-300) * RATE_SAFETY;
    let mut c = 0.0f64;
    for &(n, v) in values.iter() {
        if v.is_finite() && v > 0.0 {
            c = c.max(v / h.powi(n as i32));
        }
    }
    if c == 0.0 {
        c = 1.0;
    }
    Ok(GeometricFit { c, h, rates })
}

/// Least-squares slope/intercept of `y` against `x` (used by the growth-law
/// profile fits).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let den: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let slope = if den > 0.0 { num / den } else { 0.0 };
    (slope, ybar - slope * xbar)
}
