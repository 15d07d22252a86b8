//! Log-log convergence-rate fits on MSE curves.

use crate::error::{Error, Result};

/// Mean squared error against the reference distribution at each recorded
/// tour count, averaged over replicates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MseCurve {
    /// `(n, mse)` with `n` strictly increasing.
    pub points: Vec<(u64, f64)>,
    pub slope: Option<f64>,
}

impl MseCurve {
    pub fn new(points: Vec<(u64, f64)>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        let mut curve = Self {
            points,
            slope: None,
        };
        curve.slope = estimate_rate(&curve).ok();
        curve
    }

    pub fn last(&self) -> Option<(u64, f64)> {
        self.points.last().copied()
    }
}

/// Least-squares slope of `log10(mse)` against `log10(n)` over the last half
/// of the recorded points.
pub fn estimate_rate(curve: &MseCurve) -> Result<f64> {
    let pts = &curve.points;
    if pts.len() < 10 {
        return Err(Error::Contract(format!(
            "rate fit needs at least 10 points, got {}",
            pts.len()
        )));
    }
    let tail = &pts[pts.len() / 2..];
    if tail
        .iter()
        .any(|&(n, mse)| n == 0 || mse <= 0.0 || !mse.is_finite())
    {
        return Err(Error::Contract(
            "rate fit needs positive finite errors".into(),
        ));
    }
    let xy: Vec<(f64, f64)> = tail
        .iter()
        .map(|&(n, mse)| ((n as f64).log10(), mse.log10()))
        .collect();
    Ok(least_squares_slope(&xy))
}

pub fn least_squares_slope(xy: &[(f64, f64)]) -> f64 {
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = xy.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xy.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Running median over a centered window (truncated at the ends).
pub fn median_smooth(values: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            let mut w = values[lo..hi].to_vec();
            w.sort_by(f64::total_cmp);
            w[w.len() / 2]
        })
        .collect()
}
