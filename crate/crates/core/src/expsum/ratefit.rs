//! Least-squares growth-rate fits in log-log space.

use super::ExpsumError;

/// Ordinary least squares of ln(value) against ln(N).
#[derive(Debug, Clone, Copy)]
pub struct RateFit {
    /// Growth exponent: value ≈ e^intercept · N^slope.
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination in [0, 1].
    pub r_squared: f64,
}

/// Fits (N, value) points, all values strictly positive, at least 4 points.
pub fn rate_fit(points: &[(u64, f64)]) -> Result<RateFit, ExpsumError> {
    if points.len() < 4 {
        return Err(ExpsumError::TooFewPoints(points.len()));
    }
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(n, v) in points {
        if v <= 0.0 || n == 0 {
            return Err(ExpsumError::NonPositiveValue(v));
        }
        xs.push((n as f64).ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
    })
}
