//! Least-squares line fits in log-log coordinates.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y ≈ slope · x + intercept`; `None` with fewer than
/// two distinct abscissae.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<Fit> {
    assert_eq!(xs.len(), ys.len(), "fit inputs differ in length");
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Some(Fit {
        slope,
        intercept,
        r2,
    })
}

/// Fit of `ln y` against `ln(1-s)` over the points with `s ≥ min_s`.
/// Non-positive `y` values are skipped.
pub fn fit_rate(s: &[f64], y: &[f64], min_s: f64) -> Option<Fit> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = s
        .iter()
        .zip(y)
        .filter(|(s, y)| **s >= min_s && **y > 0.0)
        .map(|(s, y)| ((1.0 - s).ln(), y.ln()))
        .unzip();
    fit_line(&xs, &ys)
}
