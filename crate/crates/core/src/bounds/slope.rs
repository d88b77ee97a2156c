use crate::error::{domain, Error, Result};

/// Least-squares slope of `ln(value)` against `ln(d)` over the points with `d >= d_min`.
pub fn fit_powerlaw_slope(points: &[(f64, f64)], d_min: f64) -> Result<f64> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(d, _)| d >= d_min && d.is_finite())
        .collect();
    if used.len() < 5 {
        return Err(Error::Insufficient(format!(
            "need at least 5 points with d >= {d_min}, got {}",
            used.len()
        )));
    }
    if let Some(&(d, v)) = used.iter().find(|&&(d, v)| !(v > 0.0 && v.is_finite()) || !(d > 0.0)) {
        return Err(domain(
            "fit_powerlaw_slope",
            format!("point ({d}, {v}) is not strictly positive"),
        ));
    }
    if used.iter().all(|&(d, _)| d == used[0].0) {
        return Err(Error::Insufficient("all distances are equal".into()));
    }
    let n = used.len() as f64;
    let (sx, sy) = used
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(d, v)| (sx + d.ln(), sy + v.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(d, v) in &used {
        let dx = d.ln() - mx;
        sxx += dx * dx;
        sxy += dx * (v.ln() - my);
    }
    Ok(sxy / sxx)
}
