use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl FitResult {
    pub fn predict(&self, eps: f64) -> f64 {
        self.slope * (1.0 / eps).log10() + self.intercept
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    InsufficientData(usize),
    #[error("x and y lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("target accuracy {0} is outside (0, 1)")]
    EpsOutOfRange(f64),
    #[error("all target accuracies coincide")]
    Degenerate,
}

/// Ordinary least squares of `y = slope·log₁₀(1/ε) + intercept`.
///
/// `r2` is taken as 1 when the ys have zero variance.
pub fn fit_log_model(eps: &[f64], ys: &[f64]) -> Result<FitResult, FitError> {
    if eps.len() != ys.len() {
        return Err(FitError::LengthMismatch(eps.len(), ys.len()));
    }
    if eps.len() < 3 {
        return Err(FitError::InsufficientData(eps.len()));
    }
    if let Some(&bad) = eps.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(FitError::EpsOutOfRange(bad));
    }
    let xs: Vec<f64> = eps.iter().map(|e| (1.0 / e).log10()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::Degenerate);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(FitResult { slope, intercept, r2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let fit = fit_log_model(&[1e-1, 1e-2, 1e-3], &[2.0, 4.0, 6.0]).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!(fit.intercept.abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        assert!((fit.predict(1e-4) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn constant_ys() {
        let fit = fit_log_model(&[1e-1, 1e-2, 1e-3, 1e-4], &[3.0; 4]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r2, 1.0);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
    }

    #[test]
    fn residuals_are_orthogonal() {
        let eps = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
        let ys = [1.0, 2.7, 3.1, 5.2, 5.9];
        let fit = fit_log_model(&eps, &ys).unwrap();
        let xs: Vec<f64> = eps.iter().map(|e: &f64| (1.0 / e).log10()).collect();
        let res: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| y - fit.slope * x - fit.intercept).collect();
        assert!(res.iter().sum::<f64>().abs() < 1e-9);
        assert!(res.iter().zip(&xs).map(|(r, x)| r * x).sum::<f64>().abs() < 1e-9);
        assert!(fit.r2 > 0.0 && fit.r2 < 1.0);
    }

    #[test]
    fn errors() {
        assert_eq!(fit_log_model(&[0.1, 0.01], &[1.0, 2.0]), Err(FitError::InsufficientData(2)));
        assert_eq!(fit_log_model(&[0.1, 0.01, 1.0], &[1.0, 2.0, 3.0]), Err(FitError::EpsOutOfRange(1.0)));
        assert_eq!(fit_log_model(&[0.1, 0.1, 0.1], &[1.0, 2.0, 3.0]), Err(FitError::Degenerate));
        assert!(matches!(fit_log_model(&[0.1, 0.01, 0.001], &[1.0]), Err(FitError::LengthMismatch(3, 1))));
    }
}
