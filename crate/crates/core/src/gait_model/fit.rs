use super::PolynomialVectorField;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub field: PolynomialVectorField,
    /// Root-mean-square residual over the fitted samples (degrees).
    pub rms: f64,
}

/// Ordinary least-squares polynomial through `(x, angle)` samples.
///
/// Solved through the normal equations with each Vandermonde column scaled
/// to unit norm. The returned field has a zero error offset and a valid
/// interval spanning the sample coordinates.
pub fn fit_vector_field(samples: &[(f64, f64)], degree: usize) -> Result<FitResult> {
    if !(PolynomialVectorField::MIN_DEGREE..=PolynomialVectorField::MAX_DEGREE).contains(&degree) {
        return Err(Error::Config(format!(
            "fit degree must be 2..=4, got {degree}"
        )));
    }
    if samples.len() < degree + 1 {
        return Err(Error::Size {
            needed: degree + 1,
            got: samples.len(),
        });
    }
    if samples
        .iter()
        .any(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let m = degree + 1;
    // column k holds x^(degree - k): highest power first
    let row = |x: f64| -> Vec<f64> { (0..m).map(|k| x.powi((degree - k) as i32)).collect() };

    let mut norms = vec![0.0f64; m];
    for &(x, _) in samples {
        for (n, v) in norms.iter_mut().zip(row(x)) {
            *n += v * v;
        }
    }
    let scale: Vec<f64> = norms
        .iter()
        .map(|&n| if n > 0.0 { 1.0 / n.sqrt() } else { 1.0 })
        .collect();

    let mut ata = vec![vec![0.0; m]; m];
    let mut aty = vec![0.0; m];
    for &(x, y) in samples {
        let r: Vec<f64> = row(x).iter().zip(&scale).map(|(v, s)| v * s).collect();
        for i in 0..m {
            aty[i] += r[i] * y;
            for j in 0..m {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    let z = linalg::solve(ata, aty).map_err(|e| match e {
        Error::Singular(msg) => Error::Singular(format!("rank-deficient fit: {msg}")),
        other => other,
    })?;
    let coeffs: Vec<f64> = z.iter().zip(&scale).map(|(z, s)| z * s).collect();

    let lo = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let hi = samples
        .iter()
        .map(|s| s.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let field = PolynomialVectorField::new(coeffs, 0.0, (lo, hi))?;
    let sse: f64 = samples
        .iter()
        .map(|&(x, y)| (field.eval(x) - y).powi(2))
        .sum();
    Ok(FitResult {
        field,
        rms: (sse / samples.len() as f64).sqrt(),
    })
}

/// Gap between a quartic and a quadratic fit of the same samples.
#[derive(Debug, Clone, PartialEq)]
pub struct OverfitBand {
    pub quartic: PolynomialVectorField,
    pub quadratic: PolynomialVectorField,
    /// `(x, |f4(x) − f2(x)|)` on the sample coordinates.
    pub band: Vec<(f64, f64)>,
}

impl OverfitBand {
    pub fn max_width(&self) -> f64 {
        self.band.iter().map(|b| b.1).fold(0.0, f64::max)
    }
}

pub fn overfit_band(samples: &[(f64, f64)]) -> Result<OverfitBand> {
    if samples.len() < 5 {
        return Err(Error::Size {
            needed: 5,
            got: samples.len(),
        });
    }
    let quartic = fit_vector_field(samples, 4)?.field;
    let quadratic = fit_vector_field(samples, 2)?.field;
    let band = samples
        .iter()
        .map(|&(x, _)| (x, (quartic.eval(x) - quadratic.eval(x)).abs()))
        .collect();
    Ok(OverfitBand {
        quartic,
        quadratic,
        band,
    })
}
