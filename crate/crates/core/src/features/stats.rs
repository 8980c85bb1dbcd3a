use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 16;

const LOG_FLOOR: f64 = 1e-300;

/// Six summary statistics of a signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeatureVector {
    pub min: f64,
    pub max: f64,
    /// Histogram entropy in bits.
    pub shannon_entropy: f64,
    /// Sum of `ln(s²)` with squares below 1e-300 floored.
    pub log_energy: f64,
    pub rms: f64,
    pub zcr: f64,
}

impl FeatureVector {
    pub const NAMES: [&'static str; 6] =
        ["min", "max", "shannon_entropy", "log_energy", "rms", "zcr"];

    pub fn to_array(&self) -> [f64; 6] {
        [
            self.min,
            self.max,
            self.shannon_entropy,
            self.log_energy,
            self.rms,
            self.zcr,
        ]
    }
}

/// Entropy (bits) of an equal-width histogram over `[min, max]`.
/// A constant signal has entropy 0.
pub fn shannon_entropy(s: &[f64], bins: usize) -> Result<f64> {
    if bins == 0 {
        return Err(Error::Config("histogram needs at least one bin".into()));
    }
    if s.is_empty() {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    let (lo, hi) = min_max(s);
    if hi == lo {
        return Ok(0.0);
    }
    let mut counts = vec![0usize; bins];
    let width = (hi - lo) / bins as f64;
    for &v in s {
        let b = (((v - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    let n = s.len() as f64;
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum())
}

fn min_max(s: &[f64]) -> (f64, f64) {
    s.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        })
}

pub fn feature_vector(s: &[f64]) -> Result<FeatureVector> {
    feature_vector_with_bins(s, DEFAULT_BINS)
}

pub fn feature_vector_with_bins(s: &[f64], bins: usize) -> Result<FeatureVector> {
    if s.is_empty() {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let (min, max) = min_max(s);
    let log_energy = s.iter().map(|v| (v * v).max(LOG_FLOOR).ln()).sum();
    let rms = (s.iter().map(|v| v * v).sum::<f64>() / s.len() as f64).sqrt();
    let zcr = if s.len() < 2 {
        0.0
    } else {
        let crossings = s.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        crossings as f64 / (s.len() - 1) as f64
    };
    Ok(FeatureVector {
        min,
        max,
        shannon_entropy: shannon_entropy(s, bins)?,
        log_energy,
        rms,
        zcr,
    })
}
