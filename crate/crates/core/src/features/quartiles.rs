use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxStats {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub iqr: f64,
    /// Indices beyond 3 × IQR from the quartiles.
    pub outliers: Vec<usize>,
    /// Indices beyond 1.5 × IQR from the quartiles.
    pub suspected_outliers: Vec<usize>,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Tukey quartiles: `q1`/`q3` are medians of the lower/upper halves, the
/// middle element of odd-length data belonging to both halves.
pub fn quartile_stats(data: &[f64]) -> Result<BoxStats> {
    if data.len() < 4 {
        return Err(Error::Size {
            needed: 4,
            got: data.len(),
        });
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let mut s = data.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let half = n.div_ceil(2);
    let q1 = median(&s[..half]);
    let q2 = median(&s);
    let q3 = median(&s[n - half..]);
    let iqr = q3 - q1;
    let beyond = |k: f64| -> Vec<usize> {
        let (lo, hi) = (q1 - k * iqr, q3 + k * iqr);
        data.iter()
            .enumerate()
            .filter(|(_, &v)| v < lo || v > hi)
            .map(|(i, _)| i)
            .collect()
    };
    Ok(BoxStats {
        q1,
        q2,
        q3,
        iqr,
        outliers: beyond(3.0),
        suspected_outliers: beyond(1.5),
    })
}
