use serde::Serialize;

use crate::error::{Error, Result};
use crate::spline::NaturalSpline;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmdOptions {
    pub max_imfs: usize,
    pub max_sifts: usize,
    /// Cauchy threshold on the normalized squared change between sifts.
    pub sd_threshold: f64,
}

impl Default for EmdOptions {
    fn default() -> Self {
        EmdOptions {
            max_imfs: 10,
            max_sifts: 100,
            sd_threshold: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Imf {
    pub values: Vec<f64>,
    /// Extraction order, from 0.
    pub index: usize,
    pub sifts: usize,
    /// Both stopping tests passed before the sift budget ran out.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub imfs: Vec<Imf>,
    pub residue: Vec<f64>,
}

impl Decomposition {
    /// Sum of all IMFs and the residue.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut out = self.residue.clone();
        for imf in &self.imfs {
            for (o, v) in out.iter_mut().zip(&imf.values) {
                *o += v;
            }
        }
        out
    }
}

/// Indices of strict interior maxima and minima (plateaus count once, at
/// their first sample).
fn extrema(x: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    for i in 1..x.len().saturating_sub(1) {
        if x[i] > x[i - 1] && x[i] >= x[i + 1] {
            maxima.push(i);
        } else if x[i] < x[i - 1] && x[i] <= x[i + 1] {
            minima.push(i);
        }
    }
    (maxima, minima)
}

pub fn count_extrema(x: &[f64]) -> usize {
    let (a, b) = extrema(x);
    a.len() + b.len()
}

/// Turning points whose swing from the previous turning point exceeds `tol`.
/// Wiggles at or below `tol` are treated as flat.
pub fn count_significant_extrema(x: &[f64], tol: f64) -> usize {
    let Some(&first) = x.first() else {
        return 0;
    };
    let mut anchor = first;
    let mut rising: Option<bool> = None;
    let mut turns = 0;
    for &v in &x[1..] {
        match rising {
            None => {
                if (v - anchor).abs() > tol {
                    rising = Some(v > anchor);
                    anchor = v;
                }
            }
            Some(up) => {
                if (up && v > anchor) || (!up && v < anchor) {
                    anchor = v;
                } else if (v - anchor).abs() > tol {
                    turns += 1;
                    rising = Some(!up);
                    anchor = v;
                }
            }
        }
    }
    turns
}

/// Rounding floor for `signal`, used to tell real extrema from noise.
pub fn noise_floor(signal: &[f64]) -> f64 {
    let scale = signal.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    1e-12 * scale.max(f64::MIN_POSITIVE)
}

/// Sign changes between consecutive samples; exact zeros do not count.
pub fn count_zero_crossings(x: &[f64]) -> usize {
    x.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

/// Spline through the extrema at `idx`, with the outermost two mirrored
/// across each end of the record.
fn envelope(x: &[f64], idx: &[usize]) -> Result<Vec<f64>> {
    let n = x.len();
    let last = (n - 1) as f64;
    let mut knots: Vec<(f64, f64)> = Vec::with_capacity(idx.len() + 4);
    for &i in idx.iter().take(2).rev() {
        knots.push((-(i as f64), x[i]));
    }
    knots.extend(idx.iter().map(|&i| (i as f64, x[i])));
    for &i in idx.iter().rev().take(2) {
        knots.push((2.0 * last - i as f64, x[i]));
    }
    let (kx, ky): (Vec<f64>, Vec<f64>) = knots.into_iter().unzip();
    let spline = NaturalSpline::new(&kx, &ky)?;
    Ok((0..n).map(|t| spline.eval(t as f64)).collect())
}

fn sift_once(h: &[f64]) -> Result<Option<Vec<f64>>> {
    let (maxima, minima) = extrema(h);
    if maxima.is_empty() || minima.is_empty() {
        return Ok(None);
    }
    let upper = envelope(h, &maxima)?;
    let lower = envelope(h, &minima)?;
    Ok(Some(
        h.iter()
            .zip(upper.iter().zip(&lower))
            .map(|(v, (u, l))| v - 0.5 * (u + l))
            .collect(),
    ))
}

fn is_imf_shape(h: &[f64]) -> bool {
    count_extrema(h).abs_diff(count_zero_crossings(h)) <= 1
}

/// Sifts IMFs out of `signal` until the residue has fewer than two extrema
/// above the [`noise_floor`] or `max_imfs` have been taken.
///
/// The residue is carried as `signal − Σ IMFs`, so the decomposition sums
/// back to the input up to rounding.
pub fn emd_decompose(signal: &[f64], opts: &EmdOptions) -> Result<Decomposition> {
    if signal.len() < 4 {
        return Err(Error::Size {
            needed: 4,
            got: signal.len(),
        });
    }
    if signal.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let floor = noise_floor(signal);
    let mut residue = signal.to_vec();
    let mut imfs = Vec::new();
    while imfs.len() < opts.max_imfs && count_significant_extrema(&residue, floor) >= 2 {
        let mut h = residue.clone();
        let mut sifts = 0;
        let mut converged = false;
        while sifts < opts.max_sifts {
            let Some(next) = sift_once(&h)? else {
                break;
            };
            sifts += 1;
            let num: f64 = h.iter().zip(&next).map(|(a, b)| (a - b).powi(2)).sum();
            let den: f64 = h.iter().map(|a| a * a).sum();
            let sd = if den > 0.0 { num / den } else { 0.0 };
            h = next;
            if sd < opts.sd_threshold && is_imf_shape(&h) {
                converged = true;
                break;
            }
        }
        if sifts == 0 {
            break;
        }
        for (r, v) in residue.iter_mut().zip(&h) {
            *r -= v;
        }
        imfs.push(Imf {
            values: h,
            index: imfs.len(),
            sifts,
            converged,
        });
    }
    Ok(Decomposition { imfs, residue })
}
