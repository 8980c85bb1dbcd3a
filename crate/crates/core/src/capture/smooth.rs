use serde::Serialize;

use super::TimeSeries;
use crate::error::{Error, Result};
use crate::spline::NaturalSpline;

const RMS_STOP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MovingAverageReport {
    pub series: TimeSeries,
    pub passes: usize,
    /// RMS change produced by the final pass.
    pub last_rms: f64,
}

fn average3(x: &[f64]) -> Vec<f64> {
    x.windows(3).map(|w| (w[0] + w[1] + w[2]) / 3.0).collect()
}

/// Linear resampling of `x` onto `n` evenly spaced points spanning it.
fn resample(x: &[f64], n: usize) -> Vec<f64> {
    if x.len() == 1 || n == 1 {
        return vec![x[0]; n];
    }
    let scale = (x.len() - 1) as f64 / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let pos = i as f64 * scale;
            let k = (pos.floor() as usize).min(x.len() - 2);
            let f = pos - k as f64;
            x[k] + f * (x[k + 1] - x[k])
        })
        .collect()
}

/// Repeated 3-point moving average, resampled back to the input length.
///
/// One pass is always made. Passes continue while the RMS change between
/// consecutive passes is at least 1e-4 and the series is longer than half
/// its original length.
pub fn smooth_moving_average(series: &TimeSeries) -> Result<MovingAverageReport> {
    let le = series.len();
    if le < 3 {
        return Err(Error::Size { needed: 3, got: le });
    }
    let mut x = series.values.clone();
    let mut passes = 0;
    let mut rms;
    loop {
        let next = average3(&x);
        let sq: f64 = next.iter().zip(&x[1..]).map(|(a, b)| (a - b).powi(2)).sum();
        rms = (sq / next.len() as f64).sqrt();
        x = next;
        passes += 1;
        if !(rms >= RMS_STOP && 2 * x.len() > le && x.len() >= 3) {
            break;
        }
    }
    Ok(MovingAverageReport {
        series: series.with_values(resample(&x, le)),
        passes,
        last_rms: rms,
    })
}

/// Natural cubic spline through every `stride`-th sample (and the last one),
/// evaluated back on the full grid.
pub fn smooth_spline(series: &TimeSeries, stride: usize) -> Result<TimeSeries> {
    if stride == 0 {
        return Err(Error::Config("knot stride must be at least 1".into()));
    }
    let n = series.len();
    if n < 2 {
        return Err(Error::Size { needed: 2, got: n });
    }
    let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
    if *idx.last().expect("n >= 2") != n - 1 {
        idx.push(n - 1);
    }
    let kx: Vec<f64> = idx.iter().map(|&i| i as f64).collect();
    let ky: Vec<f64> = idx.iter().map(|&i| series.values[i]).collect();
    let spline = NaturalSpline::new(&kx, &ky)?;
    Ok(series.with_values((0..n).map(|i| spline.eval(i as f64)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: Vec<f64>) -> TimeSeries {
        TimeSeries::new(v, 0.01, "deg").unwrap()
    }

    #[test]
    fn hand_trace() {
        let r = smooth_moving_average(&ts(vec![0.0, 3.0, 0.0])).unwrap();
        assert_eq!(r.series.values, [1.0, 1.0, 1.0]);
        assert_eq!(r.passes, 1);
    }

    #[test]
    fn constant_unchanged() {
        let r = smooth_moving_average(&ts(vec![2.5; 17])).unwrap();
        assert_eq!(r.series.values, vec![2.5; 17]);
        assert_eq!(r.passes, 1);
    }

    #[test]
    fn stays_in_range_and_length() {
        let v: Vec<f64> = (0..101)
            .map(|i| (i as f64 * 0.3).sin() + if i % 7 == 0 { 0.8 } else { 0.0 })
            .collect();
        let (lo, hi) = v
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        let r = smooth_moving_average(&ts(v)).unwrap();
        assert_eq!(r.series.len(), 101);
        assert!(r.passes > 1);
        assert!(r
            .series
            .values
            .iter()
            .all(|&x| x >= lo - 1e-12 && x <= hi + 1e-12));
    }

    #[test]
    fn half_length_floor() {
        // sharp alternation keeps the RMS change large, so only the floor stops it
        let v: Vec<f64> = (0..20)
            .map(|i| if i % 2 == 0 { 100.0 } else { -100.0 })
            .collect();
        let r = smooth_moving_average(&ts(v)).unwrap();
        assert_eq!(r.passes, 5);
    }

    #[test]
    fn too_short() {
        assert!(smooth_moving_average(&ts(vec![1.0, 2.0])).is_err());
    }

    #[test]
    fn spline_keeps_knots_and_smooths() {
        let v: Vec<f64> = (0..23).map(|i| (i as f64 * 0.2).sin()).collect();
        let s = smooth_spline(&ts(v.clone()), 5).unwrap();
        assert_eq!(s.len(), 23);
        for i in (0..23).step_by(5).chain([22]) {
            assert!((s.values[i] - v[i]).abs() < 1e-12);
        }
        for (a, b) in s.values.iter().zip(&v) {
            assert!((a - b).abs() < 1e-2);
        }
        assert!(smooth_spline(&ts(v), 0).is_err());
    }
}
