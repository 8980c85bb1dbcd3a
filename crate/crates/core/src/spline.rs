//! Natural cubic interpolating spline.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NaturalSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots; zero at both ends.
    m: Vec<f64>,
}

impl NaturalSpline {
    /// Knots must be strictly increasing. Two knots give a straight line.
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                got: y.len(),
            });
        }
        let n = x.len();
        if n < 2 {
            return Err(Error::Size { needed: 2, got: n });
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain(
                "spline knots must be strictly increasing".into(),
            ));
        }
        if x.iter().chain(y).any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite spline knot".into()));
        }

        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for interior second derivatives (Thomas algorithm)
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                diag[i - 1] = 2.0 * (h0 + h1);
                upper[i - 1] = h1;
                rhs[i - 1] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for i in 1..k {
                let lower = x[i + 1] - x[i];
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for i in (0..k - 1).rev() {
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
            }
        }
        Ok(NaturalSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        })
    }

    /// Value at `t`; outside the knot range the end cubic pieces are extended.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let i = match self.x.partition_point(|&k| k <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }

    pub fn eval_many(&self, ts: &[f64]) -> Vec<f64> {
        ts.iter().map(|&t| self.eval(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_knots() {
        let x = [0.0, 0.5, 1.3, 2.0, 3.1];
        let y = [1.0, -2.0, 0.5, 4.0, 3.0];
        let s = NaturalSpline::new(&x, &y).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((s.eval(*a) - b).abs() < 1e-12);
        }
    }

    #[test]
    fn reproduces_lines() {
        let x: Vec<f64> = (0..7).map(|i| i as f64 * 0.7).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 1.0).collect();
        let s = NaturalSpline::new(&x, &y).unwrap();
        for t in [0.1, 1.9, 3.3, 4.2] {
            assert!((s.eval(t) - (3.0 * t - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn natural_end_conditions() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [0.0, 1.0, 0.0, 1.0];
        let s = NaturalSpline::new(&x, &y).unwrap();
        let h = 1e-4;
        let second = |t: f64| (s.eval(t + h) - 2.0 * s.eval(t) + s.eval(t - h)) / (h * h);
        assert!(second(h).abs() < 1e-2);
        assert!(second(3.0 - h).abs() < 1e-2);
    }

    #[test]
    fn approximates_sine() {
        let x: Vec<f64> = (0..=40)
            .map(|i| i as f64 * std::f64::consts::PI / 20.0)
            .collect();
        let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
        let s = NaturalSpline::new(&x, &y).unwrap();
        for i in 0..200 {
            let t = 0.5 + i as f64 * 0.025;
            assert!((s.eval(t) - t.sin()).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(NaturalSpline::new(&[0.0], &[1.0]).is_err());
        assert!(NaturalSpline::new(&[0.0, 0.0], &[1.0, 2.0]).is_err());
        assert!(NaturalSpline::new(&[0.0, 1.0], &[1.0]).is_err());
    }
}
