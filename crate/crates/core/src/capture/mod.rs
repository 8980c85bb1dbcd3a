//! Sensor ingestion: count conversions, two-link kinematics and smoothing.

mod convert;
mod io;
mod kinematics;
mod smooth;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use convert::{angle_to_counts, counts_to_angle, counts_to_force, force_to_counts, COUNT_MAX};
pub use io::{read_accel_csv, read_accel_csv_from, write_joint_angles_csv, AccelRecording};
pub use kinematics::{
    fk_two_link, ik_alg1_batch, ik_two_link, Elbow, TwoLinkGeometry, TwoLinkPose,
};
pub use smooth::{smooth_moving_average, smooth_spline, MovingAverageReport};

/// Uniformly sampled signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub values: Vec<f64>,
    /// Sample period (s).
    pub dt: f64,
    pub unit: String,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>, dt: f64, unit: impl Into<String>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!(
                "sample period must be positive, got {dt}"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("time series holds a non-finite value".into()));
        }
        Ok(TimeSeries {
            values,
            dt,
            unit: unit.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_values(&self, values: Vec<f64>) -> Self {
        TimeSeries {
            values,
            dt: self.dt,
            unit: self.unit.clone(),
        }
    }
}

/// Subtracts the first sample from every sample.
pub fn zero_correct(series: &TimeSeries) -> Result<TimeSeries> {
    let first = *series
        .values
        .first()
        .ok_or(Error::Size { needed: 1, got: 0 })?;
    Ok(series.with_values(series.values.iter().map(|v| v - first).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec(), 0.01, "deg").unwrap()
    }

    #[test]
    fn zero_correct_examples() {
        assert_eq!(
            zero_correct(&ts(&[5.0, 7.0, 9.0])).unwrap().values,
            [0.0, 2.0, 4.0]
        );
        assert_eq!(zero_correct(&ts(&[3.0; 4])).unwrap().values, [0.0; 4]);
        let once = zero_correct(&ts(&[1.5, -2.0, 4.0])).unwrap();
        assert_eq!(zero_correct(&once).unwrap(), once);
        assert!(matches!(zero_correct(&ts(&[])), Err(Error::Size { .. })));
    }

    #[test]
    fn rejects_bad_series() {
        assert!(TimeSeries::new(vec![1.0], 0.0, "").is_err());
        assert!(TimeSeries::new(vec![f64::NAN], 0.1, "").is_err());
    }
}
