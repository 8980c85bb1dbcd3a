use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use super::TimeSeries;
use crate::error::{Error, Result};

/// Accelerometer export with columns `t,x,y,z`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AccelRecording {
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

impl AccelRecording {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Mean sample period.
    pub fn dt(&self) -> Option<f64> {
        let n = self.t.len();
        (n >= 2).then(|| (self.t[n - 1] - self.t[0]) / (n - 1) as f64)
    }

    /// One axis as a [`TimeSeries`] using the mean sample period.
    pub fn axis(&self, name: char) -> Result<TimeSeries> {
        let values = match name {
            'x' => &self.x,
            'y' => &self.y,
            'z' => &self.z,
            _ => return Err(Error::Config(format!("no axis {name:?}"))),
        };
        let dt = self.dt().ok_or(Error::Size {
            needed: 2,
            got: self.len(),
        })?;
        TimeSeries::new(values.clone(), dt, "m/s^2")
    }
}

pub fn read_accel_csv(path: impl AsRef<Path>) -> Result<AccelRecording> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    read_accel_csv_from(file, path)
}

/// Parses from any reader; `path` only labels error messages.
pub fn read_accel_csv_from<R: Read>(input: R, path: &Path) -> Result<AccelRecording> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(path, 1, e.to_string()))?
        .clone();
    let names: Vec<&str> = header.iter().collect();
    if names != ["t", "x", "y", "z"] {
        return Err(Error::parse(
            path,
            1,
            format!("expected header t,x,y,z, found {}", names.join(",")),
        ));
    }
    let mut rec = AccelRecording::default();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(path, line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let mut vals = [0.0; 4];
        for (i, field) in row.iter().enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                Error::parse(
                    path,
                    line,
                    format!("column {} is not a number: {field:?}", i + 1),
                )
            })?;
            if !v.is_finite() {
                return Err(Error::parse(
                    path,
                    line,
                    format!("column {} is not finite", i + 1),
                ));
            }
            vals[i] = v;
        }
        if let Some(&prev) = rec.t.last() {
            if vals[0] <= prev {
                return Err(Error::parse(path, line, "time stamps must increase"));
            }
        }
        rec.t.push(vals[0]);
        rec.x.push(vals[1]);
        rec.y.push(vals[2]);
        rec.z.push(vals[3]);
    }
    Ok(rec)
}

/// Writes `t,theta1_deg,theta2_deg` from radian inputs.
pub fn write_joint_angles_csv<W: Write>(
    t: &[f64],
    theta1: &[f64],
    theta2: &[f64],
    out: W,
) -> Result<()> {
    if theta1.len() != t.len() || theta2.len() != t.len() {
        return Err(Error::Dimension {
            expected: t.len(),
            got: theta1.len().min(theta2.len()),
        });
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "theta1_deg", "theta2_deg"])?;
    for i in 0..t.len() {
        w.write_record([
            format!("{:.6}", t[i]),
            format!("{:.6}", theta1[i].to_degrees()),
            format!("{:.6}", theta2[i].to_degrees()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<AccelRecording> {
        read_accel_csv_from(text.as_bytes(), Path::new("mem.csv"))
    }

    #[test]
    fn reads_valid_file() {
        let rec = parse("t,x,y,z\n0.0,1,2,3\n0.01,4,5,6\n0.02,7,8,9\n").unwrap();
        assert_eq!(rec.len(), 3);
        assert_eq!(rec.y, [2.0, 5.0, 8.0]);
        assert!((rec.dt().unwrap() - 0.01).abs() < 1e-15);
        assert_eq!(rec.axis('z').unwrap().values, [3.0, 6.0, 9.0]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse("t,x,y,z\n0.0,1,2,3\n0.01,4,oops,6\n").unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 3);
                assert!(msg.contains("column 3"));
            }
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            parse("a,b\n1,2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("t,x,y,z\n0,1,2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("t,x,y,z\n1,0,0,0\n0.5,0,0,0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn writes_degrees() {
        let mut buf = Vec::new();
        write_joint_angles_csv(&[0.0], &[std::f64::consts::PI], &[0.0], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,theta1_deg,theta2_deg\n0.000000,180.000000,0.000000\n"
        );
    }
}
