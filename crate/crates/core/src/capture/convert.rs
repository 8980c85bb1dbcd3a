use crate::error::{Error, Result};

/// Largest raw sensor count; counts span `0..=999`.
pub const COUNT_MAX: f64 = 999.0;

const DEG_PER_COUNT: f64 = 300.0 / 1000.0;
const NEWTON_PER_COUNT: f64 = 9.8 / 100.0;

fn check_counts(what: &'static str, c: f64) -> Result<()> {
    if !(0.0..=COUNT_MAX).contains(&c) {
        return Err(Error::Range {
            what,
            value: c,
            lo: 0.0,
            hi: COUNT_MAX,
        });
    }
    Ok(())
}

/// Pulls values within rounding of the count range back onto it.
fn snap(c: f64) -> f64 {
    if (-1e-9..0.0).contains(&c) {
        0.0
    } else if c > COUNT_MAX && c - COUNT_MAX < 1e-9 {
        COUNT_MAX
    } else {
        c
    }
}

/// Potentiometer counts relative to the zero reading `theta0`, in degrees.
pub fn counts_to_angle(theta: f64, theta0: f64) -> Result<f64> {
    check_counts("angle counts", theta)?;
    check_counts("zero counts", theta0)?;
    Ok((theta - theta0) * DEG_PER_COUNT)
}

/// Inverse of [`counts_to_angle`] for a given zero reading.
pub fn angle_to_counts(degrees: f64, theta0: f64) -> Result<f64> {
    check_counts("zero counts", theta0)?;
    let c = snap(degrees / DEG_PER_COUNT + theta0);
    check_counts("angle counts", c)?;
    Ok(c)
}

/// Force-sensor counts in newtons.
pub fn counts_to_force(f: f64) -> Result<f64> {
    check_counts("force counts", f)?;
    Ok(f * NEWTON_PER_COUNT)
}

pub fn force_to_counts(newtons: f64) -> Result<f64> {
    let c = snap(newtons / NEWTON_PER_COUNT);
    check_counts("force counts", c)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_examples() {
        assert_eq!(counts_to_angle(412.0, 412.0).unwrap(), 0.0);
        assert!((counts_to_angle(999.0, 0.0).unwrap() - 299.7).abs() < 1e-12);
        assert!((counts_to_angle(200.0, 100.0).unwrap() - 30.0).abs() < 1e-12);
        assert!(counts_to_angle(1000.0, 0.0).is_err());
        assert!(counts_to_angle(10.0, -1.0).is_err());
    }

    #[test]
    fn force_examples() {
        assert_eq!(counts_to_force(0.0).unwrap(), 0.0);
        assert!((counts_to_force(100.0).unwrap() - 9.8).abs() < 1e-12);
        assert!((counts_to_force(50.0).unwrap() - 4.9).abs() < 1e-12);
        assert!(counts_to_force(-3.0).is_err());
    }

    #[test]
    fn inverses() {
        for c in [0.0, 1.0, 137.0, 500.0, 999.0] {
            let a = counts_to_angle(c, 20.0_f64.min(c)).unwrap();
            assert!((angle_to_counts(a, 20.0_f64.min(c)).unwrap() - c).abs() < 1e-9);
            let f = counts_to_force(c).unwrap();
            assert!((force_to_counts(f).unwrap() - c).abs() < 1e-9);
        }
    }
}
