use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GaitPhase, JointId, PhaseSchedule, CYCLE_LENGTH};
use crate::error::{Error, Result};

/// Joint angle (degrees) as a polynomial in the global cycle coordinate,
/// plus a constant error offset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialVectorField {
    /// Highest degree first.
    #[serde(rename = "coeffs")]
    coefficients: Vec<f64>,
    #[serde(rename = "error")]
    error_offset: f64,
    #[serde(rename = "interval")]
    valid_interval: (f64, f64),
}

impl PolynomialVectorField {
    pub const MIN_DEGREE: usize = 2;
    pub const MAX_DEGREE: usize = 4;

    pub fn new(
        coefficients: Vec<f64>,
        error_offset: f64,
        valid_interval: (f64, f64),
    ) -> Result<Self> {
        let field = PolynomialVectorField {
            coefficients,
            error_offset,
            valid_interval,
        };
        field.check()?;
        Ok(field)
    }

    fn check(&self) -> Result<()> {
        let n = self.coefficients.len();
        if !(Self::MIN_DEGREE + 1..=Self::MAX_DEGREE + 1).contains(&n) {
            return Err(Error::Config(format!(
                "polynomial degree must be in 2..=4, got {} coefficients",
                n
            )));
        }
        if !self.coefficients.iter().all(|c| c.is_finite()) || !self.error_offset.is_finite() {
            return Err(Error::Config("non-finite coefficient".into()));
        }
        let (lo, hi) = self.valid_interval;
        if !(lo.is_finite() && hi.is_finite() && lo < hi && lo >= 0.0 && hi <= CYCLE_LENGTH) {
            return Err(Error::Config(format!(
                "valid interval [{lo}, {hi}] must be non-empty and inside [0, {CYCLE_LENGTH}]"
            )));
        }
        Ok(())
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn error_offset(&self) -> f64 {
        self.error_offset
    }

    pub fn valid_interval(&self) -> (f64, f64) {
        self.valid_interval
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn with_interval(mut self, interval: (f64, f64)) -> Result<Self> {
        self.valid_interval = interval;
        self.check()?;
        Ok(self)
    }

    pub fn with_error_offset(mut self, error_offset: f64) -> Self {
        self.error_offset = error_offset;
        self
    }

    /// Horner evaluation, interval not enforced.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, &c| acc * x + c) + self.error_offset
    }

    /// Like [`eval`](Self::eval), but rejects `x` outside the valid interval.
    pub fn eval_strict(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.valid_interval;
        if !(lo..=hi).contains(&x) {
            return Err(Error::Range {
                what: "cycle coordinate",
                value: x,
                lo,
                hi,
            });
        }
        Ok(self.eval(x))
    }
}

/// Vector fields for every (joint, phase) pair.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FieldBank {
    fields: BTreeMap<(JointId, GaitPhase), PolynomialVectorField>,
}

type BankFile = BTreeMap<String, BTreeMap<String, PolynomialVectorField>>;

impl FieldBank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, joint: JointId, phase: GaitPhase, field: PolynomialVectorField) {
        self.fields.insert((joint, phase), field);
    }

    pub fn get(&self, joint: JointId, phase: GaitPhase) -> Option<&PolynomialVectorField> {
        self.fields.get(&(joint, phase))
    }

    pub fn iter(&self) -> impl Iterator<Item = (JointId, GaitPhase, &PolynomialVectorField)> {
        self.fields.iter().map(|(&(j, p), f)| (j, p, f))
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Fails on the first missing (joint, phase) pair.
    pub fn ensure_complete(&self) -> Result<()> {
        for joint in JointId::ALL {
            for phase in GaitPhase::ALL {
                if self.get(joint, phase).is_none() {
                    return Err(Error::Config(format!(
                        "model bank has no field for {joint} / {phase}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-derives every valid interval from `schedule`.
    pub fn with_schedule(&self, schedule: &PhaseSchedule) -> Result<Self> {
        let mut out = FieldBank::new();
        for (j, p, f) in self.iter() {
            out.insert(j, p, f.clone().with_interval(schedule.interval(p))?);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: BankFile = serde_json::from_str(s)?;
        let mut bank = FieldBank::new();
        for (joint, phases) in raw {
            let joint: JointId = joint.parse()?;
            for (phase, field) in phases {
                let phase: GaitPhase = phase.parse()?;
                field.check()?;
                bank.insert(joint, phase, field);
            }
        }
        Ok(bank)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut raw: BankFile = BTreeMap::new();
        for (j, p, f) in self.iter() {
            raw.entry(j.name().to_string())
                .or_default()
                .insert(p.as_str().to_string(), f.clone());
        }
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}
