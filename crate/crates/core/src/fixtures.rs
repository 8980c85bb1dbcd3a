//! Reference tables shipped with the crate.
//!
//! Each table is embedded at compile time. [`FixtureDir`] loads the same
//! files from disk so that a user-supplied bank or rule set can replace them.

use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::gait_ca::CaRules;
use crate::gait_model::{FieldBank, RangeTable};
use crate::learn::{read_dataset_csv_from, Dataset};
use crate::push_fuzzy::PushTables;

pub const MODEL_BANK_JSON: &str = include_str!("../fixtures/model_bank.json");
pub const PHASE_RANGES_JSON: &str = include_str!("../fixtures/phase_ranges.json");
pub const CA_RULES_JSON: &str = include_str!("../fixtures/ca_rules.json");
pub const PUSH_RECOVERY_JSON: &str = include_str!("../fixtures/push_recovery.json");
/// Four-class, six-feature synthetic dataset for cross-validation runs.
pub const SYNTHETIC_DATASET_CSV: &str = include_str!("../fixtures/synthetic_dataset.csv");

/// Environment variable naming a directory that overrides the embedded tables.
pub const FIXTURE_ENV: &str = "GAITFORGE_FIXTURES";

pub fn model_bank() -> FieldBank {
    FieldBank::from_json_str(MODEL_BANK_JSON).expect("embedded model bank is valid")
}

pub fn range_table() -> RangeTable {
    RangeTable::from_json_str(PHASE_RANGES_JSON).expect("embedded range table is valid")
}

pub fn ca_rules() -> CaRules {
    CaRules::from_json_str(CA_RULES_JSON).expect("embedded CA rules are valid")
}

pub fn push_tables() -> PushTables {
    PushTables::from_json_str(PUSH_RECOVERY_JSON).expect("embedded push tables are valid")
}

pub fn synthetic_dataset() -> Dataset {
    read_dataset_csv_from(
        SYNTHETIC_DATASET_CSV.as_bytes(),
        Path::new("synthetic_dataset.csv"),
    )
    .expect("embedded dataset is valid")
}

/// Table source: a directory on disk, or the embedded copies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixtureDir {
    dir: Option<PathBuf>,
}

impl FixtureDir {
    pub fn embedded() -> Self {
        FixtureDir { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        FixtureDir {
            dir: Some(dir.into()),
        }
    }

    /// Directory from [`FIXTURE_ENV`] if set, otherwise embedded.
    pub fn from_env() -> Self {
        match std::env::var_os(FIXTURE_ENV) {
            Some(d) if !d.is_empty() => Self::at(d),
            _ => Self::embedded(),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn read(&self, name: &str, embedded: &'static str) -> Result<String> {
        match &self.dir {
            Some(d) => {
                let p = d.join(name);
                if p.exists() {
                    Ok(std::fs::read_to_string(p)?)
                } else {
                    Ok(embedded.to_string())
                }
            }
            None => Ok(embedded.to_string()),
        }
    }

    pub fn model_bank(&self) -> Result<FieldBank> {
        FieldBank::from_json_str(&self.read("model_bank.json", MODEL_BANK_JSON)?)
    }

    pub fn range_table(&self) -> Result<RangeTable> {
        RangeTable::from_json_str(&self.read("phase_ranges.json", PHASE_RANGES_JSON)?)
    }

    pub fn ca_rules(&self) -> Result<CaRules> {
        CaRules::from_json_str(&self.read("ca_rules.json", CA_RULES_JSON)?)
    }

    pub fn push_tables(&self) -> Result<PushTables> {
        PushTables::from_json_str(&self.read("push_recovery.json", PUSH_RECOVERY_JSON)?)
    }
}
