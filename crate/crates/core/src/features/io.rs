use std::io::Write;

use serde::Serialize;

use super::FeatureVector;
use crate::error::Result;

/// One line of the feature matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureRow {
    pub subject: String,
    pub joint: String,
    pub imf: usize,
    pub features: FeatureVector,
    pub label: String,
}

/// Header `subject,joint,imf,min,max,shannon_entropy,log_energy,rms,zcr,label`.
pub fn write_feature_csv<W: Write>(rows: &[FeatureRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["subject", "joint", "imf"];
    header.extend(FeatureVector::NAMES);
    header.push("label");
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.subject.clone(), r.joint.clone(), r.imf.to_string()];
        rec.extend(r.features.to_array().iter().map(|v| format!("{v:.6}")));
        rec.push(r.label.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
