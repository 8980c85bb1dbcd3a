use serde::Serialize;

use crate::error::{Error, Result};

/// Counts with rows = true class, columns = predicted class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub counts: Vec<Vec<usize>>,
}

impl ConfusionMatrix {
    pub fn new(k: usize) -> Self {
        ConfusionMatrix {
            counts: vec![vec![0; k]; k],
        }
    }

    pub fn from_counts(counts: Vec<Vec<usize>>) -> Result<Self> {
        let k = counts.len();
        if let Some(r) = counts.iter().find(|r| r.len() != k) {
            return Err(Error::Dimension {
                expected: k,
                got: r.len(),
            });
        }
        Ok(ConfusionMatrix { counts })
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn record(&mut self, truth: usize, pred: usize) -> Result<()> {
        let k = self.k();
        for label in [truth, pred] {
            if label >= k {
                return Err(Error::Label { label, classes: k });
            }
        }
        self.counts[truth][pred] += 1;
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> usize {
        (0..self.k()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.counts[i].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        self.counts.iter().map(|r| r[j]).sum()
    }

    /// One-vs-rest counts for class `c`.
    pub fn class_counts(&self, c: usize) -> ClassCounts {
        let tp = self.counts[c][c];
        let fn_ = self.row_sum(c) - tp;
        let fp = self.col_sum(c) - tp;
        ClassCounts {
            tp,
            fp,
            fn_,
            tn: self.total() - tp - fp - fn_,
        }
    }

    /// Misclassified fraction.
    pub fn error_rate(&self) -> f64 {
        let n = self.total();
        if n == 0 {
            return 0.0;
        }
        (n - self.trace()) as f64 / n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

/// `(TP + TN) / (TP + FP + FN + TN)` as a percentage.
pub fn class_accuracy(c: &ClassCounts) -> f64 {
    let total = c.tp + c.fp + c.fn_ + c.tn;
    if total == 0 {
        return 0.0;
    }
    100.0 * (c.tp + c.tn) as f64 / total as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionReport {
    pub matrix: ConfusionMatrix,
    pub per_class: Vec<ClassCounts>,
    /// Percentages.
    pub per_class_accuracy: Vec<f64>,
    /// Misclassified / total.
    pub error: f64,
}

pub fn confusion_and_accuracy(
    preds: &[usize],
    truths: &[usize],
    k: usize,
) -> Result<ConfusionReport> {
    if preds.len() != truths.len() {
        return Err(Error::Dimension {
            expected: truths.len(),
            got: preds.len(),
        });
    }
    let mut m = ConfusionMatrix::new(k);
    for (&p, &t) in preds.iter().zip(truths) {
        m.record(t, p)?;
    }
    Ok(report_for(m))
}

pub(crate) fn report_for(matrix: ConfusionMatrix) -> ConfusionReport {
    let per_class: Vec<ClassCounts> = (0..matrix.k()).map(|c| matrix.class_counts(c)).collect();
    ConfusionReport {
        per_class_accuracy: per_class.iter().map(class_accuracy).collect(),
        error: matrix.error_rate(),
        per_class,
        matrix,
    }
}

/// Per-class and macro-averaged acceptance rates, in percent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiometricReport {
    /// Diagonal over row sum.
    pub tar: Vec<f64>,
    /// Off-diagonal column hits over column sum.
    pub far: Vec<f64>,
    pub frr: Vec<f64>,
    pub macro_tar: f64,
    pub macro_far: f64,
    pub macro_frr: f64,
}

pub fn biometric_metrics(cm: &ConfusionMatrix) -> Result<BiometricReport> {
    let k = cm.k();
    if k == 0 {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    let mut tar = Vec::with_capacity(k);
    let mut far = Vec::with_capacity(k);
    for c in 0..k {
        let row = cm.row_sum(c);
        if row == 0 {
            return Err(Error::EmptyClass(c));
        }
        let diag = cm.counts[c][c];
        tar.push(100.0 * diag as f64 / row as f64);
        let col = cm.col_sum(c);
        far.push(if col == 0 {
            0.0
        } else {
            100.0 * (col - diag) as f64 / col as f64
        });
    }
    let frr: Vec<f64> = tar.iter().map(|t| 100.0 - t).collect();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / k as f64;
    Ok(BiometricReport {
        macro_tar: mean(&tar),
        macro_far: mean(&far),
        macro_frr: mean(&frr),
        tar,
        far,
        frr,
    })
}
