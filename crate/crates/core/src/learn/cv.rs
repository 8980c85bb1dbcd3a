use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ConfusionMatrix, Dataset};
use crate::error::{Error, Result};

/// Mean, sample variance (n − 1) and standard deviation of fold scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvSummary {
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
}

pub fn summarize_folds(acc: &[f64]) -> Result<CvSummary> {
    if acc.len() < 2 {
        return Err(Error::Size {
            needed: 2,
            got: acc.len(),
        });
    }
    let p = acc.len() as f64;
    let mean = acc.iter().sum::<f64>() / p;
    let variance = acc.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (p - 1.0);
    Ok(CvSummary {
        fold_accuracies: acc.to_vec(),
        mean,
        variance,
        std_dev: variance.sqrt(),
    })
}

/// Test-fold index sets: each class is shuffled with the seed and dealt
/// round-robin across the folds. Indices within a fold are sorted.
pub fn kfold_indices(
    labels: &[usize],
    n_classes: usize,
    folds: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::Config(format!("need at least 2 folds, got {folds}")));
    }
    let mut by_class = vec![Vec::new(); n_classes];
    for (i, &l) in labels.iter().enumerate() {
        if l >= n_classes {
            return Err(Error::Label {
                label: l,
                classes: n_classes,
            });
        }
        by_class[l].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Vec::new(); folds];
    let mut next = 0;
    for (class, mut members) in by_class.into_iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        if members.len() < folds {
            return Err(Error::Stratification {
                class,
                count: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for i in members {
            out[next].push(i);
            next = (next + 1) % folds;
        }
    }
    for f in &mut out {
        f.sort_unstable();
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvReport {
    pub folds: Vec<Vec<usize>>,
    pub summary: CvSummary,
    /// Pooled over all test folds.
    pub confusion: ConfusionMatrix,
}

/// Stratified k-fold cross-validation. `trainer(train, test)` returns the
/// predicted labels for `test`. Fold accuracies are percentages.
pub fn kfold_cv<F>(data: &Dataset, folds: usize, seed: u64, mut trainer: F) -> Result<CvReport>
where
    F: FnMut(&Dataset, &Dataset) -> Result<Vec<usize>>,
{
    let k = data.n_classes();
    let test_sets = kfold_indices(&data.labels, k, folds, seed)?;
    let mut confusion = ConfusionMatrix::new(k);
    let mut accs = Vec::with_capacity(folds);
    for test_idx in &test_sets {
        let train_idx: Vec<usize> = (0..data.len())
            .filter(|i| test_idx.binary_search(i).is_err())
            .collect();
        let train = data.subset(&train_idx);
        let test = data.subset(test_idx);
        let preds = trainer(&train, &test)?;
        if preds.len() != test.len() {
            return Err(Error::Dimension {
                expected: test.len(),
                got: preds.len(),
            });
        }
        let mut correct = 0;
        for (&p, &t) in preds.iter().zip(&test.labels) {
            confusion.record(t, p)?;
            correct += usize::from(p == t);
        }
        accs.push(100.0 * correct as f64 / test.len() as f64);
    }
    Ok(CvReport {
        folds: test_sets,
        summary: summarize_folds(&accs)?,
        confusion,
    })
}
