use super::{squared_distance, Dataset};
use crate::error::{Error, Result};

/// Majority label among the `k` nearest training points (Euclidean).
///
/// Vote ties go to the class with the smaller summed distance, then to the
/// lower class id.
pub fn knn_classify(train: &Dataset, k: usize, query: &[f64]) -> Result<usize> {
    if train.is_empty() {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    if k == 0 || k > train.len() {
        return Err(Error::Config(format!(
            "k must be in 1..={}, got {k}",
            train.len()
        )));
    }
    if query.len() != train.dim() {
        return Err(Error::Dimension {
            expected: train.dim(),
            got: query.len(),
        });
    }
    let mut dist: Vec<(f64, usize)> = train
        .features
        .iter()
        .zip(&train.labels)
        .map(|(f, &l)| (squared_distance(f, query).sqrt(), l))
        .collect();
    dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut votes = vec![(0usize, 0.0f64); train.n_classes()];
    for &(d, l) in &dist[..k] {
        votes[l].0 += 1;
        votes[l].1 += d;
    }
    let best = votes
        .iter()
        .enumerate()
        .filter(|(_, v)| v.0 > 0)
        .min_by(|(ia, a), (ib, b)| b.0.cmp(&a.0).then(a.1.total_cmp(&b.1)).then(ia.cmp(ib)))
        .map(|(i, _)| i)
        .expect("k >= 1 casts a vote");
    Ok(best)
}
