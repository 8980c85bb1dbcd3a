use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{squared_distance, Dataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansResult {
    pub centroids: Vec<Vec<f64>>,
    pub assignments: Vec<usize>,
    /// Within-cluster SSE after the seeding and after every Lloyd iteration.
    pub sse_history: Vec<f64>,
    pub iterations: usize,
}

impl KMeansResult {
    pub fn sse(&self) -> f64 {
        *self
            .sse_history
            .last()
            .expect("history holds the seeding SSE")
    }
}

fn nearest(centroids: &[Vec<f64>], x: &[f64]) -> (usize, f64) {
    centroids
        .iter()
        .enumerate()
        .map(|(i, c)| (i, squared_distance(c, x)))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("k >= 1")
}

fn assign(centroids: &[Vec<f64>], data: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let mut sse = 0.0;
    let a = data
        .iter()
        .map(|x| {
            let (i, d) = nearest(centroids, x);
            sse += d;
            i
        })
        .collect();
    (a, sse)
}

fn distinct_points(data: &[Vec<f64>]) -> usize {
    let mut v: Vec<&Vec<f64>> = data.iter().collect();
    v.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    v.dedup();
    v.len()
}

/// Lloyd iterations from a seeded k-means++ start. Stops when assignments
/// stop changing or after `max_iter` iterations.
pub fn kmeans(data: &[Vec<f64>], k: usize, max_iter: usize, seed: u64) -> Result<KMeansResult> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let Some(first) = data.first() else {
        return Err(Error::Size { needed: k, got: 0 });
    };
    let dim = first.len();
    if let Some(bad) = data.iter().find(|x| x.len() != dim) {
        return Err(Error::Dimension {
            expected: dim,
            got: bad.len(),
        });
    }
    let distinct = distinct_points(data);
    if k > distinct {
        return Err(Error::Config(format!(
            "k = {k} exceeds the {distinct} distinct points"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = vec![data[rng.random_range(0..data.len())].clone()];
    let mut d2: Vec<f64> = data
        .iter()
        .map(|x| squared_distance(x, &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let mut target = rng.random::<f64>() * total;
        let mut pick = d2
            .iter()
            .rposition(|&d| d > 0.0)
            .expect("distinct points remain");
        for (i, &d) in d2.iter().enumerate() {
            if d > 0.0 && target < d {
                pick = i;
                break;
            }
            target -= d;
        }
        let c = data[pick].clone();
        for (di, x) in d2.iter_mut().zip(data) {
            *di = di.min(squared_distance(x, &c));
        }
        centroids.push(c);
    }

    let (mut assignments, sse) = assign(&centroids, data);
    let mut sse_history = vec![sse];
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (x, &a) in data.iter().zip(&assignments) {
            counts[a] += 1;
            for (s, v) in sums[a].iter_mut().zip(x) {
                *s += v;
            }
        }
        for c in 0..k {
            // an emptied cluster keeps its previous centroid
            if counts[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        let (next, sse) = assign(&centroids, data);
        sse_history.push(sse);
        let changed = next != assignments;
        assignments = next;
        if !changed {
            break;
        }
    }
    Ok(KMeansResult {
        centroids,
        assignments,
        sse_history,
        iterations,
    })
}

/// Nearest-centroid classifier with one cluster per class, each cluster
/// named after the majority training label it holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansClassifier {
    pub centroids: Vec<Vec<f64>>,
    pub cluster_labels: Vec<usize>,
}

impl KMeansClassifier {
    pub fn fit(train: &Dataset, max_iter: usize, seed: u64) -> Result<Self> {
        let k = train.n_classes();
        let r = kmeans(&train.features, k, max_iter, seed)?;
        let mut votes = vec![vec![0usize; k]; k];
        for (&c, &l) in r.assignments.iter().zip(&train.labels) {
            votes[c][l] += 1;
        }
        let cluster_labels = votes
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                    .map_or(0, |(i, _)| i)
            })
            .collect();
        Ok(KMeansClassifier {
            centroids: r.centroids,
            cluster_labels,
        })
    }

    pub fn predict(&self, x: &[f64]) -> Result<usize> {
        let dim = self.centroids[0].len();
        if x.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: x.len(),
            });
        }
        Ok(self.cluster_labels[nearest(&self.centroids, x).0])
    }
}
