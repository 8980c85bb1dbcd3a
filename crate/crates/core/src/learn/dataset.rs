use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Labelled feature vectors of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub class_names: Vec<String>,
}

impl Dataset {
    pub fn new(
        features: Vec<Vec<f64>>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::Dimension {
                expected: features.len(),
                got: labels.len(),
            });
        }
        if let Some(first) = features.first() {
            let d = first.len();
            if let Some(bad) = features.iter().find(|f| f.len() != d) {
                return Err(Error::Dimension {
                    expected: d,
                    got: bad.len(),
                });
            }
        }
        if features.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite feature".into()));
        }
        let k = class_names.len();
        if let Some(&label) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::Label { label, classes: k });
        }
        Ok(Dataset {
            features,
            labels,
            class_names,
        })
    }

    /// Class names `"0"`, `"1"`, … up to the largest label.
    pub fn with_numeric_classes(features: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        Self::new(features, labels, (0..k).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn subset(&self, idx: &[usize]) -> Dataset {
        Dataset {
            features: idx.iter().map(|&i| self.features[i].clone()).collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            class_names: self.class_names.clone(),
        }
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.n_classes()];
        for &l in &self.labels {
            c[l] += 1;
        }
        c
    }
}

pub fn read_dataset_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    read_dataset_csv_from(std::fs::File::open(path)?, path)
}

/// Feature columns followed by a final `label` column. Class ids follow the
/// sorted order of the distinct label strings.
pub fn read_dataset_csv_from<R: Read>(input: R, path: &Path) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| Error::parse(path, 1, e.to_string()))?
        .clone();
    if header.len() < 2 || header.get(header.len() - 1) != Some("label") {
        return Err(Error::parse(
            path,
            1,
            "last column must be `label` after at least one feature",
        ));
    }
    let d = header.len() - 1;
    let mut features = Vec::new();
    let mut raw_labels = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(path, line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let mut f = Vec::with_capacity(d);
        for (i, field) in row.iter().take(d).enumerate() {
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
            f.push(v);
        }
        let label = row[d].to_string();
        if label.is_empty() {
            return Err(Error::parse(path, line, "empty label"));
        }
        features.push(f);
        raw_labels.push(label);
    }
    let mut names = raw_labels.clone();
    names.sort();
    names.dedup();
    let labels = raw_labels
        .iter()
        .map(|l| names.binary_search(l).expect("label collected above"))
        .collect();
    Dataset::new(features, labels, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_csv() {
        let text = "a,b,label\n1,2,walk\n3,4,run\n5,6,walk\n";
        let d = read_dataset_csv_from(text.as_bytes(), Path::new("d.csv")).unwrap();
        assert_eq!(d.class_names, ["run", "walk"]);
        assert_eq!(d.labels, [1, 0, 1]);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.class_counts(), [1, 2]);
    }

    #[test]
    fn csv_errors_carry_lines() {
        let bad = "a,label\n1,x\nfoo,y\n";
        assert!(matches!(
            read_dataset_csv_from(bad.as_bytes(), Path::new("d.csv")),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            read_dataset_csv_from("a,b\n1,2\n".as_bytes(), Path::new("d.csv")),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn validates() {
        assert!(Dataset::new(
            vec![vec![1.0], vec![1.0, 2.0]],
            vec![0, 0],
            vec!["a".into()]
        )
        .is_err());
        assert!(matches!(
            Dataset::new(vec![vec![1.0]], vec![3], vec!["a".into()]),
            Err(Error::Label {
                label: 3,
                classes: 1
            })
        ));
    }
}
