use serde::Serialize;

use super::special::f_survival;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupSummary {
    pub n: usize,
    pub mean: f64,
    /// Sample variance (n − 1 denominator).
    pub variance: f64,
}

impl GroupSummary {
    pub fn of(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Size {
                needed: 2,
                got: values.len(),
            });
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Ok(GroupSummary {
            n: values.len(),
            mean,
            variance,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaTable {
    pub ss_between: f64,
    pub ss_within: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub ms_between: f64,
    pub ms_within: f64,
    pub f: f64,
    pub p: f64,
}

/// One-way ANOVA from per-group count, mean and sample variance.
///
/// Zero within-group variance with equal means reports `F = 0, p = 1`;
/// with unequal means `F` is infinite and `p = 0`.
pub fn anova_from_summaries(groups: &[GroupSummary]) -> Result<AnovaTable> {
    if groups.len() < 2 {
        return Err(Error::Size {
            needed: 2,
            got: groups.len(),
        });
    }
    if let Some(g) = groups.iter().find(|g| g.n < 2) {
        return Err(Error::Size {
            needed: 2,
            got: g.n,
        });
    }
    let total: usize = groups.iter().map(|g| g.n).sum();
    let grand = groups.iter().map(|g| g.n as f64 * g.mean).sum::<f64>() / total as f64;
    let ss_between: f64 = groups
        .iter()
        .map(|g| g.n as f64 * (g.mean - grand).powi(2))
        .sum();
    let ss_within: f64 = groups.iter().map(|g| (g.n - 1) as f64 * g.variance).sum();
    let df_between = groups.len() - 1;
    let df_within = total - groups.len();
    let ms_between = ss_between / df_between as f64;
    let ms_within = ss_within / df_within as f64;
    let (f, p) = if ms_within == 0.0 {
        if ms_between == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY, 0.0)
        }
    } else {
        let f = ms_between / ms_within;
        (f, f_survival(f, df_between as f64, df_within as f64))
    };
    Ok(AnovaTable {
        ss_between,
        ss_within,
        df_between,
        df_within,
        ms_between,
        ms_within,
        f,
        p,
    })
}

pub fn anova_single_factor(groups: &[Vec<f64>]) -> Result<AnovaTable> {
    let s = groups
        .iter()
        .map(|g| GroupSummary::of(g))
        .collect::<Result<Vec<_>>>()?;
    anova_from_summaries(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_groups() {
        let g = vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]];
        let t = anova_single_factor(&g).unwrap();
        assert_eq!((t.f, t.p), (0.0, 1.0));
        let flat = vec![vec![4.0; 3], vec![4.0; 3]];
        let t = anova_single_factor(&flat).unwrap();
        assert_eq!((t.f, t.p), (0.0, 1.0));
    }

    #[test]
    fn two_group_summaries() {
        let t = anova_from_summaries(&[
            GroupSummary {
                n: 5,
                mean: 79.0,
                variance: 6.5,
            },
            GroupSummary {
                n: 5,
                mean: 86.8,
                variance: 3.3,
            },
        ])
        .unwrap();
        assert!((t.ss_between - 152.1).abs() < 1e-9);
        assert!((t.ss_within - 39.2).abs() < 1e-9);
        assert!((t.f - 31.040816326530614).abs() < 1e-9);
        assert_eq!((t.df_between, t.df_within), (1, 8));
        assert!(t.p > 0.0 && t.p < 1e-3);
    }

    #[test]
    fn f_is_square_of_pooled_t() {
        let a = [3.1, 4.7, 5.0, 2.2, 3.9, 4.4];
        let b = [5.5, 6.1, 4.9, 7.2, 6.6];
        let t = anova_single_factor(&[a.to_vec(), b.to_vec()]).unwrap();
        let (sa, sb) = (GroupSummary::of(&a).unwrap(), GroupSummary::of(&b).unwrap());
        let (na, nb) = (sa.n as f64, sb.n as f64);
        let sp2 = ((na - 1.0) * sa.variance + (nb - 1.0) * sb.variance) / (na + nb - 2.0);
        let tstat = (sa.mean - sb.mean) / (sp2 * (1.0 / na + 1.0 / nb)).sqrt();
        assert!((t.f - tstat * tstat).abs() < 1e-9 * t.f);
    }

    #[test]
    fn too_few() {
        assert!(anova_single_factor(&[vec![1.0, 2.0]]).is_err());
        assert!(anova_single_factor(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }
}
