//! Classifiers, cross-validation, confusion metrics and one-way ANOVA.

mod anova;
mod cv;
mod dataset;
mod kmeans;
mod knn;
mod metrics;
mod mlp;
mod report;
mod special;

pub use anova::{anova_from_summaries, anova_single_factor, AnovaTable, GroupSummary};
pub use cv::{kfold_cv, kfold_indices, summarize_folds, CvReport, CvSummary};
pub use dataset::{read_dataset_csv, read_dataset_csv_from, Dataset};
pub use kmeans::{kmeans, KMeansClassifier, KMeansResult};
pub use knn::knn_classify;
pub(crate) use metrics::report_for;
pub use metrics::{
    biometric_metrics, class_accuracy, confusion_and_accuracy, BiometricReport, ClassCounts,
    ConfusionMatrix, ConfusionReport,
};
pub use mlp::{mlp_predict, mlp_train, Activation, Mlp, MlpConfig};
pub use report::MetricsReport;
pub use special::{f_survival, ln_gamma, regularized_incomplete_beta};

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}
