//! Five-fold cross-validation of KNN, k-means and an MLP on the bundled
//! synthetic gait dataset.

use gaitforge::fixtures;
use gaitforge::learn::{kfold_cv, knn_classify, mlp_train, Dataset, KMeansClassifier, MlpConfig};

fn report(name: &str, r: gaitforge::learn::CvReport) {
    println!(
        "{name:<8} mean {:.2}% sd {:.2} folds {:?}",
        r.summary.mean, r.summary.std_dev, r.summary.fold_accuracies
    );
}

fn main() -> gaitforge::Result<()> {
    let data = fixtures::synthetic_dataset();
    println!(
        "{} rows, {} features, classes {:?}",
        data.len(),
        data.dim(),
        data.class_names
    );

    report(
        "knn",
        kfold_cv(&data, 5, 42, |train: &Dataset, test: &Dataset| {
            test.features
                .iter()
                .map(|q| knn_classify(train, 3, q))
                .collect()
        })?,
    );
    report(
        "k-means",
        kfold_cv(&data, 5, 42, |train: &Dataset, test: &Dataset| {
            let clf = KMeansClassifier::fit(train, 100, 42)?;
            test.features.iter().map(|q| clf.predict(q)).collect()
        })?,
    );
    let layers = vec![data.dim(), 8, data.n_classes()];
    report(
        "mlp",
        kfold_cv(&data, 5, 42, |train: &Dataset, test: &Dataset| {
            let m = mlp_train(train, &MlpConfig::new(layers.clone(), 0.1, 300, 42))?;
            test.features.iter().map(|q| m.classify(q)).collect()
        })?,
    );
    Ok(())
}
