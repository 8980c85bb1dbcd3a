//! Empirical mode decomposition and statistical signal features.

mod emd;
mod io;
mod quartiles;
mod stats;

pub use emd::{
    count_extrema, count_significant_extrema, count_zero_crossings, emd_decompose, noise_floor,
    Decomposition, EmdOptions, Imf,
};
pub use io::{write_feature_csv, FeatureRow};
pub use quartiles::{quartile_stats, BoxStats};
pub use stats::{
    feature_vector, feature_vector_with_bins, shannon_entropy, FeatureVector, DEFAULT_BINS,
};
