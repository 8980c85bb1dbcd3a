//! Gait engineering toolkit.
//!
//! * [`gait_model`]: piecewise polynomial joint trajectories over a
//!   seven-phase gait cycle, range validation and limit cycles.
//! * [`rocking_block`]: hybrid rocking-block walker with impact resets.
//! * [`gait_ca`]: 4-bit cellular-automaton gait-state predictor.
//! * [`capture`]: sensor conversion, two-link kinematics and smoothing.
//! * [`features`]: empirical mode decomposition and statistical features.
//! * [`learn`]: KNN, k-means, MLP, cross-validation, metrics and ANOVA.
//! * [`push_fuzzy`]: two-stage fuzzy push-recovery controller.
//! * [`cli`]: the `gaitforge` command-line verbs.

pub mod capture;
pub mod cli;
pub mod error;
pub mod features;
pub mod fixtures;
pub mod gait_ca;
pub mod gait_model;
pub mod learn;
pub mod push_fuzzy;
pub mod rocking_block;
pub mod spline;

mod linalg;

pub use error::{Error, Result};
