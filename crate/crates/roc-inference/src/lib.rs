//! Empirical ROC curves built on a pre-estimated predictive index, with
//! in-sample inference that accounts for the first-stage estimation effect.
//!
//! The crate covers:
//! - first-stage logit fitting with influence rows and variance plug-ins,
//! - empirical TP/FP rates, quantile-inverted ROC curves, and AUC,
//! - kernel estimators of the index densities and of the TP/FP gradients,
//! - estimated influence functions for curve values,
//! - weighted and multiplier bootstrap simulation of the limit process,
//! - pointwise confidence intervals, uniform confidence bands, ROC dominance
//!   tests, and AUC comparisons,
//! - a Monte Carlo harness for coverage, size, and power experiments.

pub mod data;
pub mod error;
pub mod inference;
pub mod influence;
pub mod kernel;
pub mod logit;
pub mod resample;
pub mod roc;
pub mod simulation;
mod stats;

pub use data::{make_t_grid, Dataset, GridConfig, IndexValues};
pub use error::{Error, Result};
pub use inference::{
    auc_compare, dominance_test, pointwise_ci, uniform_band, AucComparison, BandResult,
    CiMethod, CiTarget, DominanceResult, PointwiseCi,
};
pub use influence::{influence_table, InfluenceTable};
pub use kernel::{silverman_bandwidth, DensityPair, KernelConfig};
pub use logit::{fit_logit, fit_logit_weighted, FittedModel, WeightLaw, WeightVector};
pub use resample::{
    multiplier_bootstrap, weighted_bootstrap, BootstrapDraws, Scheme, TailMode,
};
pub use roc::{auc, fp_inverse, roc_at_grid, tp_fp_at_cutoff, RocCurve};
pub use simulation::{CoverageReport, DgpSpec, LinkFn, PredictorLaw};
