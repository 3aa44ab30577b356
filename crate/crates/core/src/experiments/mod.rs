//! Configuration-driven experiment drivers.
//!
//! Every driver validates its [`ExperimentConfig`] before doing any work,
//! runs trial `t` with the seed context `(master_seed, t)` on a worker pool,
//! collects results in trial order and reduces them sequentially. The report
//! therefore depends on the configuration only, never on the worker count.
//!
//! Sweep points share trial contexts (common random numbers), so the
//! differences between points are not blurred by independent noise.

mod config;
mod fpp;
mod oracle;
mod report;
mod trees;

pub use config::{
    ExperimentConfig, ExperimentKind, KSchedule, OracleCheck, OutputFormat, RunOptions, TreeVariant,
};
pub use fpp::{
    decay_trial, fpp_band_trial, fpp_variance_trial, run_constraint_decay, run_fpp_band,
    run_fpp_variance, run_fpp_variance_with, FppTrial, EQUALITY_RTOL,
};
pub use oracle::run_oracle_suite;
pub use report::{Cell, ExperimentReport, Table, Verdict, REPORT_SCHEMA_VERSION};
pub use trees::{
    run_tree_scaling, run_tree_scaling_with, run_tree_variance, run_tree_variance_with,
    run_yj_moments, tree_trial, yj_trial, TreeTrial,
};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Runs the experiment named in `cfg` on `workers` threads.
pub fn run_experiment(cfg: &ExperimentConfig, workers: usize) -> Result<ExperimentReport> {
    match cfg.experiment {
        ExperimentKind::TreeScaling => run_tree_scaling(cfg, workers),
        ExperimentKind::TreeVariance => run_tree_variance(cfg, workers),
        ExperimentKind::YjMoments => run_yj_moments(cfg, workers),
        ExperimentKind::FppBand => run_fpp_band(cfg, workers),
        ExperimentKind::ConstraintDecay => run_constraint_decay(cfg, workers),
        ExperimentKind::FppVariance => run_fpp_variance(cfg, workers),
        ExperimentKind::OracleSuite => run_oracle_suite(cfg, workers),
    }
}

pub(crate) struct Pool(rayon::ThreadPool);

impl Pool {
    pub(crate) fn new(workers: usize) -> Result<Self> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map(Pool)
            .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))
    }

    /// `f(0), .., f(count - 1)` in index order.
    pub(crate) fn map<T, F>(&self, count: u64, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> Result<T> + Sync + Send,
    {
        self.0.install(|| (0..count).into_par_iter().map(f).collect())
    }
}
