use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{config, Error, Result};
use crate::weights::{PassageTimeSpec, TreeWeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    TreeScaling,
    TreeVariance,
    YjMoments,
    FppBand,
    ConstraintDecay,
    FppVariance,
    OracleSuite,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::TreeScaling,
        ExperimentKind::TreeVariance,
        ExperimentKind::YjMoments,
        ExperimentKind::FppBand,
        ExperimentKind::ConstraintDecay,
        ExperimentKind::FppVariance,
        ExperimentKind::OracleSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::TreeScaling => "tree-scaling",
            ExperimentKind::TreeVariance => "tree-variance",
            ExperimentKind::YjMoments => "yj-moments",
            ExperimentKind::FppBand => "fpp-band",
            ExperimentKind::ConstraintDecay => "constraint-decay",
            ExperimentKind::FppVariance => "fpp-variance",
            ExperimentKind::OracleSuite => "oracle-suite",
        }
    }
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Scale model of the tree weights; combined with each entry of `alpha_values`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeVariant {
    pub heterogeneous: bool,
    #[serde(default = "one")]
    pub m_min: f64,
}

fn one() -> f64 {
    1.0
}

impl TreeVariant {
    pub const HOMOGENEOUS: TreeVariant = TreeVariant {
        heterogeneous: false,
        m_min: 1.0,
    };

    pub fn heterogeneous(m_min: f64) -> Self {
        TreeVariant {
            heterogeneous: true,
            m_min,
        }
    }

    pub fn spec(&self, alpha: f64) -> Result<TreeWeightSpec> {
        TreeWeightSpec::new(alpha, self.m_min, self.heterogeneous)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn label(&self) -> String {
        if self.heterogeneous {
            format!("heterogeneous(m_min={})", self.m_min)
        } else {
            "homogeneous".to_string()
        }
    }
}

/// Hop budgets as a function of `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum KSchedule {
    /// `k = ceil(c n)`.
    Multiple(f64),
    /// `k = ceil(n^p)`, the `n^(1+eps)` regime.
    Power(f64),
    /// The same list of budgets for every `n`.
    Explicit(Vec<usize>),
}

impl KSchedule {
    pub fn budgets(&self, n: usize) -> Vec<usize> {
        match self {
            KSchedule::Multiple(c) => vec![(c * n as f64).ceil() as usize],
            KSchedule::Power(p) => vec![(n as f64).powf(*p).ceil() as usize],
            KSchedule::Explicit(ks) => ks.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            KSchedule::Multiple(c) if !(c.is_finite() && *c >= 1.0) => {
                config(format!("k_schedule.multiple must be >= 1, got {c}"))
            }
            KSchedule::Power(p) if !(p.is_finite() && *p >= 1.0 && *p <= 3.0) => {
                config(format!("k_schedule.power must lie in [1,3], got {p}"))
            }
            KSchedule::Explicit(ks) if ks.is_empty() => config("k_schedule.explicit is empty"),
            _ => Ok(()),
        }
    }
}

/// One family of cross-checks in the oracle suite. Instance `i` uses the
/// seed context `(master_seed, i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum OracleCheck {
    /// Exact subset enumeration at `tau = n - 1` against Kruskal.
    TreeExact { n_values: Vec<usize>, instances: u64 },
    /// `threshold_lower_bound <= exact <= min_tree_upper_bound` over `tau` and `gammas`.
    TreeSandwich {
        n_values: Vec<usize>,
        /// `None` runs every `tau` in `1..n`.
        #[serde(default)]
        tau_values: Option<Vec<usize>>,
        gammas: Vec<f64>,
        instances: u64,
    },
    /// Hop DP against self-avoiding path enumeration, `k` in `n..=n+extra_hops`,
    /// plus the infeasible case `k = n - 1`.
    LatticePaths {
        n_values: Vec<usize>,
        extra_hops: usize,
        box_radius: usize,
        instances: u64,
    },
    /// Kruskal against the minimum over all `n^(n-2)` labelled trees.
    Pruefer { n: usize, instances: u64 },
    /// Straight-path lower tail against the gamma cdf and `exp(-d m)`.
    TailProbe { m: usize, beta: f64, trials: u64 },
}

impl OracleCheck {
    pub fn name(&self) -> &'static str {
        match self {
            OracleCheck::TreeExact { .. } => "tree_exact",
            OracleCheck::TreeSandwich { .. } => "tree_sandwich",
            OracleCheck::LatticePaths { .. } => "lattice_paths",
            OracleCheck::Pruefer { .. } => "pruefer",
            OracleCheck::TailProbe { .. } => "tail_probe",
        }
    }

    pub fn default_suite() -> Vec<OracleCheck> {
        vec![
            OracleCheck::TreeExact {
                n_values: vec![5, 6, 7],
                instances: 100,
            },
            OracleCheck::TreeSandwich {
                n_values: vec![5, 6, 7],
                tau_values: None,
                gammas: vec![0.25, 0.5, 1.0, 2.0],
                instances: 100,
            },
            OracleCheck::LatticePaths {
                n_values: vec![1, 2, 3],
                extra_hops: 4,
                box_radius: 3,
                instances: 200,
            },
            OracleCheck::Pruefer { n: 7, instances: 50 },
        ]
    }
}

/// Everything that determines the numbers in a report. It is echoed verbatim
/// in every report, so settings that must not change the output (worker
/// count, output location) live in [`RunOptions`] instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub master_seed: u64,
    /// Monte Carlo trials per sweep point.
    pub trials: usize,
    pub n_values: Vec<usize>,
    pub alpha_values: Vec<f64>,
    pub tree_variants: Vec<TreeVariant>,
    /// Tree-size rule `tau = ceil(rho n)` for the extra bounds; 1 means spanning only.
    pub rho: f64,
    /// Light-edge threshold `(gamma / n)^alpha` of the lower bound.
    pub gamma: f64,
    pub j_values: Vec<usize>,
    /// Exponent `s` of the exponential moment `E exp(s Y_j)`.
    pub moment_s: f64,
    pub dimension: usize,
    pub k_schedule: KSchedule,
    pub passage: Vec<PassageTimeSpec>,
    pub oracle_checks: Vec<OracleCheck>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Both,
}

/// Execution settings that never influence report contents.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunOptions {
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub output_dir: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    /// Write the wall-clock runtime into the report (breaks byte-identity).
    #[serde(default)]
    pub record_runtime: bool,
}

impl RunOptions {
    pub fn worker_count(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

fn exp1() -> PassageTimeSpec {
    PassageTimeSpec::exponential(1.0, 1.0).expect("valid")
}

impl ExperimentConfig {
    /// Full-size configuration for `kind`, matching its acceptance criterion.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = ExperimentConfig {
            experiment: kind,
            master_seed: 1,
            trials: 100,
            n_values: vec![],
            alpha_values: vec![0.5],
            tree_variants: vec![TreeVariant::HOMOGENEOUS],
            rho: 1.0,
            gamma: 1.0,
            j_values: vec![],
            moment_s: 2.0,
            dimension: 2,
            k_schedule: KSchedule::Multiple(3.0),
            passage: vec![exp1()],
            oracle_checks: vec![],
        };
        match kind {
            ExperimentKind::TreeScaling => ExperimentConfig {
                n_values: vec![64, 128, 256, 512, 1024],
                alpha_values: vec![0.3, 0.5, 0.7],
                tree_variants: vec![TreeVariant::HOMOGENEOUS, TreeVariant::heterogeneous(0.5)],
                ..base
            },
            ExperimentKind::TreeVariance => ExperimentConfig {
                trials: 200,
                n_values: vec![256, 1024],
                ..base
            },
            ExperimentKind::YjMoments => ExperimentConfig {
                master_seed: 2,
                trials: 2000,
                n_values: vec![512],
                j_values: vec![1, 128, 256, 384, 448],
                ..base
            },
            ExperimentKind::FppBand => ExperimentConfig {
                master_seed: 4,
                trials: 200,
                n_values: vec![16, 32, 64],
                passage: vec![exp1(), PassageTimeSpec::exponential(1.0, 2.0).expect("valid")],
                ..base
            },
            ExperimentKind::ConstraintDecay => ExperimentConfig {
                master_seed: 6,
                trials: 400,
                n_values: vec![32],
                k_schedule: KSchedule::Explicit(vec![32, 40, 48, 64, 96]),
                ..base
            },
            ExperimentKind::FppVariance => ExperimentConfig {
                master_seed: 8,
                trials: 300,
                n_values: vec![16, 32, 64, 128],
                passage: vec![
                    PassageTimeSpec::uniform(0.5, 1.5).expect("valid"),
                    exp1(),
                    PassageTimeSpec::pareto(1.0, 3.0).expect("valid"),
                ],
                ..base
            },
            ExperimentKind::OracleSuite => ExperimentConfig {
                trials: 1,
                tree_variants: vec![TreeVariant::heterogeneous(0.5)],
                passage: vec![PassageTimeSpec::exponential(1.0, 2.0).expect("valid")],
                oracle_checks: OracleCheck::default_suite(),
                ..base
            },
        }
    }

    /// Small configuration that runs in seconds.
    pub fn smoke(kind: ExperimentKind) -> Self {
        let full = Self::defaults(kind);
        match kind {
            ExperimentKind::TreeScaling => ExperimentConfig {
                trials: 10,
                n_values: vec![64, 128],
                alpha_values: vec![0.5],
                tree_variants: vec![TreeVariant::HOMOGENEOUS],
                ..full
            },
            ExperimentKind::TreeVariance => ExperimentConfig {
                n_values: vec![256],
                ..full
            },
            // The full prefix sweep already runs in well under a second.
            ExperimentKind::YjMoments => full,
            ExperimentKind::FppBand => ExperimentConfig {
                trials: 50,
                n_values: vec![16, 32],
                passage: vec![exp1()],
                ..full
            },
            ExperimentKind::ConstraintDecay => ExperimentConfig {
                n_values: vec![16],
                k_schedule: KSchedule::Explicit(vec![16, 20, 24, 32, 48]),
                ..full
            },
            ExperimentKind::FppVariance => ExperimentConfig {
                n_values: vec![16, 32, 64],
                passage: vec![exp1()],
                ..full
            },
            ExperimentKind::OracleSuite => ExperimentConfig {
                oracle_checks: vec![
                    OracleCheck::TreeExact {
                        n_values: vec![5, 6],
                        instances: 10,
                    },
                    OracleCheck::TreeSandwich {
                        n_values: vec![5],
                        tau_values: None,
                        gammas: vec![0.5, 1.0],
                        instances: 10,
                    },
                    OracleCheck::LatticePaths {
                        n_values: vec![1, 2],
                        extra_hops: 3,
                        box_radius: 2,
                        instances: 10,
                    },
                    OracleCheck::Pruefer { n: 6, instances: 5 },
                ],
                ..full
            },
        }
    }

    /// Overlays the keys of a JSON object on `base`. An optional `"run"` object
    /// is split off into [`RunOptions`]. Diagnostics name the offending key.
    pub fn overlay_json(base: &ExperimentConfig, text: &str) -> Result<(ExperimentConfig, RunOptions)> {
        let parsed: Value = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("malformed JSON: {e}")))?;
        let Value::Object(mut overrides) = parsed else {
            return config("configuration must be a JSON object");
        };
        let run = match overrides.remove("run") {
            None => RunOptions::default(),
            Some(v) => serde_path_to_error::deserialize(v)
                .map_err(|e| Error::Config(format!("invalid key `run.{}`: {}", e.path(), e.inner())))?,
        };
        let mut merged = serde_json::to_value(base).expect("config serializes");
        let obj = merged.as_object_mut().expect("config is an object");
        for (key, value) in overrides {
            if !obj.contains_key(&key) {
                return config(format!("unknown key `{key}`"));
            }
            obj.insert(key, value);
        }
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(merged)
            .map_err(|e| Error::Config(format!("invalid key `{}`: {}", e.path(), e.inner())))?;
        if cfg.experiment != base.experiment {
            return config(format!(
                "key `experiment` is `{}` but the subcommand is `{}`",
                cfg.experiment, base.experiment
            ));
        }
        Ok((cfg, run))
    }

    /// Checks every solver precondition up front, so no work starts on a bad config.
    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        let kind = self.experiment;
        if kind != OracleSuite {
            if self.n_values.is_empty() {
                return config("n_values is empty");
            }
            if self.trials < 2 {
                return config(format!("trials must be at least 2, got {}", self.trials));
            }
        }
        if matches!(kind, TreeScaling | TreeVariance | YjMoments | OracleSuite) {
            if self.alpha_values.is_empty() || self.tree_variants.is_empty() {
                return config("alpha_values and tree_variants must be nonempty");
            }
            for v in &self.tree_variants {
                for &a in &self.alpha_values {
                    v.spec(a)?;
                }
            }
        }
        if matches!(kind, FppBand | ConstraintDecay | FppVariance | OracleSuite) {
            if self.dimension < 2 {
                return config(format!("dimension must be at least 2, got {}", self.dimension));
            }
            if self.passage.is_empty() {
                return config("passage is empty");
            }
            self.k_schedule.validate()?;
        }
        match kind {
            TreeScaling | TreeVariance => {
                if let Some(&n) = self.n_values.iter().find(|&&n| n < 3) {
                    return config(format!("n_values entries must be at least 3, got {n}"));
                }
                if !(self.rho > 0.0 && self.rho <= 1.0) {
                    return config(format!("rho must lie in (0,1], got {}", self.rho));
                }
                if !(self.gamma > 0.0 && self.gamma.is_finite()) {
                    return config(format!("gamma must be positive, got {}", self.gamma));
                }
                if kind == TreeScaling && distinct(&self.n_values) < 2 {
                    return config("tree-scaling needs at least two distinct n_values for the fit");
                }
            }
            YjMoments => {
                let [n] = self.n_values[..] else {
                    return config("yj-moments takes exactly one entry in n_values");
                };
                if self.j_values.is_empty() {
                    return config("j_values is empty");
                }
                if let Some(&j) = self.j_values.iter().find(|&&j| j == 0 || j >= n) {
                    return config(format!("j_values entries must lie in 1..{n}, got {j}"));
                }
                if !(self.moment_s > 0.0 && self.moment_s.is_finite()) {
                    return config(format!("moment_s must be positive, got {}", self.moment_s));
                }
            }
            FppBand | FppVariance => {
                if matches!(self.k_schedule, KSchedule::Explicit(_)) {
                    return config("k_schedule must be `multiple` or `power` for this experiment");
                }
                if self.n_values.contains(&0) {
                    return config("n_values entries must be positive");
                }
                for &n in &self.n_values {
                    let k = self.k_schedule.budgets(n)[0];
                    if k < n {
                        return config(format!("k_schedule gives k = {k} < n = {n}"));
                    }
                }
                if kind == FppVariance && distinct(&self.n_values) < 2 {
                    return config("fpp-variance needs at least two distinct n_values for the fit");
                }
            }
            ConstraintDecay => {
                let [n] = self.n_values[..] else {
                    return config("constraint-decay takes exactly one entry in n_values");
                };
                if n == 0 {
                    return config("n must be positive");
                }
                let KSchedule::Explicit(ks) = &self.k_schedule else {
                    return config("constraint-decay needs an `explicit` k_schedule");
                };
                if ks.windows(2).any(|w| w[0] >= w[1]) {
                    return config(format!("k_schedule must be strictly increasing, got {ks:?}"));
                }
                if ks[0] < n {
                    return config(format!("k_schedule starts at {} < n = {n}", ks[0]));
                }
            }
            OracleSuite => {
                if self.oracle_checks.is_empty() {
                    return config("oracle_checks is empty");
                }
                for check in &self.oracle_checks {
                    validate_check(check, self.dimension)?;
                }
            }
        }
        Ok(())
    }
}

fn distinct(ns: &[usize]) -> usize {
    let mut v = ns.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn validate_check(check: &OracleCheck, dimension: usize) -> Result<()> {
    let name = check.name();
    let bad = |msg: String| config(format!("oracle check `{name}`: {msg}"));
    match check {
        OracleCheck::TreeExact { n_values, instances } => {
            if n_values.is_empty() || *instances == 0 {
                return bad("needs n_values and instances".into());
            }
            if let Some(n) = n_values.iter().find(|&&n| !(2..=12).contains(&n)) {
                return bad(format!("n must lie in 2..=12, got {n}"));
            }
        }
        OracleCheck::TreeSandwich {
            n_values,
            tau_values,
            gammas,
            instances,
        } => {
            if n_values.is_empty() || gammas.is_empty() || *instances == 0 {
                return bad("needs n_values, gammas and instances".into());
            }
            if let Some(n) = n_values.iter().find(|&&n| !(2..=12).contains(&n)) {
                return bad(format!("n must lie in 2..=12, got {n}"));
            }
            if let Some(taus) = tau_values {
                let n_min = *n_values.iter().min().unwrap();
                if taus.is_empty() || taus.iter().any(|&t| t == 0 || t >= n_min) {
                    return bad(format!("tau_values must lie in 1..{n_min}"));
                }
            }
            if gammas.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
                return bad("gammas must be positive".into());
            }
        }
        OracleCheck::LatticePaths {
            n_values,
            extra_hops,
            box_radius,
            instances,
        } => {
            if dimension != 2 {
                return bad(format!("needs dimension 2, got {dimension}"));
            }
            if n_values.is_empty() || *instances == 0 {
                return bad("needs n_values and instances".into());
            }
            let n_max = *n_values.iter().max().unwrap();
            if n_values.contains(&0) || *box_radius > 4 || *box_radius < n_max || n_max + extra_hops > 9 {
                return bad(format!(
                    "needs 1 <= n <= box_radius <= 4 and n + extra_hops <= 9 \
                     (n_max = {n_max}, box_radius = {box_radius}, extra_hops = {extra_hops})"
                ));
            }
        }
        OracleCheck::Pruefer { n, instances } => {
            if !(2..=9).contains(n) || *instances == 0 {
                return bad(format!("n must lie in 2..=9 with instances > 0, got n = {n}"));
            }
        }
        OracleCheck::TailProbe { m, beta, trials } => {
            if *m == 0 || *trials == 0 || beta.is_nan() || *beta < 0.0 {
                return bad(format!("needs m >= 1, beta >= 0, trials >= 1 (m = {m}, beta = {beta})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for kind in ExperimentKind::ALL {
            ExperimentConfig::defaults(kind).validate().unwrap();
            ExperimentConfig::smoke(kind).validate().unwrap();
        }
    }

    #[test]
    fn overlay_replaces_keys() {
        let base = ExperimentConfig::defaults(ExperimentKind::FppBand);
        let (cfg, run) = ExperimentConfig::overlay_json(
            &base,
            r#"{"trials": 7, "k_schedule": {"power": 1.5}, "run": {"workers": 3}}"#,
        )
        .unwrap();
        assert_eq!(cfg.trials, 7);
        assert_eq!(cfg.k_schedule, KSchedule::Power(1.5));
        assert_eq!(cfg.n_values, base.n_values);
        assert_eq!(run.workers, Some(3));
    }

    #[test]
    fn diagnostics_name_the_key() {
        let base = ExperimentConfig::defaults(ExperimentKind::TreeScaling);
        let err = ExperimentConfig::overlay_json(&base, r#"{"trails": 7}"#).unwrap_err();
        assert!(err.to_string().contains("trails"), "{err}");
        let err = ExperimentConfig::overlay_json(&base, r#"{"n_values": [1, "x"]}"#).unwrap_err();
        assert!(err.to_string().contains("n_values"), "{err}");
        let err = ExperimentConfig::overlay_json(&base, r#"{"run": {"wrokers": 1}}"#).unwrap_err();
        assert!(err.to_string().contains("wrokers"), "{err}");
        let err = ExperimentConfig::overlay_json(&base, r#"{"experiment": "fpp-band"}"#).unwrap_err();
        assert!(err.to_string().contains("experiment"), "{err}");
        let err = ExperimentConfig::overlay_json(
            &ExperimentConfig::defaults(ExperimentKind::FppVariance),
            r#"{"passage": [{"kind": "pareto", "shape": 1.5}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("passage"), "{err}");
    }

    #[test]
    fn oracle_checks_parse() {
        let base = ExperimentConfig::defaults(ExperimentKind::OracleSuite);
        let (cfg, _) = ExperimentConfig::overlay_json(
            &base,
            r#"{"oracle_checks": [{"check": "tree_sandwich", "n_values": [5], "tau_values": [2],
                "gammas": [1.0], "instances": 1}]}"#,
        )
        .unwrap();
        cfg.validate().unwrap();
        let err = ExperimentConfig::overlay_json(
            &base,
            r#"{"oracle_checks": [{"check": "pruefer", "n": 5, "instances": 1, "extra": 0}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn invalid_configs() {
        use ExperimentKind::*;
        let mut c = ExperimentConfig::defaults(TreeScaling);
        c.n_values.clear();
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(TreeVariance);
        c.trials = 1;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(YjMoments);
        c.j_values = vec![512];
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(FppBand);
        c.k_schedule = KSchedule::Multiple(0.5);
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(ConstraintDecay);
        c.k_schedule = KSchedule::Explicit(vec![40, 32]);
        assert!(c.validate().is_err());
        c.k_schedule = KSchedule::Explicit(vec![16, 40]);
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::defaults(OracleSuite);
        c.oracle_checks.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn budgets() {
        assert_eq!(KSchedule::Multiple(3.0).budgets(16), vec![48]);
        assert_eq!(KSchedule::Power(1.5).budgets(64), vec![512]);
        assert_eq!(KSchedule::Explicit(vec![1, 2]).budgets(9), vec![1, 2]);
    }
}
