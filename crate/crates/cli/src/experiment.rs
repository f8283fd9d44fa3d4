//! Profile experiments: configuration, execution and output files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use fglab::families::FamilySpec;
use fglab::negligibility::{
    family_profile_with, negligibility_report, CoverageProfile, Method, ProfileError, ProfileRequest, VerdictRecord,
    DEFAULT_EPSILONS, DEFAULT_NODE_BUDGET,
};
use thiserror::Error;

use crate::cache::{CacheError, ResultCache};

pub const PROFILE_FILE: &str = "profile.csv";
pub const VERDICT_FILE: &str = "verdict.toml";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("empty {0} range")]
    EmptyRange(&'static str),
    #[error("node budget must be positive")]
    ZeroBudget,
    #[error("thread count must be positive")]
    ZeroThreads,
    #[error("epsilon {0} is outside (0, 1]")]
    BadEpsilon(f64),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    pub ns: Vec<u64>,
    pub pair_budgets: Vec<usize>,
    pub methods: Vec<Method>,
    pub node_budget: u64,
    /// Replaces every seed of the family; no effect on deterministic families.
    pub seed: Option<u64>,
    pub epsilons: Vec<f64>,
    /// Directory for `profile.csv`, `verdict.toml` and the cache.
    pub out_dir: Option<PathBuf>,
    pub use_cache: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Fill the `ms` column with wall times. Makes output nondeterministic.
    pub record_timings: bool,
}

impl ExperimentConfig {
    pub fn new(family: FamilySpec, ns: Vec<u64>, pair_budgets: Vec<usize>, methods: Vec<Method>) -> Self {
        ExperimentConfig {
            family,
            ns,
            pair_budgets,
            methods,
            node_budget: DEFAULT_NODE_BUDGET,
            seed: None,
            epsilons: DEFAULT_EPSILONS.to_vec(),
            out_dir: None,
            use_cache: true,
            threads: None,
            record_timings: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.ns.is_empty() {
            return Err(ConfigError::EmptyRange("n"));
        }
        if self.pair_budgets.is_empty() {
            return Err(ConfigError::EmptyRange("N"));
        }
        if self.methods.is_empty() {
            return Err(ConfigError::EmptyRange("method"));
        }
        if self.epsilons.is_empty() {
            return Err(ConfigError::EmptyRange("epsilon"));
        }
        if self.node_budget == 0 {
            return Err(ConfigError::ZeroBudget);
        }
        if self.threads == Some(0) {
            return Err(ConfigError::ZeroThreads);
        }
        if let Some(&e) = self.epsilons.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
            return Err(ConfigError::BadEpsilon(e));
        }
        Ok(())
    }

    /// The family with the seed override applied.
    pub fn effective_family(&self) -> FamilySpec {
        let mut family = self.family.clone();
        if let Some(seed) = self.seed {
            family.with_seed(seed);
        }
        family
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub profile: CoverageProfile,
    pub verdict: VerdictRecord,
    /// Rows answered from the cache.
    pub cache_hits: usize,
}

/// Runs the sweep and, when `out_dir` is set, writes the profile, the
/// verdict and new cache records there.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    config.validate()?;
    let request = ProfileRequest {
        family: config.effective_family(),
        ns: config.ns.clone(),
        pair_budgets: config.pair_budgets.clone(),
        methods: config.methods.clone(),
        node_budget: config.node_budget,
        record_timings: config.record_timings,
    };
    let mut cache = match (&config.out_dir, config.use_cache) {
        (Some(dir), true) => ResultCache::open(dir)?,
        _ => ResultCache::in_memory(),
    };
    let known = cache.len();
    let run = |cache: &ResultCache| family_profile_with(&request, |w, n, m, b| cache.solve(w, n, m, b));
    let profile = match config.threads {
        None => run(&cache)?,
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ExperimentError::Threads(e.to_string()))?
            .install(|| run(&cache))?,
    };
    let added = cache.flush()?;
    let cache_hits = profile.rows.len().saturating_sub(added).min(known);
    let verdict = negligibility_report(&profile, &config.epsilons);
    if let Some(dir) = &config.out_dir {
        write_file(dir, PROFILE_FILE, &profile.to_csv_string())?;
        write_file(dir, VERDICT_FILE, &verdict.to_toml())?;
    }
    Ok(ExperimentOutput { profile, verdict, cache_hits })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), ExperimentError> {
    let path = dir.join(name);
    let io_err = |source| ExperimentError::Io { path: path.clone(), source };
    fs::create_dir_all(dir).map_err(io_err)?;
    fs::write(&path, contents).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: &str) -> ExperimentConfig {
        ExperimentConfig::new(family.parse().unwrap(), (3..=7).collect(), vec![1, 2], vec![Method::Exact])
    }

    #[test]
    fn y_experiment_writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config("Y k=2");
        c.out_dir = Some(dir.path().to_path_buf());
        let out = run_experiment(&c).unwrap();
        assert_eq!(out.profile.rows.len(), 10);
        assert_eq!(out.cache_hits, 0);
        let csv = fs::read_to_string(dir.path().join(PROFILE_FILE)).unwrap();
        assert_eq!(csv, out.profile.to_csv_string());
        assert!(fs::read_to_string(dir.path().join(VERDICT_FILE)).unwrap().contains("heuristic = true"));

        let again = run_experiment(&c).unwrap();
        assert_eq!(again.cache_hits, 10);
        assert_eq!(fs::read_to_string(dir.path().join(PROFILE_FILE)).unwrap(), csv);
        let cache = fs::read_to_string(dir.path().join(crate::CACHE_FILE)).unwrap();
        assert_eq!(cache.lines().count(), 10);
    }

    #[test]
    fn thread_count_and_cache_do_not_change_output() {
        let mut c = config("random seed=3");
        c.ns = (10..=16).collect();
        c.methods = vec![Method::Exact, Method::Greedy];
        let base = run_experiment(&c).unwrap().profile.to_csv_string();
        for t in [1, 3] {
            c.threads = Some(t);
            assert_eq!(run_experiment(&c).unwrap().profile.to_csv_string(), base);
        }
        let dir = tempfile::tempdir().unwrap();
        c.out_dir = Some(dir.path().to_path_buf());
        assert_eq!(run_experiment(&c).unwrap().profile.to_csv_string(), base);
        assert_eq!(run_experiment(&c).unwrap().profile.to_csv_string(), base);
    }

    #[test]
    fn seed_override_applies() {
        let mut c = config("random seed=3");
        c.ns = vec![20];
        c.pair_budgets = vec![1];
        let a = run_experiment(&c).unwrap().profile;
        c.seed = Some(3);
        assert_eq!(run_experiment(&c).unwrap().profile, a);
        c.seed = Some(4);
        assert_eq!(c.effective_family().to_string(), "random seed=4");
    }

    #[test]
    fn config_errors() {
        let mut c = config("Y k=2");
        c.ns.clear();
        assert!(matches!(run_experiment(&c), Err(ExperimentError::Config(ConfigError::EmptyRange("n")))));
        let mut c = config("Y k=2");
        c.node_budget = 0;
        assert_eq!(c.validate(), Err(ConfigError::ZeroBudget));
        let mut c = config("Y k=2");
        c.epsilons = vec![0.0];
        assert_eq!(c.validate(), Err(ConfigError::BadEpsilon(0.0)));
        let mut c = config("Y k=2");
        c.threads = Some(0);
        assert_eq!(c.validate(), Err(ConfigError::ZeroThreads));
    }
}
