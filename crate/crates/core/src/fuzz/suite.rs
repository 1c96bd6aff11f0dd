//! Suite orchestration: seeded evaluation of selected laws over a grid of
//! dimensions and trials, with order-independent aggregation.
//!
//! Each (law, dimension, trial) cell derives its own stream seed from the
//! master seed, so results are identical for any evaluation order and any
//! thread count; the worst instance per law is regenerated from its seed
//! rather than carried through the reduction.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzz::gen::generate_instance;
use crate::fuzz::rng::derive_seed;
use crate::laws::{evaluate_instance_with, LawId, LawInstance};
use crate::linalg::matrix::MAX_DIM;

/// Output format for suite reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Generation parameters and suite selection for one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub master_seed: u64,
    /// Trials per (law, dimension) cell.
    pub trials: u32,
    pub dims: Vec<usize>,
    pub cond_max: f64,
    pub nu_grid: Vec<f64>,
    /// Law-id globs; `*` is the wildcard.
    pub suites: Vec<String>,
    /// Pass/fail threshold for order margins (`min_eig ≥ -tol_rel · scale`).
    pub tol_rel: f64,
    pub out_path: Option<String>,
    pub format: ReportFormat,
    pub keep_worst: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            master_seed: 42,
            trials: 1000,
            dims: vec![1, 2, 3, 4, 6, 8],
            cond_max: 100.0,
            nu_grid: vec![0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0],
            suites: vec!["*".to_owned()],
            tol_rel: crate::laws::tol::ORDER,
            out_path: None,
            format: ReportFormat::Json,
            keep_worst: false,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::BadConfig { reason: "trials must be at least 1".into() });
        }
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0 || d > MAX_DIM) {
            return Err(Error::BadConfig {
                reason: format!("dims must be nonempty with entries in 1..={MAX_DIM}"),
            });
        }
        if !(self.cond_max >= 1.0 && self.cond_max <= 1e8) {
            return Err(Error::BadConfig { reason: "cond_max must lie in [1, 1e8]".into() });
        }
        if self.nu_grid.is_empty() || self.nu_grid.iter().any(|nu| !nu.is_finite()) {
            return Err(Error::BadConfig { reason: "nu grid must be nonempty and finite".into() });
        }
        if !self.nu_grid.iter().any(|nu| (0.0..=1.0).contains(nu)) {
            return Err(Error::BadConfig {
                reason: "nu grid needs at least one weight in [0, 1]".into(),
            });
        }
        if !(self.tol_rel >= 0.0 && self.tol_rel.is_finite()) {
            return Err(Error::BadConfig { reason: "tol_rel must be nonnegative".into() });
        }
        Ok(())
    }
}

/// Per-law aggregate over all trials of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawSummary {
    pub trials: u64,
    pub failures: u64,
    /// Minimum over trials of the report margin (signed distance to the
    /// tightest tolerance boundary; negative means a failed trial).
    pub worst_margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_instance: Option<LawInstance>,
}

/// Aggregated outcome of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config_echo: FuzzConfig,
    pub per_law: BTreeMap<String, LawSummary>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn total_failures(&self) -> u64 {
        self.per_law.values().map(|s| s.failures).sum()
    }
}

/// Minimal glob matcher: `*` matches any (possibly empty) substring.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == text;
    }
    let mut rest = text;
    if !rest.starts_with(parts[0]) {
        return false;
    }
    rest = &rest[parts[0].len()..];
    let last = parts[parts.len() - 1];
    if !rest.ends_with(last) {
        return false;
    }
    rest = &rest[..rest.len() - last.len()];
    for part in &parts[1..parts.len() - 1] {
        if part.is_empty() {
            continue;
        }
        match rest.find(part) {
            Some(at) => rest = &rest[at + part.len()..],
            None => return false,
        }
    }
    true
}

/// Laws selected by the configured globs, in registry order. Every pattern
/// must match at least one law.
pub fn selected_laws(patterns: &[String]) -> Result<Vec<LawId>> {
    let mut selected = Vec::new();
    for pattern in patterns {
        let mut hit = false;
        for law in LawId::ALL {
            if glob_match(pattern, law.as_str()) {
                hit = true;
                if !selected.contains(&law) {
                    selected.push(law);
                }
            }
        }
        if !hit {
            return Err(Error::UnknownLawId { id: pattern.clone() });
        }
    }
    selected.sort();
    Ok(selected)
}

/// One (law, dimension, trial) evaluation cell.
#[derive(Debug, Clone, Copy)]
struct Task {
    law: LawId,
    registry_index: u64,
    /// Position of the law in the current selection.
    slot: usize,
    dim: usize,
    /// Trial ordinal across the dims × trials grid; ties in the worst-margin
    /// reduction break on this, keeping aggregation order-independent.
    ord: u64,
}

#[derive(Debug, Clone, Copy)]
struct TrialOutcome {
    slot: usize,
    margin: f64,
    pass: bool,
    ord: u64,
    dim: usize,
    seed: u64,
}

fn build_tasks(config: &FuzzConfig, laws: &[LawId]) -> Vec<Task> {
    let mut tasks = Vec::with_capacity(laws.len() * config.dims.len() * config.trials as usize);
    for (slot, &law) in laws.iter().enumerate() {
        let registry_index =
            LawId::ALL.iter().position(|&l| l == law).expect("registry law") as u64;
        for (dim_index, &dim) in config.dims.iter().enumerate() {
            for trial in 0..config.trials {
                let ord = dim_index as u64 * config.trials as u64 + trial as u64;
                tasks.push(Task { law, registry_index, slot, dim, ord });
            }
        }
    }
    tasks
}

fn run_task(config: &FuzzConfig, task: &Task) -> Result<TrialOutcome> {
    let seed = derive_seed(config.master_seed, task.registry_index, task.ord);
    let instance =
        generate_instance(task.law, seed, task.dim, config.cond_max, &config.nu_grid)?;
    let report = evaluate_instance_with(&instance, config.tol_rel)?;
    Ok(TrialOutcome {
        slot: task.slot,
        margin: report.margin,
        pass: report.pass,
        ord: task.ord,
        dim: task.dim,
        seed,
    })
}

fn aggregate(
    config: &FuzzConfig,
    laws: &[LawId],
    outcomes: Vec<TrialOutcome>,
    started: Instant,
) -> Result<SuiteReport> {
    struct Acc {
        trials: u64,
        failures: u64,
        worst: Option<TrialOutcome>,
    }
    let mut accs: Vec<Acc> = laws
        .iter()
        .map(|_| Acc { trials: 0, failures: 0, worst: None })
        .collect();
    for outcome in outcomes {
        let acc = &mut accs[outcome.slot];
        acc.trials += 1;
        if !outcome.pass {
            acc.failures += 1;
        }
        let replace = match &acc.worst {
            None => true,
            Some(current) => {
                // Lexicographic (margin, ord): NaN margins sort first so a
                // poisoned trial always surfaces as the worst one.
                match outcome.margin.total_cmp(&current.margin) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => outcome.ord < current.ord,
                    std::cmp::Ordering::Greater => false,
                }
            }
        };
        if replace {
            acc.worst = Some(outcome);
        }
    }

    let mut per_law = BTreeMap::new();
    for (law, acc) in laws.iter().zip(accs) {
        let worst = acc.worst.expect("at least one trial per law");
        let worst_instance = if acc.failures > 0 || config.keep_worst {
            Some(generate_instance(
                *law,
                worst.seed,
                worst.dim,
                config.cond_max,
                &config.nu_grid,
            )?)
        } else {
            None
        };
        per_law.insert(
            law.as_str().to_owned(),
            LawSummary {
                trials: acc.trials,
                failures: acc.failures,
                worst_margin: worst.margin,
                worst_instance,
            },
        );
    }

    Ok(SuiteReport {
        config_echo: config.clone(),
        per_law,
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

/// Runs every selected law over the configured grid, sequentially.
pub fn run_suite_sequential(config: &FuzzConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let laws = selected_laws(&config.suites)?;
    let tasks = build_tasks(config, &laws);
    let outcomes: Vec<TrialOutcome> = tasks
        .iter()
        .map(|task| run_task(config, task))
        .collect::<Result<_>>()?;
    aggregate(config, &laws, outcomes, started)
}

/// Thread cap from `OPMEANS_THREADS`; 0 or unset means automatic.
pub fn thread_cap() -> usize {
    std::env::var("OPMEANS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

/// Runs every selected law over the configured grid. With the `parallel`
/// feature the trials run on rayon, capped by `OPMEANS_THREADS`; results are
/// bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn run_suite(config: &FuzzConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let laws = selected_laws(&config.suites)?;
    let tasks = build_tasks(config, &laws);

    let eval = || -> Result<Vec<TrialOutcome>> {
        tasks.par_iter().map(|task| run_task(config, task)).collect()
    };
    let outcomes = match thread_cap() {
        0 => eval()?,
        1 => tasks
            .iter()
            .map(|task| run_task(config, task))
            .collect::<Result<Vec<_>>>()?,
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::BadConfig { reason: format!("thread pool: {e}") })?
            .install(eval)?,
    };
    aggregate(config, &laws, outcomes, started)
}

/// Sequential fallback when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn run_suite(config: &FuzzConfig) -> Result<SuiteReport> {
    run_suite_sequential(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> FuzzConfig {
        FuzzConfig {
            trials: 4,
            dims: vec![2],
            suites: vec!["thm-2.5.2-*".to_owned()],
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn glob_matching() {
        assert!(glob_match("*", "thm-2.5.2-representation"));
        assert!(glob_match("thm-2.5.2-*", "thm-2.5.2-representation"));
        assert!(glob_match("*hga*", "cor-2.9-hga-half"));
        assert!(glob_match("scalar-*-3.4", "scalar-exp-3.4"));
        assert!(!glob_match("thm-*", "cor-2.9-hga-half"));
        assert!(!glob_match("hga", "cor-2.9-hga-half"));
    }

    #[test]
    fn default_selection_covers_every_law() {
        let laws = selected_laws(&["*".to_owned()]).unwrap();
        assert_eq!(laws.len(), LawId::ALL.len());
    }

    #[test]
    fn unknown_pattern_is_rejected() {
        assert!(matches!(
            selected_laws(&["zzz-*".to_owned()]),
            Err(Error::UnknownLawId { .. })
        ));
    }

    #[test]
    fn zero_trials_rejected_at_validation() {
        let config = FuzzConfig { trials: 0, ..FuzzConfig::default() };
        assert!(matches!(run_suite(&config), Err(Error::BadConfig { .. })));
    }

    #[test]
    fn single_suite_bookkeeping() {
        let report = run_suite(&small_config()).unwrap();
        assert_eq!(report.per_law.len(), 1);
        let summary = &report.per_law["thm-2.5.2-representation"];
        assert_eq!(summary.trials, 4);
        assert_eq!(summary.failures, 0);
        assert!(summary.worst_instance.is_none());
        assert!(summary.worst_margin > 0.0);
    }

    #[test]
    fn keep_worst_retains_replayable_instance() {
        let config = FuzzConfig { keep_worst: true, ..small_config() };
        let report = run_suite(&config).unwrap();
        let summary = &report.per_law["thm-2.5.2-representation"];
        let instance = summary.worst_instance.as_ref().unwrap();
        let replay = crate::laws::evaluate_instance_with(instance, config.tol_rel).unwrap();
        assert_eq!(replay.margin, summary.worst_margin);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let config = FuzzConfig { keep_worst: true, ..small_config() };
        let a = run_suite(&config).unwrap();
        let b = run_suite_sequential(&config).unwrap();
        let mut ja = serde_json::to_value(&a).unwrap();
        let mut jb = serde_json::to_value(&b).unwrap();
        ja["wall_time_ms"] = 0.into();
        jb["wall_time_ms"] = 0.into();
        assert_eq!(ja, jb);
    }
}
