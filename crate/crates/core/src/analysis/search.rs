use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::ortho::orthogonality_error;
use super::rules::ParamRule;
use crate::baselines::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub e_max: f64,
    /// Wall-clock limit per trial; a slower trial ends the search.
    pub trial_budget_s: f64,
    pub start: usize,
    /// Largest size tried.
    pub ceiling: usize,
    /// Sizes directly below the bisection result that are retested.
    pub verify_window: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            e_max: 1e-3,
            trial_budget_s: 60.0,
            start: 2,
            ceiling: 4096,
            verify_window: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "detail")]
pub enum TrialStatus {
    Pass,
    Fail,
    /// Generation failed; counts as a failure.
    Error(String),
    OverBudget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub n: usize,
    pub error: Option<f64>,
    pub seconds: f64,
    pub status: TrialStatus,
}

impl Trial {
    pub fn passed(&self) -> bool {
        self.status == TrialStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Largest size such that it and every retested smaller size pass; 0 when
    /// even the start size fails.
    pub max_n: usize,
    /// Result of doubling and bisection alone.
    pub bisection_n: usize,
    pub at_ceiling: bool,
    pub budget_exceeded: bool,
    pub trials: Vec<Trial>,
    /// Failing sizes below some passing size.
    pub monotone_violations: Vec<usize>,
}

fn run_trial(alg: &Algorithm, rule: &ParamRule, n: usize, cfg: &SearchConfig) -> Trial {
    let start = Instant::now();
    let result = rule.params(n).and_then(|p| alg.generate(&p, n - 1));
    let (error, mut status) = match result {
        Ok(m) => {
            let e = orthogonality_error(&m);
            let ok = e <= cfg.e_max;
            (
                Some(e),
                if ok {
                    TrialStatus::Pass
                } else {
                    TrialStatus::Fail
                },
            )
        }
        Err(err) => (None, TrialStatus::Error(err.to_string())),
    };
    let seconds = start.elapsed().as_secs_f64();
    if seconds > cfg.trial_budget_s {
        status = TrialStatus::OverBudget;
    }
    Trial {
        n,
        error,
        seconds,
        status,
    }
}

/// Largest `N` with `E <= e_max`: doubling from `start` up to `ceiling`, then
/// bisection between the last pass and the first failure, then a retest of the
/// `verify_window` sizes below. A failure there lowers the result to just below it.
pub fn max_size_search(alg: &Algorithm, rule: &ParamRule, cfg: &SearchConfig) -> SearchOutcome {
    max_size_search_with(alg, rule, cfg, |_| {})
}

/// [`max_size_search`] calling `on_trial` after every trial.
pub fn max_size_search_with(
    alg: &Algorithm,
    rule: &ParamRule,
    cfg: &SearchConfig,
    mut on_trial: impl FnMut(&Trial),
) -> SearchOutcome {
    let mut trials = Vec::new();
    let mut budget_exceeded = false;
    let mut lo = 0;
    let mut hi = None;
    let mut n = cfg.start.max(1).min(cfg.ceiling);
    loop {
        let t = run_trial(alg, rule, n, cfg);
        let passed = t.passed();
        budget_exceeded |= t.status == TrialStatus::OverBudget;
        on_trial(&t);
        trials.push(t);
        if budget_exceeded {
            break;
        }
        if !passed {
            hi = Some(n);
            break;
        }
        lo = n;
        if n >= cfg.ceiling {
            break;
        }
        n = (2 * n).min(cfg.ceiling);
    }
    if let (Some(mut h), false) = (hi, budget_exceeded) {
        let mut l = lo;
        while h - l > 1 {
            let mid = l + (h - l) / 2;
            let t = run_trial(alg, rule, mid, cfg);
            let passed = t.passed();
            budget_exceeded |= t.status == TrialStatus::OverBudget;
            on_trial(&t);
            trials.push(t);
            if budget_exceeded {
                break;
            }
            if passed {
                l = mid;
            } else {
                h = mid;
            }
        }
        lo = l;
    }
    let bisection_n = lo;
    if !budget_exceeded && lo > 0 {
        for n in (lo.saturating_sub(cfg.verify_window).max(cfg.start.max(1))..lo).rev() {
            if trials.iter().any(|t| t.n == n) {
                continue;
            }
            let t = run_trial(alg, rule, n, cfg);
            budget_exceeded |= t.status == TrialStatus::OverBudget;
            on_trial(&t);
            trials.push(t);
            if budget_exceeded {
                break;
            }
        }
    }
    let max_pass = trials
        .iter()
        .filter(|t| t.passed())
        .map(|t| t.n)
        .max()
        .unwrap_or(0);
    let mut monotone_violations: Vec<usize> = trials
        .iter()
        .filter(|t| !t.passed() && t.status != TrialStatus::OverBudget && t.n < max_pass)
        .map(|t| t.n)
        .collect();
    monotone_violations.sort_unstable();
    let max_n = match monotone_violations.first() {
        Some(&first) if first <= bisection_n => first - 1,
        _ => bisection_n,
    };
    SearchOutcome {
        max_n,
        bisection_n,
        at_ceiling: max_n == cfg.ceiling,
        budget_exceeded,
        trials,
        monotone_violations,
    }
}
