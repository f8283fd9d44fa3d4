//! Heuristic negligibility verdicts from a coverage profile.
//!
//! Negligibility is a statement about all but finitely many members of an
//! infinite set, so a finite sweep can only suggest it. For each pair budget
//! `N` the verdict looks at the tail of the sweep (the larger half of the
//! sampled `n`, at least three rows):
//!
//! * negligible at `N` when every tail fraction is at most the smallest `ε`;
//! * nonnegligible at `N` when every tail fraction exceeds the smallest `ε`
//!   and the tail does not trend down (last fraction ≥ first).
//!
//! The overall verdict is negligible at the smallest such `N`, nonnegligible
//! when every sampled `N` is nonnegligible, and inconclusive otherwise.

use std::fmt;

use serde::Serialize;

use super::profile::{CoverageProfile, Method, ProfileRow};

pub const DEFAULT_EPSILONS: [f64; 4] = [0.2, 0.1, 0.05, 0.02];

/// Minimum number of sampled lengths per budget.
pub const MIN_LENGTHS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    EmpiricallyNegligible { max_pairs: usize },
    EmpiricallyNonnegligible { max_pairs_tested: usize },
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EmpiricallyNegligible { max_pairs } => write!(f, "empirically-negligible(N={max_pairs})"),
            Verdict::EmpiricallyNonnegligible { max_pairs_tested } => {
                write!(f, "empirically-nonnegligible(N<={max_pairs_tested})")
            }
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetTrend {
    Negligible,
    Nonnegligible,
    Undecided,
    InsufficientData,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetSummary {
    #[serde(rename = "N")]
    pub max_pairs: usize,
    pub lengths_sampled: usize,
    pub tail_n: Vec<u64>,
    pub tail_min: f64,
    pub tail_max: f64,
    /// `(ε, every tail fraction ≤ ε)` for each grid value.
    pub below: Vec<(f64, bool)>,
    pub trend: BudgetTrend,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    /// `family params` of the profiled rows, empty for an empty profile.
    pub family: String,
    pub heuristic: bool,
    pub verdict: String,
    pub method: String,
    pub epsilons: Vec<f64>,
    pub budgets: Vec<BudgetSummary>,
    #[serde(skip)]
    pub outcome: Verdict,
}

impl VerdictRecord {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("verdict record serializes")
    }
}

/// Builds the verdict from exact rows when present, greedy rows otherwise.
pub fn negligibility_report(profile: &CoverageProfile, epsilons: &[f64]) -> VerdictRecord {
    let mut eps: Vec<f64> = epsilons.iter().copied().filter(|e| e.is_finite() && *e >= 0.0).collect();
    if eps.is_empty() {
        eps = DEFAULT_EPSILONS.to_vec();
    }
    eps.sort_by(|a, b| b.total_cmp(a));
    let method = if profile.rows.iter().any(|r| r.method == Method::Exact) { Method::Exact } else { Method::Greedy };
    let rows: Vec<&ProfileRow> = profile.rows.iter().filter(|r| r.method == method).collect();

    let mut budgets: Vec<usize> = rows.iter().map(|r| r.max_pairs).collect();
    budgets.sort_unstable();
    budgets.dedup();
    let summaries: Vec<BudgetSummary> = budgets.iter().map(|&b| summarize(&rows, b, &eps)).collect();

    let outcome = if summaries.is_empty() || summaries.iter().any(|s| s.trend == BudgetTrend::InsufficientData) {
        Verdict::Inconclusive
    } else if let Some(s) = summaries.iter().find(|s| s.trend == BudgetTrend::Negligible) {
        Verdict::EmpiricallyNegligible { max_pairs: s.max_pairs }
    } else if summaries.iter().all(|s| s.trend == BudgetTrend::Nonnegligible) {
        Verdict::EmpiricallyNonnegligible { max_pairs_tested: *budgets.last().unwrap() }
    } else {
        Verdict::Inconclusive
    };
    let family = profile
        .rows
        .first()
        .map(|r| if r.params.is_empty() { r.family.clone() } else { format!("{} {}", r.family, r.params) })
        .unwrap_or_default();
    VerdictRecord {
        family,
        heuristic: true,
        verdict: outcome.to_string(),
        method: method.to_string(),
        epsilons: eps,
        budgets: summaries,
        outcome,
    }
}

fn summarize(rows: &[&ProfileRow], max_pairs: usize, eps: &[f64]) -> BudgetSummary {
    let mut series: Vec<&ProfileRow> = rows.iter().copied().filter(|r| r.max_pairs == max_pairs).collect();
    series.sort_by_key(|r| r.n);
    let lengths = series.len();
    let tail_len = lengths.div_ceil(2).max(MIN_LENGTHS).min(lengths);
    let tail = &series[lengths - tail_len..];
    let fractions: Vec<f64> = tail.iter().map(|r| r.fraction).collect();
    let tail_min = fractions.iter().copied().fold(f64::INFINITY, f64::min);
    let tail_max = fractions.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let below: Vec<(f64, bool)> = eps.iter().map(|&e| (e, !fractions.is_empty() && tail_max <= e)).collect();
    let smallest = eps.last().copied().unwrap_or(0.0);
    let trend = if lengths < MIN_LENGTHS {
        BudgetTrend::InsufficientData
    } else if tail_max <= smallest {
        BudgetTrend::Negligible
    } else if tail_min > smallest && fractions.last() >= fractions.first() {
        BudgetTrend::Nonnegligible
    } else {
        BudgetTrend::Undecided
    };
    BudgetSummary {
        max_pairs,
        lengths_sampled: lengths,
        tail_n: tail.iter().map(|r| r.n).collect(),
        tail_min: if fractions.is_empty() { 0.0 } else { tail_min },
        tail_max: if fractions.is_empty() { 0.0 } else { tail_max },
        below,
        trend,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negligibility::{family_profile, ProfileRequest, DEFAULT_NODE_BUDGET};

    fn profile(family: &str, ns: std::ops::RangeInclusive<u64>, budgets: &[usize]) -> CoverageProfile {
        family_profile(&ProfileRequest {
            family: family.parse().unwrap(),
            ns: ns.collect(),
            pair_budgets: budgets.to_vec(),
            methods: vec![Method::Exact],
            node_budget: DEFAULT_NODE_BUDGET,
            record_timings: false,
        })
        .unwrap()
    }

    #[test]
    fn borel_is_negligible_at_two() {
        let p = profile("borel glen=6 seed=1", 2..=8, &[2]);
        let v = negligibility_report(&p, &DEFAULT_EPSILONS);
        assert_eq!(v.outcome, Verdict::EmpiricallyNegligible { max_pairs: 2 });
        assert!(v.heuristic);
        let p = profile("borel g=bcd", 2..=8, &[1, 2]);
        let v = negligibility_report(&p, &DEFAULT_EPSILONS);
        assert_eq!(v.outcome, Verdict::EmpiricallyNegligible { max_pairs: 2 });
    }

    #[test]
    fn y_is_nonnegligible_up_to_two() {
        let p = profile("Y k=2", 3..=7, &[1, 2]);
        let v = negligibility_report(&p, &DEFAULT_EPSILONS);
        assert_eq!(v.outcome, Verdict::EmpiricallyNonnegligible { max_pairs_tested: 2 });
        assert_eq!(v.budgets[0].tail_n, vec![5, 6, 7]);
    }

    #[test]
    fn empty_profile_is_inconclusive() {
        let v = negligibility_report(&CoverageProfile::default(), &DEFAULT_EPSILONS);
        assert_eq!(v.outcome, Verdict::Inconclusive);
    }

    #[test]
    fn too_few_lengths_is_inconclusive() {
        let p = profile("Y k=2", 3..=4, &[1]);
        assert_eq!(negligibility_report(&p, &DEFAULT_EPSILONS).outcome, Verdict::Inconclusive);
    }

    #[test]
    fn record_serializes() {
        let p = profile("Y k=2", 3..=7, &[1]);
        let text = negligibility_report(&p, &[0.1]).to_toml();
        assert!(text.contains("heuristic = true"));
        assert!(text.starts_with("family = \"Y k=2\"\n"));
        assert!(text.contains("verdict = \"empirically-nonnegligible(N<=1)\""));
        assert!(text.contains("[[budgets]]"));
    }
}
