//! Matched-pair covers of words: how few letters can `N` pairs of equal or
//! mutually inverse proper subwords leave uncovered?

mod cover;
mod pairs;
mod profile;
mod solver;
pub mod suffix;
mod verdict;

pub use cover::{evaluate_cover, format_pairs, parse_pairs, CoverError, CoverageResult, Optimality, PairCover};
pub use pairs::{enumerate_matching_pairs, IntervalOcc, MatchKind, MatchedPair, PairDefect};
pub use profile::{
    family_profile, family_profile_with, row_ratio, solve, CoverageProfile, Method, ProfileError, ProfileRequest,
    ProfileRow, CSV_HEADER,
};
pub use solver::{best_cover_exact, best_cover_greedy, DEFAULT_NODE_BUDGET};
pub use verdict::{
    negligibility_report, BudgetSummary, BudgetTrend, Verdict, VerdictRecord, DEFAULT_EPSILONS, MIN_LENGTHS,
};
