//! Coverage profiles: solver results over a family sweep, and their CSV form.
//!
//! CSV header (exact): `family,params,n,length,N,method,uncovered,fraction,ms`.
//! `method` is `exact`, `greedy`, or `exact-budget` for an exact run that hit
//! its node budget. `fraction` has six decimals. `ms` is wall time only when
//! timings were requested, otherwise `0`, which keeps reruns byte-identical.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use super::cover::{fraction, CoverageResult, Optimality};
use super::solver::{best_cover_exact, best_cover_greedy};
use crate::families::{FamilyError, FamilySpec};
use crate::word::Word;

pub const CSV_HEADER: &str = "family,params,n,length,N,method,uncovered,fraction,ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Greedy,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Method::Exact),
            "greedy" => Ok(Method::Greedy),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Runs one solver.
pub fn solve(w: &Word, max_pairs: usize, method: Method, node_budget: u64) -> CoverageResult {
    match method {
        Method::Exact => best_cover_exact(w, max_pairs, node_budget),
        Method::Greedy => best_cover_greedy(w, max_pairs),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub family: String,
    pub params: String,
    pub n: u64,
    pub length: usize,
    pub max_pairs: usize,
    pub method: Method,
    pub budget_exhausted: bool,
    pub uncovered: usize,
    pub fraction: f64,
    pub ms: u64,
}

impl ProfileRow {
    fn method_field(&self) -> String {
        if self.budget_exhausted {
            format!("{}-budget", self.method)
        } else {
            self.method.to_string()
        }
    }

    fn key(&self) -> (&str, &str, u64, usize, Method) {
        (&self.family, &self.params, self.n, self.max_pairs, self.method)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoverageProfile {
    pub rows: Vec<ProfileRow>,
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("empty {0} range")]
    EmptyRange(&'static str),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv header must be exactly `{CSV_HEADER}`")]
    Header,
    #[error("csv line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("duplicate row for n={n}, N={max_pairs}, method={method}")]
    DuplicateRow { n: u64, max_pairs: usize, method: Method },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// What to measure.
#[derive(Debug, Clone)]
pub struct ProfileRequest {
    pub family: FamilySpec,
    pub ns: Vec<u64>,
    pub pair_budgets: Vec<usize>,
    pub methods: Vec<Method>,
    pub node_budget: u64,
    pub record_timings: bool,
}

impl ProfileRequest {
    /// `(n, N, method)` jobs in output order.
    fn jobs(&self) -> Result<Vec<(u64, usize, Method)>, ProfileError> {
        let mut ns = self.ns.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut budgets = self.pair_budgets.clone();
        budgets.sort_unstable();
        budgets.dedup();
        let mut methods = self.methods.clone();
        methods.sort_by_key(|m| m.as_str());
        methods.dedup();
        if ns.is_empty() {
            return Err(ProfileError::EmptyRange("n"));
        }
        if budgets.is_empty() {
            return Err(ProfileError::EmptyRange("N"));
        }
        if methods.is_empty() {
            return Err(ProfileError::EmptyRange("method"));
        }
        let mut jobs = Vec::new();
        for &n in &ns {
            for &b in &budgets {
                for &m in &methods {
                    jobs.push((n, b, m));
                }
            }
        }
        Ok(jobs)
    }
}

/// Profiles a family with the built-in solvers.
pub fn family_profile(request: &ProfileRequest) -> Result<CoverageProfile, ProfileError> {
    family_profile_with(request, solve)
}

/// Profiles a family with a caller-supplied solver (e.g. a caching one).
///
/// Rows are computed in parallel and emitted ordered by `(n, N, method)`.
pub fn family_profile_with<F>(request: &ProfileRequest, solver: F) -> Result<CoverageProfile, ProfileError>
where
    F: Fn(&Word, usize, Method, u64) -> CoverageResult + Sync,
{
    let jobs = request.jobs()?;
    let mut ns: Vec<u64> = jobs.iter().map(|j| j.0).collect();
    ns.dedup();
    let words: Vec<(u64, Word)> =
        ns.into_iter().map(|n| request.family.word(n).map(|w| (n, w))).collect::<Result<_, _>>()?;
    let family = request.family.name().to_string();
    let params = request.family.params();
    let rows = jobs
        .par_iter()
        .map(|&(n, max_pairs, method)| {
            let word = &words.iter().find(|(k, _)| *k == n).expect("word generated for every n").1;
            let started = Instant::now();
            let result = solver(word, max_pairs, method, request.node_budget);
            let ms = if request.record_timings { started.elapsed().as_millis() as u64 } else { 0 };
            ProfileRow {
                family: family.clone(),
                params: params.clone(),
                n,
                length: word.len(),
                max_pairs,
                method,
                budget_exhausted: result.optimality == Optimality::BudgetExhausted,
                uncovered: result.uncovered_letters,
                fraction: result.uncovered_fraction(),
                ms,
            }
        })
        .collect();
    Ok(CoverageProfile { rows })
}

impl CoverageProfile {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), ProfileError> {
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        writer.write_record(CSV_HEADER.split(','))?;
        for r in &self.rows {
            writer.write_record([
                r.family.clone(),
                r.params.clone(),
                r.n.to_string(),
                r.length.to_string(),
                r.max_pairs.to_string(),
                r.method_field(),
                r.uncovered.to_string(),
                format!("{:.6}", r.fraction),
                r.ms.to_string(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn read_csv<R: io::Read>(input: R) -> Result<Self, ProfileError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
        let mut records = reader.records();
        let header = records.next().ok_or(ProfileError::Header)??;
        if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
            return Err(ProfileError::Header);
        }
        let mut rows: Vec<ProfileRow> = Vec::new();
        for record in records {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let bad = |message: String| ProfileError::Row { line, message };
            if record.len() != 9 {
                return Err(bad(format!("expected 9 fields, got {}", record.len())));
            }
            let num = |i: usize| -> Result<u64, ProfileError> {
                record[i].parse::<u64>().map_err(|_| bad(format!("field {i} is not a count: {:?}", &record[i])))
            };
            let (method, budget_exhausted) = match record[5].strip_suffix("-budget") {
                Some(m) => (m, true),
                None => (&record[5], false),
            };
            let method: Method = method.parse().map_err(bad)?;
            let fraction: f64 = record[7]
                .parse()
                .ok()
                .filter(|f: &f64| (0.0..=1.0).contains(f))
                .ok_or_else(|| bad(format!("fraction {:?} is not in [0,1]", &record[7])))?;
            let row = ProfileRow {
                family: record[0].to_string(),
                params: record[1].to_string(),
                n: num(2)?,
                length: num(3)? as usize,
                max_pairs: num(4)? as usize,
                method,
                budget_exhausted,
                uncovered: num(6)? as usize,
                fraction,
                ms: num(8)?,
            };
            if row.uncovered > row.length {
                return Err(bad("more letters uncovered than the word has".into()));
            }
            if rows.iter().any(|r| r.key() == row.key()) {
                return Err(ProfileError::DuplicateRow { n: row.n, max_pairs: row.max_pairs, method: row.method });
            }
            rows.push(row);
        }
        Ok(CoverageProfile { rows })
    }
}

impl FromStr for CoverageProfile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoverageProfile::read_csv(s.as_bytes())
    }
}

/// Exact uncovered fraction of a row, recomputed from its counts.
pub fn row_ratio(row: &ProfileRow) -> f64 {
    fraction(row.uncovered, row.length)
}
