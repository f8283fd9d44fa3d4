//! Append-only cache of solver results.
//!
//! One tab-separated record per line:
//!
//! ```text
//! v1  <sha256 of word>  <length>  <N>  <method>  <node budget>  <uncovered>  <optimality>  <pairs>
//! ```
//!
//! The digest is taken over the word's verbose text. Greedy results ignore
//! the node budget and are stored with budget `0`. A hit is re-checked
//! against the word before use and dropped if it does not validate, so a
//! stale or damaged file can only cost time.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use fglab::negligibility::{
    evaluate_cover, format_pairs, parse_pairs, solve, CoverageResult, MatchedPair, Method, Optimality, PairCover,
};
use fglab::Word;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const CACHE_FILE: &str = "cache.tsv";
const VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub digest: String,
    pub length: usize,
    pub max_pairs: usize,
    pub method: Method,
    pub node_budget: u64,
}

impl CacheKey {
    pub fn new(word: &Word, max_pairs: usize, method: Method, node_budget: u64) -> Self {
        let digest = hex::encode(Sha256::digest(word.to_verbose_string().as_bytes()));
        let node_budget = if method == Method::Greedy { 0 } else { node_budget };
        CacheKey { digest, length: word.len(), max_pairs, method, node_budget }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub uncovered: usize,
    pub optimality: Optimality,
    pub pairs: Vec<MatchedPair>,
}

/// Solver results keyed by [`CacheKey`]. Lookups are lock-free; new results
/// are queued and written by [`ResultCache::flush`] in key order.
#[derive(Debug, Default)]
pub struct ResultCache {
    path: Option<PathBuf>,
    entries: HashMap<CacheKey, CacheEntry>,
    pending: Mutex<Vec<(CacheKey, CacheEntry)>>,
}

impl ResultCache {
    /// An empty cache that is never written.
    pub fn in_memory() -> Self {
        ResultCache::default()
    }

    /// Loads `dir/cache.tsv` if present; [`flush`](Self::flush) appends to it.
    pub fn open(dir: &Path) -> Result<Self, CacheError> {
        let path = dir.join(CACHE_FILE);
        let entries = match fs::read_to_string(&path) {
            Ok(text) => Self::parse(&text)?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => HashMap::new(),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        Ok(ResultCache { path: Some(path), entries, pending: Mutex::default() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses cache text. Later records for the same key replace earlier ones.
    pub fn parse(text: &str) -> Result<HashMap<CacheKey, CacheEntry>, CacheError> {
        let mut entries = HashMap::new();
        for (index, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let (key, entry) = parse_line(raw).map_err(|message| CacheError::Syntax { line: index + 1, message })?;
            entries.insert(key, entry);
        }
        Ok(entries)
    }

    /// A cached result for `word`, if present and consistent with it.
    pub fn lookup(&self, word: &Word, max_pairs: usize, method: Method, node_budget: u64) -> Option<CoverageResult> {
        let entry = self.entries.get(&CacheKey::new(word, max_pairs, method, node_budget))?;
        let checked = evaluate_cover(PairCover::new(word.clone(), entry.pairs.clone(), max_pairs)).ok()?;
        (checked.uncovered_letters == entry.uncovered).then_some(CoverageResult {
            cover: checked.cover,
            uncovered_letters: entry.uncovered,
            optimality: entry.optimality,
        })
    }

    /// Cached result, or a fresh solve that is queued for writing.
    pub fn solve(&self, word: &Word, max_pairs: usize, method: Method, node_budget: u64) -> CoverageResult {
        if let Some(hit) = self.lookup(word, max_pairs, method, node_budget) {
            return hit;
        }
        let result = solve(word, max_pairs, method, node_budget);
        let entry = CacheEntry {
            uncovered: result.uncovered_letters,
            optimality: result.optimality,
            pairs: result.cover.pairs.clone(),
        };
        self.pending
            .lock()
            .expect("cache queue poisoned")
            .push((CacheKey::new(word, max_pairs, method, node_budget), entry));
        result
    }

    /// Moves queued results into the cache and appends them to the file.
    pub fn flush(&mut self) -> Result<usize, CacheError> {
        let mut fresh = std::mem::take(self.pending.get_mut().expect("cache queue poisoned"));
        fresh.sort_by(|a, b| a.0.cmp(&b.0));
        fresh.dedup_by(|a, b| a.0 == b.0);
        if let Some(path) = &self.path {
            if !fresh.is_empty() {
                let io_err = |source| CacheError::Io { path: path.clone(), source };
                if let Some(dir) = path.parent() {
                    fs::create_dir_all(dir).map_err(io_err)?;
                }
                let mut text = String::new();
                for (key, entry) in &fresh {
                    text.push_str(&format_line(key, entry));
                    text.push('\n');
                }
                let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
                file.write_all(text.as_bytes()).map_err(io_err)?;
            }
        }
        let added = fresh.len();
        self.entries.extend(fresh);
        Ok(added)
    }
}

fn format_line(key: &CacheKey, entry: &CacheEntry) -> String {
    format!(
        "{VERSION}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        key.digest,
        key.length,
        key.max_pairs,
        key.method,
        key.node_budget,
        entry.uncovered,
        entry.optimality.as_str(),
        format_pairs(&entry.pairs)
    )
}

fn parse_line(line: &str) -> Result<(CacheKey, CacheEntry), String> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [version, digest, length, max_pairs, method, budget, uncovered, optimality, pairs] = fields[..] else {
        return Err(format!("expected 9 fields, got {}", fields.len()));
    };
    if version != VERSION {
        return Err(format!("unknown record version {version:?}"));
    }
    if digest.len() != 64 || !digest.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
        return Err("digest must be 64 lowercase hex digits".into());
    }
    let count = |s: &str, what: &str| s.parse::<u64>().map_err(|_| format!("bad {what} {s:?}"));
    let key = CacheKey {
        digest: digest.to_string(),
        length: count(length, "length")? as usize,
        max_pairs: count(max_pairs, "pair budget")? as usize,
        method: method.parse()?,
        node_budget: count(budget, "node budget")?,
    };
    let entry = CacheEntry {
        uncovered: count(uncovered, "uncovered count")? as usize,
        optimality: optimality.parse()?,
        pairs: parse_pairs(pairs).map_err(|e| e.to_string())?,
    };
    if entry.uncovered > key.length {
        return Err("more letters uncovered than the word has".into());
    }
    Ok((key, entry))
}
