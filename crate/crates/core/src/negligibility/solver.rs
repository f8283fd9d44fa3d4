//! Minimum-uncovered-letter solvers over maximal matched pairs.
//!
//! Any valid pair grows into a maximal pair whose intervals contain the
//! original ones, so restricting candidates to maximal pairs never loses
//! coverage. The exact solver further drops candidates whose letter set is
//! contained in another candidate's, then runs a depth-first branch and bound
//! seeded with the greedy cover.

use super::cover::{CoverageResult, Optimality, PairCover};
use super::pairs::{enumerate_matching_pairs, MatchedPair};
use crate::word::Word;

/// Default node limit for [`best_cover_exact`].
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Letter positions covered by a pair, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Mask(Vec<u64>);

impl Mask {
    pub(crate) fn empty(len: usize) -> Self {
        Mask(vec![0; len.div_ceil(64).max(1)])
    }

    pub(crate) fn of_pair(len: usize, pair: &MatchedPair) -> Self {
        let mut m = Mask::empty(len);
        for iv in [pair.first, pair.second] {
            for i in iv.start..iv.end {
                m.0[i / 64] |= 1 << (i % 64);
            }
        }
        m
    }

    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Bits of `self` not already in `covered`.
    pub(crate) fn gain(&self, covered: &Mask) -> usize {
        self.0.iter().zip(&covered.0).map(|(a, c)| (a & !c).count_ones() as usize).sum()
    }

    pub(crate) fn union_with(&mut self, other: &Mask) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    pub(crate) fn is_subset_of(&self, other: &Mask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Candidate {
    pair: MatchedPair,
    mask: Mask,
    size: usize,
}

fn candidates(w: &Word) -> Vec<Candidate> {
    let n = w.len();
    enumerate_matching_pairs(w, 1)
        .into_iter()
        .map(|pair| {
            let mask = Mask::of_pair(n, &pair);
            let size = mask.count();
            Candidate { pair, mask, size }
        })
        .collect()
}

fn trivial(w: &Word, budget: usize, optimality: Optimality) -> CoverageResult {
    CoverageResult { cover: PairCover::new(w.clone(), Vec::new(), budget), uncovered_letters: w.len(), optimality }
}

fn result(w: &Word, budget: usize, pairs: Vec<MatchedPair>, covered: usize, optimality: Optimality) -> CoverageResult {
    CoverageResult { cover: PairCover::new(w.clone(), pairs, budget), uncovered_letters: w.len() - covered, optimality }
}

/// Repeatedly takes the pair adding the most new letters, ties broken by
/// longer factor, smaller first start, smaller second start, `Equal` first.
pub fn best_cover_greedy(w: &Word, max_pairs: usize) -> CoverageResult {
    let cands = candidates(w);
    let (pairs, covered) = greedy_pick(w.len(), &cands, max_pairs);
    result(w, max_pairs, pairs, covered, Optimality::GreedyBound)
}

fn greedy_pick(len: usize, cands: &[Candidate], max_pairs: usize) -> (Vec<MatchedPair>, usize) {
    let mut covered = Mask::empty(len);
    let mut covered_count = 0;
    let mut pairs = Vec::new();
    while pairs.len() < max_pairs && covered_count < len {
        let best = cands
            .iter()
            .map(|c| (c.mask.gain(&covered), c))
            .filter(|(g, _)| *g > 0)
            .min_by_key(|(g, c)| (std::cmp::Reverse(*g), c.pair.tie_key()));
        let Some((gain, c)) = best else { break };
        covered.union_with(&c.mask);
        covered_count += gain;
        pairs.push(c.pair);
    }
    (pairs, covered_count)
}

/// Minimum uncovered letters over all covers with at most `max_pairs`
/// pairs. Gives up after `node_budget` search nodes and then reports the best
/// cover found with [`Optimality::BudgetExhausted`].
pub fn best_cover_exact(w: &Word, max_pairs: usize, node_budget: u64) -> CoverageResult {
    let n = w.len();
    if max_pairs == 0 || n < 2 {
        return trivial(w, max_pairs, Optimality::Exact);
    }
    let mut cands = prune_dominated(candidates(w));
    cands.sort_by(|a, b| b.size.cmp(&a.size).then_with(|| a.pair.tie_key().cmp(&b.pair.tie_key())));

    let (greedy_pairs, greedy_covered) = greedy_pick(n, &cands, max_pairs);
    let mut search = Search {
        cands: &cands,
        len: n,
        max_pairs,
        node_budget,
        nodes: 0,
        exhausted: false,
        best_covered: greedy_covered,
        best: greedy_pairs.iter().map(|p| index_of(&cands, p)).collect(),
        chosen: Vec::with_capacity(max_pairs),
    };
    if search.best_covered < n {
        search.descend(0, &Mask::empty(n), 0);
    }
    let optimality = if search.exhausted { Optimality::BudgetExhausted } else { Optimality::Exact };
    let pairs = search.best.iter().map(|&i| cands[i].pair).collect();
    result(w, max_pairs, pairs, search.best_covered, optimality)
}

fn index_of(cands: &[Candidate], pair: &MatchedPair) -> usize {
    cands.iter().position(|c| c.pair == *pair).expect("greedy pick comes from the candidate list")
}

/// Drops candidates whose letter set duplicates or is contained in another's,
/// keeping the tie-break-smallest among equal sets.
fn prune_dominated(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    cands.sort_by(|a, b| b.size.cmp(&a.size).then_with(|| a.pair.tie_key().cmp(&b.pair.tie_key())));
    let mut kept: Vec<Candidate> = Vec::with_capacity(cands.len());
    for c in cands {
        if !kept.iter().any(|k| c.mask.is_subset_of(&k.mask)) {
            kept.push(c);
        }
    }
    kept
}

struct Search<'a> {
    cands: &'a [Candidate],
    len: usize,
    max_pairs: usize,
    node_budget: u64,
    nodes: u64,
    exhausted: bool,
    best_covered: usize,
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.exhausted || self.best_covered == self.len
    }

    fn descend(&mut self, start: usize, covered: &Mask, covered_count: usize) {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.exhausted = true;
            return;
        }
        let slots = self.max_pairs - self.chosen.len();
        if slots == 0 {
            return;
        }
        let gains: Vec<usize> = self.cands[start..].iter().map(|c| c.mask.gain(covered)).collect();
        let mut top = gains.clone();
        top.sort_unstable_by(|a, b| b.cmp(a));
        let bound = covered_count + top.iter().take(slots).sum::<usize>();
        if bound <= self.best_covered {
            return;
        }
        for (offset, &gain) in gains.iter().enumerate() {
            let j = start + offset;
            // Candidates are sorted by size, so nothing from j on adds more
            // than size[j] per remaining slot.
            if covered_count + slots * self.cands[j].size <= self.best_covered {
                break;
            }
            if gain == 0 {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(&self.cands[j].mask);
            let next_count = covered_count + gain;
            self.chosen.push(j);
            if next_count > self.best_covered {
                self.best_covered = next_count;
                self.best = self.chosen.clone();
            }
            if !self.done() {
                self.descend(j + 1, &next, next_count);
            }
            self.chosen.pop();
            if self.done() {
                return;
            }
        }
    }
}
