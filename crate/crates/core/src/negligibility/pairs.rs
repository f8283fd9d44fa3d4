//! Matched pairs of embedded subwords and their enumeration.

use std::fmt;

use super::suffix::Lce;
use crate::word::Word;

/// Half-open letter interval `start..end` of a host word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalOcc {
    pub start: usize,
    pub end: usize,
}

impl IntervalOcc {
    pub fn new(start: usize, end: usize) -> Self {
        IntervalOcc { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// Nonempty, inside the word, and shorter than the word.
    pub fn is_proper_in(&self, word_len: usize) -> bool {
        self.start < self.end && self.end <= word_len && self.len() < word_len
    }
}

impl fmt::Display for IntervalOcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchKind {
    /// The two factors are equal as words.
    Equal,
    /// The second factor is the inverse of the first.
    Inverse,
}

impl MatchKind {
    pub fn tag(self) -> char {
        match self {
            MatchKind::Equal => 'E',
            MatchKind::Inverse => 'I',
        }
    }
}

/// Two distinct embedded subwords whose factors are equal or mutually inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchedPair {
    pub first: IntervalOcc,
    pub second: IntervalOcc,
    pub kind: MatchKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairDefect {
    Improper(IntervalOcc),
    SameInterval,
    LengthMismatch,
    FactorsDiffer,
}

impl fmt::Display for PairDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairDefect::Improper(iv) => write!(f, "interval {iv} is not a proper nonempty subword"),
            PairDefect::SameInterval => f.write_str("both sides are the same embedded subword"),
            PairDefect::LengthMismatch => f.write_str("sides have different lengths"),
            PairDefect::FactorsDiffer => f.write_str("factors do not match"),
        }
    }
}

impl MatchedPair {
    pub fn new(first: IntervalOcc, second: IntervalOcc, kind: MatchKind) -> Self {
        MatchedPair { first, second, kind }
    }

    /// Length of each factor.
    pub fn factor_len(&self) -> usize {
        self.first.len()
    }

    /// Checks the pair against its host word.
    pub fn check(&self, word: &Word) -> Result<(), PairDefect> {
        let n = word.len();
        for iv in [self.first, self.second] {
            if !iv.is_proper_in(n) {
                return Err(PairDefect::Improper(iv));
            }
        }
        if self.first == self.second {
            return Err(PairDefect::SameInterval);
        }
        if self.first.len() != self.second.len() {
            return Err(PairDefect::LengthMismatch);
        }
        let a = &word.letters()[self.first.start..self.first.end];
        let b = &word.letters()[self.second.start..self.second.end];
        let matches = match self.kind {
            MatchKind::Equal => a == b,
            MatchKind::Inverse => a.iter().rev().zip(b).all(|(x, y)| x.inverse() == *y),
        };
        if matches {
            Ok(())
        } else {
            Err(PairDefect::FactorsDiffer)
        }
    }

    /// Number of letter positions in either side.
    pub fn coverage(&self) -> usize {
        let (a, b) = (self.first, self.second);
        let overlap = a.end.min(b.end).saturating_sub(a.start.max(b.start));
        a.len() + b.len() - overlap
    }

    /// Greedy/exact tie-break order: longer factor, then smaller starts,
    /// then `Equal` before `Inverse`.
    pub(crate) fn tie_key(&self) -> (std::cmp::Reverse<usize>, usize, usize, MatchKind) {
        (std::cmp::Reverse(self.factor_len()), self.first.start, self.second.start, self.kind)
    }
}

impl fmt::Display for MatchedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}~{}:{}", self.first, self.second, self.kind.tag())
    }
}

/// All maximal matched pairs of `w` with factor length at least `min_len`.
///
/// A pair is maximal when it cannot be grown by one letter on either side
/// (both intervals at once) and still match. Pairs are normalized with
/// `first.start < second.start` and returned in sorted order.
///
/// Built on longest-common-extension queries over `w · # · w⁻¹`: an `Equal`
/// pair is a left-maximal start pair `(s, t)` extended by `lce(s, t)`; an
/// `Inverse` pair anchors the end of the first side against the start of the
/// second, which reads forward in `w⁻¹` from position `|w| - end`.
pub fn enumerate_matching_pairs(w: &Word, min_len: usize) -> Vec<MatchedPair> {
    let n = w.len();
    if n < 2 {
        return Vec::new();
    }
    let min_len = min_len.max(1);
    let letters = w.letters();
    let separator = 2 * w.rank();
    let mut text: Vec<u32> = letters.iter().map(|l| l.code()).collect();
    text.push(separator);
    text.extend(w.invert().letters().iter().map(|l| l.code()));
    let lce = Lce::new(&text);
    let mirror = |end: usize| n + 1 + (n - end);

    let mut pairs = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if s > 0 && letters[s - 1] == letters[t - 1] {
                continue;
            }
            let len = lce.lce(s, t);
            if len >= min_len {
                pairs.push(MatchedPair::new(
                    IntervalOcc::new(s, s + len),
                    IntervalOcc::new(t, t + len),
                    MatchKind::Equal,
                ));
            }
        }
    }
    // first = [end - len, end), second = [t, t + len), second = first⁻¹.
    for end in 1..=n {
        for t in 0..n {
            if t > 0 && end < n && letters[t - 1] == letters[end].inverse() {
                continue;
            }
            let len = lce.lce(t, mirror(end));
            if len < min_len {
                continue;
            }
            let first = IntervalOcc::new(end - len, end);
            let second = IntervalOcc::new(t, t + len);
            if first.start < second.start {
                pairs.push(MatchedPair::new(first, second, MatchKind::Inverse));
            }
        }
    }
    pairs.sort_by_key(|p| (p.first, p.second, p.kind));
    pairs
}
