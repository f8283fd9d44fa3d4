//! Pair covers, their evaluation, and the cover text form
//! `[(s1,e1)~(s2,e2):E; (s1,e1)~(s2,e2):I]`.

use std::str::FromStr;

use thiserror::Error;

use super::pairs::{IntervalOcc, MatchKind, MatchedPair, PairDefect};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("pair {index} ({pair}): {defect}")]
    InvalidPair { index: usize, pair: MatchedPair, defect: PairDefect },
    #[error("pair {index} ({pair}) repeats pair {earlier}")]
    DuplicatePair { index: usize, earlier: usize, pair: MatchedPair },
    #[error("cover uses {used} pairs but the budget is {budget}")]
    OverBudget { used: usize, budget: usize },
    #[error("cover syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Optimality {
    /// Proven minimum over all covers within the pair budget.
    Exact,
    /// Greedy result, an upper bound on the minimum.
    GreedyBound,
    /// Exact search hit its node budget; best cover found so far.
    BudgetExhausted,
    /// A caller-supplied cover, evaluated as given.
    Evaluated,
}

impl Optimality {
    pub fn as_str(self) -> &'static str {
        match self {
            Optimality::Exact => "exact",
            Optimality::GreedyBound => "greedy",
            Optimality::BudgetExhausted => "budget",
            Optimality::Evaluated => "evaluated",
        }
    }
}

impl FromStr for Optimality {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Optimality::Exact),
            "greedy" => Ok(Optimality::GreedyBound),
            "budget" => Ok(Optimality::BudgetExhausted),
            "evaluated" => Ok(Optimality::Evaluated),
            other => Err(format!("unknown optimality {other:?}")),
        }
    }
}

/// Up to `budget` matched pairs on one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCover {
    pub word: Word,
    pub pairs: Vec<MatchedPair>,
    pub budget: usize,
}

impl PairCover {
    pub fn new(word: Word, pairs: Vec<MatchedPair>, budget: usize) -> Self {
        PairCover { word, pairs, budget }
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        if self.pairs.len() > self.budget {
            return Err(CoverError::OverBudget { used: self.pairs.len(), budget: self.budget });
        }
        for (index, pair) in self.pairs.iter().enumerate() {
            pair.check(&self.word).map_err(|defect| CoverError::InvalidPair { index, pair: *pair, defect })?;
            let key = unordered(pair);
            if let Some(earlier) = self.pairs[..index].iter().position(|p| unordered(p) == key) {
                return Err(CoverError::DuplicatePair { index, earlier, pair: *pair });
            }
        }
        Ok(())
    }

    /// Count of letter positions outside every interval of every pair.
    pub fn uncovered_letters(&self) -> usize {
        let n = self.word.len();
        let mut covered = vec![false; n];
        for p in &self.pairs {
            for iv in [p.first, p.second] {
                let end = iv.end.min(n);
                covered[iv.start.min(end)..end].iter_mut().for_each(|c| *c = true);
            }
        }
        covered.iter().filter(|&&c| !c).count()
    }

    pub fn pairs_text(&self) -> String {
        format_pairs(&self.pairs)
    }
}

fn unordered(p: &MatchedPair) -> (IntervalOcc, IntervalOcc, MatchKind) {
    if p.first <= p.second {
        (p.first, p.second, p.kind)
    } else {
        (p.second, p.first, p.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageResult {
    pub cover: PairCover,
    pub uncovered_letters: usize,
    pub optimality: Optimality,
}

impl CoverageResult {
    pub fn word_len(&self) -> usize {
        self.cover.word.len()
    }

    /// `uncovered / |w|`, with the empty word counting as fully covered.
    pub fn uncovered_fraction(&self) -> f64 {
        fraction(self.uncovered_letters, self.word_len())
    }

    /// The same fraction as an unreduced `(numerator, denominator)` pair.
    pub fn uncovered_ratio(&self) -> (usize, usize) {
        (self.uncovered_letters, self.word_len())
    }
}

pub(crate) fn fraction(uncovered: usize, len: usize) -> f64 {
    if len == 0 {
        0.0
    } else {
        uncovered as f64 / len as f64
    }
}

/// Validates the cover, then counts uncovered letters exactly.
pub fn evaluate_cover(cover: PairCover) -> Result<CoverageResult, CoverError> {
    cover.validate()?;
    let uncovered_letters = cover.uncovered_letters();
    Ok(CoverageResult { cover, uncovered_letters, optimality: Optimality::Evaluated })
}

pub fn format_pairs(pairs: &[MatchedPair]) -> String {
    let parts: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join("; "))
}

/// Parses the bracketed cover text form. Whitespace is insignificant.
pub fn parse_pairs(input: &str) -> Result<Vec<MatchedPair>, CoverError> {
    let mut cursor = Cursor { input: input.as_bytes(), pos: 0 };
    cursor.expect(b'[')?;
    let mut pairs = Vec::new();
    if cursor.peek() == Some(b']') {
        cursor.pos += 1;
    } else {
        loop {
            let first = cursor.interval()?;
            cursor.expect(b'~')?;
            let second = cursor.interval()?;
            cursor.expect(b':')?;
            let kind = match cursor.next() {
                Some(b'E') => MatchKind::Equal,
                Some(b'I') => MatchKind::Inverse,
                _ => return Err(cursor.error("expected E or I")),
            };
            pairs.push(MatchedPair::new(first, second, kind));
            match cursor.next() {
                Some(b';') => continue,
                Some(b']') => break,
                _ => return Err(cursor.error("expected ; or ]")),
            }
        }
    }
    if cursor.peek().is_some() {
        return Err(cursor.error("trailing input"));
    }
    Ok(pairs)
}

struct Cursor<'a> {
    input: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.input.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, message: &str) -> CoverError {
        CoverError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn expect(&mut self, want: u8) -> Result<(), CoverError> {
        if self.next() == Some(want) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", char::from(want))))
        }
    }

    fn number(&mut self) -> Result<usize, CoverError> {
        self.skip_ws();
        let start = self.pos;
        while self.input.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected a position"))
    }

    fn interval(&mut self) -> Result<IntervalOcc, CoverError> {
        self.expect(b'(')?;
        let start = self.number()?;
        self.expect(b',')?;
        let end = self.number()?;
        self.expect(b')')?;
        Ok(IntervalOcc::new(start, end))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 4).unwrap()
    }

    fn pair(s1: usize, e1: usize, s2: usize, e2: usize, kind: MatchKind) -> MatchedPair {
        MatchedPair::new(IntervalOcc::new(s1, e1), IntervalOcc::new(s2, e2), kind)
    }

    #[test]
    fn empty_cover_leaves_everything() {
        let r = evaluate_cover(PairCover::new(w("aDad"), vec![], 0)).unwrap();
        assert_eq!(r.uncovered_letters, 4);
        assert_eq!(r.uncovered_fraction(), 1.0);
    }

    #[test]
    fn borel_two_pair_cover() {
        let word = w("CBaaaabc");
        let pairs = vec![pair(0, 2, 6, 8, MatchKind::Inverse), pair(2, 4, 4, 6, MatchKind::Equal)];
        let r = evaluate_cover(PairCover::new(word, pairs, 2)).unwrap();
        assert_eq!(r.uncovered_letters, 0);
    }

    #[test]
    fn hand_count() {
        let r = evaluate_cover(PairCover::new(w("aDad"), vec![pair(0, 1, 2, 3, MatchKind::Equal)], 1)).unwrap();
        assert_eq!(r.uncovered_letters, 2);
        assert_eq!(r.uncovered_ratio(), (2, 4));
        assert_eq!(r.uncovered_fraction(), 0.5);
    }

    #[test]
    fn overlapping_sides_count_once() {
        let r = evaluate_cover(PairCover::new(w("aaaa"), vec![pair(0, 3, 1, 4, MatchKind::Equal)], 1)).unwrap();
        assert_eq!(r.uncovered_letters, 0);
    }

    #[test]
    fn validation_names_the_offending_pair() {
        let word = w("aDad");
        let good = pair(0, 1, 2, 3, MatchKind::Equal);
        let err = evaluate_cover(PairCover::new(word.clone(), vec![good, pair(0, 2, 2, 4, MatchKind::Equal)], 2))
            .unwrap_err();
        assert!(matches!(err, CoverError::InvalidPair { index: 1, defect: PairDefect::FactorsDiffer, .. }));
        let err = evaluate_cover(PairCover::new(word.clone(), vec![good, pair(2, 3, 0, 1, MatchKind::Equal)], 2))
            .unwrap_err();
        assert!(matches!(err, CoverError::DuplicatePair { index: 1, earlier: 0, .. }));
        let err =
            evaluate_cover(PairCover::new(word.clone(), vec![pair(0, 4, 0, 4, MatchKind::Equal)], 1)).unwrap_err();
        assert!(matches!(err, CoverError::InvalidPair { index: 0, defect: PairDefect::Improper(_), .. }));
        let err = evaluate_cover(PairCover::new(word, vec![good], 0)).unwrap_err();
        assert_eq!(err, CoverError::OverBudget { used: 1, budget: 0 });
    }

    #[test]
    fn text_form() {
        let pairs = vec![pair(0, 2, 6, 8, MatchKind::Inverse), pair(2, 4, 4, 6, MatchKind::Equal)];
        let text = format_pairs(&pairs);
        assert_eq!(text, "[(0,2)~(6,8):I; (2,4)~(4,6):E]");
        assert_eq!(parse_pairs(&text).unwrap(), pairs);
        assert_eq!(parse_pairs(" [ ( 0 , 2 ) ~ (6,8) : I ] ").unwrap(), pairs[..1].to_vec());
        assert_eq!(format_pairs(&[]), "[]");
        assert_eq!(parse_pairs("[]").unwrap(), vec![]);
    }

    #[test]
    fn text_form_errors() {
        for bad in [
            "",
            "[",
            "[(0,1)]",
            "[(0,1)~(1,2)]",
            "[(0,1)~(1,2):X]",
            "[(0,1)~(1,2):E",
            "[] x",
            "[(a,1)~(1,2):E]",
            "[(99999999999999999999999,1)~(1,2):E]",
        ] {
            assert!(parse_pairs(bad).is_err(), "{bad:?}");
        }
    }
}
