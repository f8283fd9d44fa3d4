//! Text forms of words.
//!
//! Compact form writes `e_1..e_26` as `a..z` and their inverses as `A..Z`
//! (`CBaaaabc`). Verbose form uses whitespace-separated tokens `e7` / `E7`
//! and is the only option for rank above 26. The identity prints as `1`.
//! The parser accepts both forms, freely mixed, plus whitespace and `1`
//! tokens, and reduces what it reads.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Generator, Letter, RawSequence, Word, WordError};

/// Largest rank printed in compact form.
pub const COMPACT_MAX_RANK: u32 = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("unexpected character {found:?} at byte {offset}")]
    BadChar { offset: usize, found: char },
    #[error("malformed generator token {token:?}")]
    BadToken { token: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

impl RawSequence {
    /// Reads letters without reducing them.
    pub fn parse(input: &str) -> Result<RawSequence, ParseWordError> {
        let mut letters = Vec::new();
        let bytes = input.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' | b'1' => i += 1,
                b'e' | b'E' if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) => {
                    let start = i;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let token = &input[start..i];
                    let index = token[1..]
                        .parse::<u32>()
                        .ok()
                        .and_then(Generator::new)
                        .ok_or_else(|| ParseWordError::BadToken { token: token.to_string() })?;
                    letters.push(Letter::new(index, c == b'E'));
                }
                b'a'..=b'z' => {
                    letters.push(Letter::new(Generator(u32::from(c - b'a') + 1), false));
                    i += 1;
                }
                b'A'..=b'Z' => {
                    letters.push(Letter::new(Generator(u32::from(c - b'A') + 1), true));
                    i += 1;
                }
                _ => {
                    let found = input[i..].chars().next().unwrap_or('\u{fffd}');
                    return Err(ParseWordError::BadChar { offset: i, found });
                }
            }
        }
        Ok(RawSequence { letters })
    }

    /// Highest generator index mentioned, 0 for the empty sequence.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator().index()).max().unwrap_or(0)
    }
}

impl Word {
    /// Parses and reduces `input` in the free group of rank `rank`.
    pub fn parse(input: &str, rank: u32) -> Result<Word, ParseWordError> {
        Ok(RawSequence::parse(input)?.reduce(rank)?)
    }

    /// Verbose rendering (`e1 E2`), regardless of rank.
    pub fn to_verbose_string(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        let tokens: Vec<String> = self
            .letters()
            .iter()
            .map(|l| format!("{}{}", if l.is_inverse() { 'E' } else { 'e' }, l.generator().index()))
            .collect();
        tokens.join(" ")
    }
}

/// Parses with rank `max(2, highest generator mentioned)`.
impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let raw = RawSequence::parse(s)?;
        let rank = raw.max_generator().max(super::MIN_RANK);
        Ok(raw.reduce(rank)?)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let index = self.generator().index();
        if index <= COMPACT_MAX_RANK {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", char::from(base + (index - 1) as u8))
        } else {
            write!(f, "{}{}", if self.is_inverse() { 'E' } else { 'e' }, index)
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() > COMPACT_MAX_RANK {
            return f.write_str(&self.to_verbose_string());
        }
        if self.is_identity() {
            return f.write_str("1");
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
