//! Integer ranges and value lists on the command line.
//!
//! `7`, `3..7` (inclusive), `3..=7`, and comma lists of those, e.g. `1,4..6`.

use std::str::FromStr;

use thiserror::Error;

/// Largest number of values a range may expand to.
pub const MAX_RANGE_LEN: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("empty range {0:?}")]
    Empty(String),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error("range {0:?} is too long")]
    TooLong(String),
}

/// Expands a range expression to sorted distinct values.
pub fn parse_range(text: &str) -> Result<Vec<u64>, RangeError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(RangeError::Empty(text.to_string()));
        }
        let (lo, hi) = match part.split_once("..") {
            Some((lo, hi)) => (number(lo)?, number(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = number(part)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(RangeError::Empty(part.to_string()));
        }
        if hi - lo >= MAX_RANGE_LEN || out.len() as u64 + (hi - lo) >= MAX_RANGE_LEN {
            return Err(RangeError::TooLong(text.to_string()));
        }
        out.extend(lo..=hi);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn number(s: &str) -> Result<u64, RangeError> {
    s.trim().parse().map_err(|_| RangeError::BadNumber(s.to_string()))
}

/// Comma-separated values of any parseable type.
pub fn parse_list<T: FromStr>(text: &str) -> Result<Vec<T>, RangeError> {
    text.split(',').map(|s| s.trim().parse().map_err(|_| RangeError::BadNumber(s.to_string()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert_eq!(parse_range("3..7").unwrap(), vec![3, 4, 5, 6, 7]);
        assert_eq!(parse_range("3..=4").unwrap(), vec![3, 4]);
        assert_eq!(parse_range("5, 1..2,2").unwrap(), vec![1, 2, 5]);
        assert_eq!(parse_list::<f64>("0.2,0.1").unwrap(), vec![0.2, 0.1]);
    }

    #[test]
    fn rejections() {
        assert_eq!(parse_range("7..3"), Err(RangeError::Empty("7..3".into())));
        assert!(matches!(parse_range(""), Err(RangeError::Empty(_))));
        assert!(matches!(parse_range("1,,2"), Err(RangeError::Empty(_))));
        assert!(matches!(parse_range("a..3"), Err(RangeError::BadNumber(_))));
        assert!(matches!(parse_range("-1"), Err(RangeError::BadNumber(_))));
        assert!(matches!(parse_range("0..99999999999"), Err(RangeError::TooLong(_))));
        assert!(parse_list::<f64>("0.1,x").is_err());
    }
}
