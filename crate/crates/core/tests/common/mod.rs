//! Independent oracles shared by the integration tests.
//!
//! Nothing here goes through the library's pair enumeration or solvers: pairs
//! are found by comparing letters directly and covers by exhaustive search.

#![allow(dead_code)]

use fglab::word::{Letter, Word};

/// Letter set of one valid pair, as a bitmask over positions (|w| <= 128).
pub fn all_pair_masks(w: &Word) -> Vec<u128> {
    let letters = w.letters();
    let n = letters.len();
    assert!(n <= 128, "oracle handles words up to 128 letters");
    let mut masks = Vec::new();
    for len in 1..n {
        let span: u128 = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
        for s in 0..=n - len {
            for t in s + 1..=n - len {
                let a = &letters[s..s + len];
                let b = &letters[t..t + len];
                let equal = a == b;
                let inverse = a.iter().rev().zip(b).all(|(x, y)| inverse_of(*x) == *y);
                if equal || inverse {
                    masks.push((span << s) | (span << t));
                }
            }
        }
    }
    masks
}

fn inverse_of(l: Letter) -> Letter {
    l.inverse()
}

/// Masks with duplicates and strict subsets of other masks removed.
pub fn antichain(mut masks: Vec<u128>) -> Vec<u128> {
    masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    masks.dedup();
    let mut kept: Vec<u128> = Vec::new();
    for m in masks {
        if !kept.iter().any(|k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept
}

/// Largest number of letters covered by at most `max_pairs` masks,
/// by trying every combination.
pub fn best_coverage(masks: &[u128], max_pairs: usize, full: u32) -> u32 {
    fn go(masks: &[u128], start: usize, left: usize, acc: u128, best: &mut u32, full: u32) {
        *best = (*best).max(acc.count_ones());
        if left == 0 || *best == full {
            return;
        }
        for i in start..masks.len() {
            go(masks, i + 1, left - 1, acc | masks[i], best, full);
            if *best == full {
                return;
            }
        }
    }
    let mut best = 0;
    go(masks, 0, max_pairs, 0, &mut best, full);
    best
}

/// Minimum uncovered letters over all covers by at most `max_pairs` valid pairs.
pub fn oracle_uncovered(w: &Word, max_pairs: usize) -> usize {
    let n = w.len();
    let masks = antichain(all_pair_masks(w));
    n - best_coverage(&masks, max_pairs, n as u32) as usize
}

/// Same as [`oracle_uncovered`] for several budgets at once.
pub fn oracle_uncovered_upto(w: &Word, max_pairs: usize) -> Vec<usize> {
    let n = w.len();
    let masks = antichain(all_pair_masks(w));
    (0..=max_pairs).map(|k| n - best_coverage(&masks, k, n as u32) as usize).collect()
}

/// Reduced words built by repeated stack cancellation from the right end.
pub fn reduce_right_to_left(letters: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for &l in letters.iter().rev() {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    stack.reverse();
    stack
}
