//! Reduced words in a free group of finite rank.
//!
//! A [`Word`] always holds the unique reduced representative of a group
//! element: every constructor reduces eagerly, so no unreduced state escapes
//! this module. Each word also carries its rank (the number of free
//! generators of the ambient group) and binary operations refuse to mix
//! ranks.

mod algo;
mod text;

pub use algo::{reduced_words_of_length, reduced_words_up_to, GeneratorMap, SquareCube};
pub use text::ParseWordError;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Smallest rank accepted; the free groups of interest are nonabelian.
pub const MIN_RANK: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("rank {0} is too small, free groups here have at least {MIN_RANK} generators")]
    RankTooSmall(u32),
    #[error("generator e{gen} does not exist in a free group of rank {rank}")]
    GeneratorOutOfRange { gen: u32, rank: u32 },
    #[error("words live in free groups of different rank ({left} vs {right})")]
    RankMismatch { left: u32, right: u32 },
    #[error("the identity has no primitive root")]
    IdentityHasNoRoot,
    #[error("generator map has {got} images but the domain has rank {expected}")]
    MapArity { expected: u32, got: usize },
}

/// A free generator `e_i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A generator or its inverse.
///
/// Ordered by generator first, positive before inverse: `a < A < b < B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    gen: Generator,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    /// `e_index` for positive `signed`, its inverse for negative. Zero is rejected.
    pub fn from_signed(signed: i32) -> Option<Self> {
        let gen = Generator::new(signed.unsigned_abs())?;
        Some(Letter { gen, inverse: signed < 0 })
    }

    pub fn generator(self) -> Generator {
        self.gen
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    /// Dense code `2(i-1) + [inverse]`, used as an alphabet index.
    pub fn code(self) -> u32 {
        2 * (self.gen.0 - 1) + u32::from(self.inverse)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code().cmp(&other.code())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A possibly unreduced letter sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawSequence {
    pub letters: Vec<Letter>,
}

impl RawSequence {
    pub fn new(letters: Vec<Letter>) -> Self {
        RawSequence { letters }
    }

    /// Free reduction with a single left-to-right stack pass.
    pub fn reduce(&self, rank: u32) -> Result<Word, WordError> {
        Word::from_letters(rank, self.letters.iter().copied())
    }
}

/// The reduced representative of an element of the free group of rank `rank`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: u32) -> Result<Self, WordError> {
        check_rank(rank)?;
        Ok(Word { rank, letters: Vec::new() })
    }

    /// Reduces `letters` in the free group of rank `rank`.
    pub fn from_letters<I>(rank: u32, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        check_rank(rank)?;
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            let gen = letter.generator().index();
            if gen > rank {
                return Err(WordError::GeneratorOutOfRange { gen, rank });
            }
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Ok(Word { rank, letters: stack })
    }

    /// Builds a word from signed generator indices (`-2` is `e_2^{-1}`).
    pub fn from_signed(rank: u32, signed: &[i32]) -> Result<Self, WordError> {
        let letters = signed
            .iter()
            .map(|&s| Letter::from_signed(s).ok_or(WordError::GeneratorOutOfRange { gen: 0, rank }))
            .collect::<Result<Vec<_>, _>>()?;
        Word::from_letters(rank, letters)
    }

    /// The word `e_index^exponent`.
    pub fn generator_power(rank: u32, index: u32, exponent: i64) -> Result<Self, WordError> {
        let gen = Generator::new(index).ok_or(WordError::GeneratorOutOfRange { gen: 0, rank })?;
        let letter = Letter::new(gen, exponent < 0);
        Word::from_letters(rank, std::iter::repeat_n(letter, exponent.unsigned_abs() as usize))
    }

    /// Trusted constructor for sequences already known to be reduced.
    pub(crate) fn from_reduced_unchecked(rank: u32, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        Word { rank, letters }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// The subword on the half-open letter range `start..end`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word::from_reduced_unchecked(self.rank, self.letters[start..end].to_vec())
    }

    /// Same element viewed in a free group of larger (or equal) rank.
    pub fn with_rank(&self, rank: u32) -> Result<Word, WordError> {
        Word::from_letters(rank, self.letters.iter().copied())
    }

    fn same_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(WordError::RankMismatch { left: self.rank, right: other.rank })
        }
    }

    /// The reduced product `self · other`.
    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.same_rank(other)?;
        // Only the seam can cancel: strip the longest suffix of `self` that is
        // the inverse of a prefix of `other`.
        let mut keep = self.letters.len();
        let mut skip = 0;
        while keep > 0 && skip < other.letters.len() && self.letters[keep - 1].cancels(other.letters[skip]) {
            keep -= 1;
            skip += 1;
        }
        let mut letters = Vec::with_capacity(keep + other.letters.len() - skip);
        letters.extend_from_slice(&self.letters[..keep]);
        letters.extend_from_slice(&other.letters[skip..]);
        Ok(Word::from_reduced_unchecked(self.rank, letters))
    }

    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word::from_reduced_unchecked(self.rank, letters)
    }

    /// `self^exponent`; negative exponents go through the inverse.
    pub fn power(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.invert() } else { self.clone() };
        let times = exponent.unsigned_abs() as usize;
        if times == 0 || base.is_identity() {
            return Word::from_reduced_unchecked(self.rank, Vec::new());
        }
        // base = g⁻¹ core g with core cyclically reduced, so base^k = g⁻¹ core^k g
        // with no further cancellation.
        let (core, conj) = base.cyclic_reduce();
        let conj_inv = conj.invert();
        let mut letters = Vec::with_capacity(2 * conj.len() + times * core.len());
        letters.extend_from_slice(&conj_inv.letters);
        for _ in 0..times {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend_from_slice(&conj.letters);
        Word::from_reduced_unchecked(self.rank, letters)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Word) -> Result<Word, WordError> {
        g.invert().multiply(self)?.multiply(g)
    }

    /// Signed occurrence count of each generator, indexed by `i - 1`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank as usize];
        for l in &self.letters {
            sums[(l.generator().index() - 1) as usize] += i64::from(l.sign());
        }
        sums
    }
}

fn check_rank(rank: u32) -> Result<(), WordError> {
    if rank < MIN_RANK {
        Err(WordError::RankTooSmall(rank))
    } else {
        Ok(())
    }
}

/// Panics on rank mismatch; use [`Word::multiply`] for the checked form.
impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs).expect("multiplying words of different rank")
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex: by length, then letterwise.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}
