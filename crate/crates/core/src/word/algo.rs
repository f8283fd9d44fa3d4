//! Algorithms on reduced words: cyclic reduction, primitive roots,
//! commutation, conjugacy, substitution endomorphisms and the bounded
//! square-times-cube search.

use super::{Generator, Letter, Word, WordError};

impl Word {
    /// Splits `self` as `conj⁻¹ · core · conj` with `core` cyclically reduced.
    ///
    /// Returns `(core, conj)`.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let letters = self.letters();
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        let core = Word::from_reduced_unchecked(self.rank(), letters[lo..hi].to_vec());
        let conj = Word::from_reduced_unchecked(self.rank(), letters[hi..].to_vec());
        (core, conj)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() < 2 || !f.cancels(l),
            _ => true,
        }
    }

    /// The word `root` and maximal `k` with `self = root^k`; `root` is not a
    /// proper power, so `⟨root⟩` is the centralizer of `self`.
    pub fn primitive_root(&self) -> Result<(Word, u64), WordError> {
        if self.is_identity() {
            return Err(WordError::IdentityHasNoRoot);
        }
        let (core, conj) = self.cyclic_reduce();
        let period = smallest_period(core.letters());
        let n = core.len();
        let (block_len, k) = if n % period == 0 { (period, n / period) } else { (n, 1) };
        let block = core.factor(0, block_len);
        Ok((block.conjugate(&conj)?, k as u64))
    }

    /// Whether `self` is an `m`-th power, for `m ≥ 1`. The identity is every power.
    pub fn is_power_of(&self, m: u64) -> bool {
        match self.primitive_root() {
            Ok((_, k)) => m != 0 && k % m == 0,
            Err(_) => true,
        }
    }

    pub fn commutes_with(&self, other: &Word) -> Result<bool, WordError> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Some `g` with `self.conjugate(g) == other`, if the two are conjugate.
    pub fn conjugator_to(&self, other: &Word) -> Result<Option<Word>, WordError> {
        self.same_rank(other)?;
        let (core_u, conj_u) = self.cyclic_reduce();
        let (core_v, conj_v) = other.cyclic_reduce();
        if core_u.len() != core_v.len() {
            return Ok(None);
        }
        if core_u.is_identity() {
            return Ok(Some(Word::identity(self.rank())?));
        }
        // core_v is a rotation y·x of core_u = x·y, i.e. conjugate(core_u, x).
        let n = core_u.len();
        let doubled: Vec<Letter> = core_u.letters().iter().chain(core_u.letters()).copied().collect();
        let Some(shift) = (0..n).find(|&s| &doubled[s..s + n] == core_v.letters()) else {
            return Ok(None);
        };
        let x = core_u.factor(0, shift);
        // self = conj_u⁻¹ core_u conj_u, other = conj_v⁻¹ core_v conj_v.
        let g = conj_u.invert().multiply(&x)?.multiply(&conj_v)?;
        debug_assert_eq!(self.conjugate(&g)?, *other);
        Ok(Some(g))
    }

    /// Bounded search for `self = x² · y³`.
    ///
    /// Candidates `x` are tried in shortlex order up to length `max_len`.
    /// `None` only means no witness exists within that bound.
    pub fn square_cube_decompose(&self, max_len: usize) -> Option<SquareCube> {
        for len in 0..=max_len {
            for x in reduced_words_of_length(self.rank(), len) {
                let rest = x.power(-2).multiply(self).ok()?;
                if let Some(y) = cube_root(&rest) {
                    return Some(SquareCube { x, y });
                }
            }
        }
        None
    }
}

fn cube_root(w: &Word) -> Option<Word> {
    match w.primitive_root() {
        Err(_) => Some(w.clone()),
        Ok((root, k)) if k % 3 == 0 => Some(root.power((k / 3) as i64)),
        Ok(_) => None,
    }
}

/// A witness `w = x² · y³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCube {
    pub x: Word,
    pub y: Word,
}

/// Smallest `p` such that `s[i] == s[i + p]` for all valid `i` (KMP border).
pub(crate) fn smallest_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    n - fail[n - 1]
}

/// Every reduced word of exactly `len` letters, in lexicographic letter
/// order (`a < A < b < B < …`).
pub fn reduced_words_of_length(rank: u32, len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> =
        (1..=rank).flat_map(|i| [Letter::new(Generator(i), false), Letter::new(Generator(i), true)]).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    extend_words(&alphabet, len, &mut current, &mut |letters| {
        out.push(Word::from_reduced_unchecked(rank, letters.to_vec()));
    });
    out
}

fn extend_words(alphabet: &[Letter], len: usize, current: &mut Vec<Letter>, emit: &mut dyn FnMut(&[Letter])) {
    if current.len() == len {
        emit(current);
        return;
    }
    for &l in alphabet {
        if current.last().is_some_and(|&p| p.cancels(l)) {
            continue;
        }
        current.push(l);
        extend_words(alphabet, len, current, emit);
        current.pop();
    }
}

/// Every reduced word with at most `max_len` letters, shortlex order.
pub fn reduced_words_up_to(rank: u32, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|len| reduced_words_of_length(rank, len)).collect()
}

/// Substitution `e_i ↦ images[i-1]`, extended to a group homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    domain_rank: u32,
    images: Vec<Word>,
}

impl GeneratorMap {
    pub fn new(domain_rank: u32, images: Vec<Word>) -> Result<Self, WordError> {
        super::check_rank(domain_rank)?;
        if images.len() != domain_rank as usize {
            return Err(WordError::MapArity { expected: domain_rank, got: images.len() });
        }
        if let Some(first) = images.first() {
            for img in &images[1..] {
                first.same_rank(img)?;
            }
        }
        Ok(GeneratorMap { domain_rank, images })
    }

    pub fn identity(rank: u32) -> Result<Self, WordError> {
        let images = (1..=rank as i32).map(|i| Word::from_signed(rank, &[i])).collect::<Result<Vec<_>, _>>()?;
        GeneratorMap::new(rank, images)
    }

    pub fn image_of(&self, gen: Generator) -> &Word {
        &self.images[(gen.index() - 1) as usize]
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.rank() != self.domain_rank {
            return Err(WordError::RankMismatch { left: self.domain_rank, right: w.rank() });
        }
        let target_rank = self.images[0].rank();
        let letters = w.letters().iter().flat_map(|&l| {
            let img = self.image_of(l.generator());
            let seq: Vec<Letter> = if l.is_inverse() {
                img.letters().iter().rev().map(|x| x.inverse()).collect()
            } else {
                img.letters().to_vec()
            };
            seq
        });
        Word::from_letters(target_rank, letters)
    }
}
