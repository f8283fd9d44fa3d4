//! Deterministic word families and seeded random sampling.
//!
//! Every family is a stream `n ↦ Word` that is a pure function of its
//! [`FamilySpec`] and the index `n`. Random draws come from a ChaCha stream
//! keyed by `(seed, index)`, so any element can be produced on its own and in
//! any order.
//!
//! Text form (one line, `key=value` parameters, any order):
//!
//! ```text
//! Y k=2                      e1^k (e4^-1 e1^k) … (e4^-(n-1) e1^k) e4^(n(n-1)/2)
//! c k=1                      the recursively built c_n
//! cyclic w=ab                w^n
//! powers m=3 seed=7          (random reduced word of length n)^m
//! borel m=4 g=bc             conjugate(e1^m, g); m and g default to varying with n
//! commprod m=3 seed=7        product of m random commutators of length-n words
//! random seed=1              random reduced word of length n
//! closure glen=2 seed=3 of Y k=2
//! ```
//!
//! `r=` sets the rank. Omitted `m`, `len`, `glen` follow the index `n`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::word::{Generator, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parse error: {0}")]
    Parse(String),
    #[error("parameter {name} must be at least {min}, got {value}")]
    OutOfRange { name: &'static str, min: i64, value: i64 },
    #[error("index {index} is outside the family domain (n >= {min})")]
    IndexOutOfDomain { index: u64, min: u64 },
    #[error("the base word of a cyclic family must not be the identity")]
    IdentityBase,
    #[error("borel exponent must be nonzero")]
    ZeroExponent,
    #[error("family needs rank at least {needed}, got {rank}")]
    RankTooSmall { needed: u32, rank: u32 },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Deterministic RNG for element `index` of a stream seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform reduced word of exactly `len` letters over generators
/// `first_gen..=rank`.
pub fn sample_reduced<R: Rng>(rng: &mut R, rank: u32, first_gen: u32, len: usize) -> Word {
    let gens = rank + 1 - first_gen;
    let choices = 2 * gens;
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    for _ in 0..len {
        let letter = match letters.last() {
            None => code_to_letter(rng.gen_range(0..choices), first_gen),
            Some(&prev) => {
                // Skip the one choice that would cancel the previous letter.
                let forbidden = letter_code(prev.inverse(), first_gen);
                let mut code = rng.gen_range(0..choices - 1);
                if code >= forbidden {
                    code += 1;
                }
                code_to_letter(code, first_gen)
            }
        };
        letters.push(letter);
    }
    Word::from_reduced_unchecked(rank, letters)
}

fn code_to_letter(code: u32, first_gen: u32) -> Letter {
    Letter::new(Generator::new(first_gen + code / 2).expect("positive index"), code % 2 == 1)
}

fn letter_code(l: Letter, first_gen: u32) -> u32 {
    2 * (l.generator().index() - first_gen) + u32::from(l.is_inverse())
}

/// `random_reduced(len, seed, index)`: uniform reduced word of length `len`.
pub fn random_reduced(rank: u32, len: usize, seed: u64, index: u64) -> Word {
    sample_reduced(&mut stream_rng(seed, index), rank, 1, len)
}

/// `w^n` for a nontrivial base.
pub fn gen_cyclic(base: &Word, n: u64) -> Result<Word, FamilyError> {
    if base.is_identity() {
        return Err(FamilyError::IdentityBase);
    }
    Ok(base.power(n as i64))
}

/// `conjugate(e1^m, g) = g⁻¹ e1^m g`.
pub fn gen_borel_conjugate(m: i64, g: &Word) -> Result<Word, FamilyError> {
    if m == 0 {
        return Err(FamilyError::ZeroExponent);
    }
    let a_m = Word::generator_power(g.rank(), 1, m)?;
    Ok(a_m.conjugate(g)?)
}

fn need_rank(rank: u32, needed: u32) -> Result<(), FamilyError> {
    if rank < needed {
        Err(FamilyError::RankTooSmall { needed, rank })
    } else {
        Ok(())
    }
}

fn positive(name: &'static str, value: u64) -> Result<(), FamilyError> {
    if value == 0 {
        Err(FamilyError::OutOfRange { name, min: 1, value: 0 })
    } else {
        Ok(())
    }
}

/// `e1^k (e4⁻¹ e1^k)(e4⁻² e1^k)…(e4^-(n-1) e1^k) e4^(n(n-1)/2)`.
pub fn gen_y(rank: u32, k: u64, n: u64) -> Result<Word, FamilyError> {
    need_rank(rank, 4)?;
    positive("k", k)?;
    positive("n", n)?;
    Ok(Word::from_letters(rank, y_letters(k, n))?)
}

fn y_letters(k: u64, n: u64) -> Vec<Letter> {
    let a = Letter::from_signed(1).unwrap();
    let d = Letter::from_signed(4).unwrap();
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat_n(a, k as usize));
    for i in 1..n {
        letters.extend(std::iter::repeat_n(d.inverse(), i as usize));
        letters.extend(std::iter::repeat_n(a, k as usize));
    }
    letters.extend(std::iter::repeat_n(d, (n * (n - 1) / 2) as usize));
    letters
}

/// `c_0 = e2`, `c_i = c_{i-1} · conjugate(e1^k, h_{i-1})` with
/// `h_i = e4^(i(i+1)/2) · e3`.
pub fn gen_c(rank: u32, k: u64, n: u64) -> Result<Word, FamilyError> {
    need_rank(rank, 4)?;
    positive("k", k)?;
    let mut c = Word::from_signed(rank, &[2])?;
    let a_k = Word::generator_power(rank, 1, k as i64)?;
    let e3 = Word::from_signed(rank, &[3])?;
    for i in 1..=n {
        let t = (i - 1) * i / 2;
        let h = &Word::generator_power(rank, 4, t as i64)? * &e3;
        c = &c * &a_k.conjugate(&h)?;
    }
    Ok(c)
}

/// `e2 e3⁻¹ · Y(k, n) · e3`, written out directly.
pub fn closed_form_c(rank: u32, k: u64, n: u64) -> Result<Word, FamilyError> {
    need_rank(rank, 4)?;
    positive("k", k)?;
    positive("n", n)?;
    let mut letters = vec![Letter::from_signed(2).unwrap(), Letter::from_signed(-3).unwrap()];
    letters.extend(y_letters(k, n));
    letters.push(Letter::from_signed(3).unwrap());
    Ok(Word::from_letters(rank, letters)?)
}

/// `[u, v] = u⁻¹ v⁻¹ u v`.
pub fn commutator(u: &Word, v: &Word) -> Result<Word, WordError> {
    u.invert().multiply(&v.invert())?.multiply(u)?.multiply(v)
}

/// Product of `m` commutators of independent uniform words of length `len`,
/// drawn from the `(seed, index)` stream in order `u_1, v_1, u_2, …`.
pub fn gen_commutator_product(rank: u32, m: u64, len: usize, seed: u64, index: u64) -> Result<Word, FamilyError> {
    let mut rng = stream_rng(seed, index);
    let mut acc = Word::identity(rank)?;
    for _ in 0..m {
        let u = sample_reduced(&mut rng, rank, 1, len);
        let v = sample_reduced(&mut rng, rank, 1, len);
        acc = acc.multiply(&commutator(&u, &v)?)?;
    }
    Ok(acc)
}

/// Where a conjugator or base exponent comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugator {
    Fixed(Word),
    /// Uniform reduced word of the given length (or of length `n` when
    /// `None`) avoiding `e1^{±1}`, so `g⁻¹ e1^m g` is already reduced.
    Random {
        len: Option<u64>,
        seed: u64,
    },
}

impl Conjugator {
    fn draw(&self, rank: u32, n: u64, salt: u64) -> Word {
        match self {
            Conjugator::Fixed(g) => g.clone(),
            Conjugator::Random { len, seed } => {
                let len = len.unwrap_or(n) as usize;
                let mut rng = stream_rng(seed ^ salt, n);
                sample_reduced(&mut rng, rank, 2, len)
            }
        }
    }
}

const CLOSURE_SALT: u64 = 0x636c_6f73_7572_6521;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    CyclicPowers { base: Word },
    MthPowers { m: u64, seed: u64 },
    BorelConjugate { m: Option<i64>, conjugator: Conjugator },
    CommutatorProduct { m: Option<u64>, len: Option<u64>, seed: u64 },
    Y { k: u64 },
    CFamily { k: u64 },
    Random { seed: u64 },
    ConjugationClosure { inner: Box<FamilySpec>, conjugator: Conjugator },
}

/// A parametrized word family together with the rank it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub rank: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        let rank = default_rank(&kind);
        FamilySpec { kind, rank }
    }

    pub fn with_rank(mut self, rank: u32) -> Self {
        self.rank = rank;
        self
    }

    /// Replaces every seed in the family. Returns `false`, leaving the family
    /// unchanged, when the family has no random part.
    pub fn with_seed(&mut self, new_seed: u64) -> bool {
        match &mut self.kind {
            FamilyKind::MthPowers { seed, .. }
            | FamilyKind::CommutatorProduct { seed, .. }
            | FamilyKind::Random { seed }
            | FamilyKind::BorelConjugate { conjugator: Conjugator::Random { seed, .. }, .. } => {
                *seed = new_seed;
                true
            }
            FamilyKind::ConjugationClosure { inner, conjugator } => {
                let inner_hit = inner.with_seed(new_seed);
                if let Conjugator::Random { seed, .. } = conjugator {
                    *seed = new_seed;
                    true
                } else {
                    inner_hit
                }
            }
            _ => false,
        }
    }

    /// Short family name as used in the CSV `family` column.
    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::CyclicPowers { .. } => "cyclic",
            FamilyKind::MthPowers { .. } => "powers",
            FamilyKind::BorelConjugate { .. } => "borel",
            FamilyKind::CommutatorProduct { .. } => "commprod",
            FamilyKind::Y { .. } => "Y",
            FamilyKind::CFamily { .. } => "c",
            FamilyKind::Random { .. } => "random",
            FamilyKind::ConjugationClosure { .. } => "closure",
        }
    }

    /// Parameter text, i.e. the canonical form without the family name.
    pub fn params(&self) -> String {
        let full = self.to_string();
        match full.split_once(' ') {
            Some((_, rest)) => rest.to_string(),
            None => String::new(),
        }
    }

    /// Smallest valid index.
    pub fn min_index(&self) -> u64 {
        match &self.kind {
            FamilyKind::Y { .. } => 1,
            FamilyKind::BorelConjugate { m: None, .. } => 1,
            FamilyKind::ConjugationClosure { inner, .. } => inner.min_index(),
            _ => 0,
        }
    }

    /// The `n`-th word of the stream.
    pub fn word(&self, n: u64) -> Result<Word, FamilyError> {
        let min = self.min_index();
        if n < min {
            return Err(FamilyError::IndexOutOfDomain { index: n, min });
        }
        let rank = self.rank;
        match &self.kind {
            FamilyKind::CyclicPowers { base } => gen_cyclic(&base.with_rank(rank)?, n),
            FamilyKind::MthPowers { m, seed } => Ok(random_reduced(rank, n as usize, *seed, n).power(*m as i64)),
            FamilyKind::BorelConjugate { m, conjugator } => {
                let g = conjugator.draw(rank, n, 0).with_rank(rank)?;
                gen_borel_conjugate(m.unwrap_or(n as i64), &g)
            }
            FamilyKind::CommutatorProduct { m, len, seed } => {
                gen_commutator_product(rank, m.unwrap_or(n), len.unwrap_or(n) as usize, *seed, n)
            }
            FamilyKind::Y { k } => gen_y(rank, *k, n),
            FamilyKind::CFamily { k } => gen_c(rank, *k, n),
            FamilyKind::Random { seed } => Ok(random_reduced(rank, n as usize, *seed, n)),
            FamilyKind::ConjugationClosure { inner, conjugator } => {
                let x = inner.word(n)?.with_rank(rank)?;
                let g = conjugator.draw(rank, n, CLOSURE_SALT).with_rank(rank)?;
                Ok(x.conjugate(&g)?)
            }
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let needed = match &self.kind {
            FamilyKind::Y { .. } | FamilyKind::CFamily { .. } => 4,
            FamilyKind::CyclicPowers { base } => base.rank().min(highest_generator(base)).max(2),
            FamilyKind::BorelConjugate { conjugator, .. } => conjugator_rank(conjugator).max(2),
            FamilyKind::ConjugationClosure { inner, conjugator } => {
                inner.validate()?;
                inner.rank.max(conjugator_rank(conjugator))
            }
            _ => 2,
        };
        need_rank(self.rank, needed)?;
        match &self.kind {
            FamilyKind::Y { k } | FamilyKind::CFamily { k } => positive("k", *k),
            FamilyKind::MthPowers { m, .. } => positive("m", *m),
            FamilyKind::CyclicPowers { base } if base.is_identity() => Err(FamilyError::IdentityBase),
            FamilyKind::BorelConjugate { m: Some(0), .. } => Err(FamilyError::ZeroExponent),
            _ => Ok(()),
        }
    }
}

fn highest_generator(w: &Word) -> u32 {
    w.letters().iter().map(|l| l.generator().index()).max().unwrap_or(0)
}

fn conjugator_rank(c: &Conjugator) -> u32 {
    match c {
        Conjugator::Fixed(g) => highest_generator(g),
        Conjugator::Random { .. } => 2,
    }
}

fn default_rank(kind: &FamilyKind) -> u32 {
    match kind {
        FamilyKind::Y { .. } | FamilyKind::CFamily { .. } | FamilyKind::BorelConjugate { .. } => 4,
        FamilyKind::CyclicPowers { base } => highest_generator(base).max(2),
        FamilyKind::ConjugationClosure { inner, conjugator } => inner.rank.max(conjugator_rank(conjugator)),
        _ => 2,
    }
}

impl fmt::Display for Conjugator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjugator::Fixed(g) => write!(f, "g={g}"),
            Conjugator::Random { len: Some(len), seed } => write!(f, "glen={len} seed={seed}"),
            Conjugator::Random { len: None, seed } => write!(f, "seed={seed}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match &self.kind {
            FamilyKind::CyclicPowers { base } => write!(f, " w={base}")?,
            FamilyKind::MthPowers { m, seed } => write!(f, " m={m} seed={seed}")?,
            FamilyKind::BorelConjugate { m, conjugator } => {
                if let Some(m) = m {
                    write!(f, " m={m}")?;
                }
                write!(f, " {conjugator}")?;
            }
            FamilyKind::CommutatorProduct { m, len, seed } => {
                if let Some(m) = m {
                    write!(f, " m={m}")?;
                }
                if let Some(len) = len {
                    write!(f, " len={len}")?;
                }
                write!(f, " seed={seed}")?;
            }
            FamilyKind::Y { k } | FamilyKind::CFamily { k } => write!(f, " k={k}")?,
            FamilyKind::Random { seed } => write!(f, " seed={seed}")?,
            FamilyKind::ConjugationClosure { inner, conjugator } => {
                write!(f, " {conjugator}")?;
                if self.rank != default_rank(&self.kind) {
                    write!(f, " r={}", self.rank)?;
                }
                return write!(f, " of {inner}");
            }
        }
        if self.rank != default_rank(&self.kind) {
            write!(f, " r={}", self.rank)?;
        }
        Ok(())
    }
}

struct Params<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(tokens: &[&'a str]) -> Result<Self, FamilyError> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for tok in tokens {
            let (k, v) =
                tok.split_once('=').ok_or_else(|| FamilyError::Parse(format!("expected key=value, got {tok:?}")))?;
            if pairs.iter().any(|(seen, _)| *seen == k) {
                return Err(FamilyError::Parse(format!("duplicate parameter {k:?}")));
            }
            pairs.push((k, v));
        }
        Ok(Params { pairs })
    }

    fn take(&mut self, key: &str) -> Option<&'a str> {
        let pos = self.pairs.iter().position(|(k, _)| *k == key)?;
        Some(self.pairs.remove(pos).1)
    }

    fn number<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, FamilyError> {
        self.take(key)
            .map(|v| v.parse::<T>().map_err(|_| FamilyError::Parse(format!("bad value for {key}: {v:?}"))))
            .transpose()
    }

    fn required<T: FromStr>(&mut self, key: &str) -> Result<T, FamilyError> {
        self.number(key)?.ok_or_else(|| FamilyError::Parse(format!("missing parameter {key}")))
    }

    fn word(&mut self, key: &str) -> Result<Option<Word>, FamilyError> {
        self.take(key)
            .map(|v| v.parse::<Word>().map_err(|e| FamilyError::Parse(format!("bad word for {key}: {e}"))))
            .transpose()
    }

    fn conjugator(&mut self, seed: u64) -> Result<Conjugator, FamilyError> {
        match self.word("g")? {
            Some(g) => Ok(Conjugator::Fixed(g)),
            None => Ok(Conjugator::Random { len: self.number("glen")?, seed }),
        }
    }

    fn finish(self) -> Result<(), FamilyError> {
        match self.pairs.first() {
            Some((k, _)) => Err(FamilyError::Parse(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, inner) = match s.split_once(" of ") {
            Some((head, inner)) => (head, Some(inner)),
            None => (s, None),
        };
        let tokens: Vec<&str> = head.split_whitespace().collect();
        let (name, rest) = tokens.split_first().ok_or_else(|| FamilyError::Parse("empty family".into()))?;
        if inner.is_some() && *name != "closure" {
            return Err(FamilyError::Parse(format!("only closure takes an inner family, not {name:?}")));
        }
        let mut p = Params::parse(rest)?;
        let rank: Option<u32> = p.number("r")?;
        let seed: u64 = p.number("seed")?.unwrap_or(0);
        let kind = match *name {
            "cyclic" => FamilyKind::CyclicPowers {
                base: p.word("w")?.ok_or_else(|| FamilyError::Parse("missing parameter w".into()))?,
            },
            "powers" => FamilyKind::MthPowers { m: p.required("m")?, seed },
            "borel" => FamilyKind::BorelConjugate { m: p.number("m")?, conjugator: p.conjugator(seed)? },
            "commprod" => FamilyKind::CommutatorProduct { m: p.number("m")?, len: p.number("len")?, seed },
            "Y" => FamilyKind::Y { k: p.required("k")? },
            "c" => FamilyKind::CFamily { k: p.required("k")? },
            "random" => FamilyKind::Random { seed },
            "closure" => {
                let inner = inner.ok_or_else(|| FamilyError::Parse("closure needs `of <family>`".into()))?;
                FamilyKind::ConjugationClosure { inner: Box::new(inner.parse()?), conjugator: p.conjugator(seed)? }
            }
            other => return Err(FamilyError::Parse(format!("unknown family {other:?}"))),
        };
        p.finish()?;
        let mut spec = FamilySpec::new(kind);
        if let Some(rank) = rank {
            spec.rank = rank;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w4(s: &str) -> Word {
        Word::parse(s, 4).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(gen_cyclic(&w4("a"), 3).unwrap(), w4("aaa"));
        assert_eq!(gen_cyclic(&w4("ab"), 2).unwrap(), w4("abab"));
        assert_eq!(gen_cyclic(&w4("Bab"), 3).unwrap(), w4("Baaab"));
        assert_eq!(gen_cyclic(&w4("1"), 3), Err(FamilyError::IdentityBase));
    }

    #[test]
    fn borel_examples() {
        assert_eq!(gen_borel_conjugate(4, &w4("bc")).unwrap(), w4("CBaaaabc"));
        assert_eq!(gen_borel_conjugate(1, &w4("1")).unwrap(), w4("a"));
        assert_eq!(gen_borel_conjugate(-2, &w4("b")).unwrap(), w4("BAAb"));
        assert_eq!(gen_borel_conjugate(0, &w4("b")), Err(FamilyError::ZeroExponent));
    }

    #[test]
    fn y_examples() {
        assert_eq!(gen_y(4, 1, 1).unwrap(), w4("a"));
        assert_eq!(gen_y(4, 1, 2).unwrap(), w4("aDad"));
        let y = gen_y(4, 2, 3).unwrap();
        assert_eq!(y, w4("aaDaaDDaaddd"));
        assert_eq!(y.len(), 12);
        assert!(gen_y(3, 1, 1).is_err());
        assert!(gen_y(4, 0, 1).is_err());
    }

    #[test]
    fn c_examples() {
        for k in 1..4 {
            assert_eq!(gen_c(4, k, 0).unwrap(), w4("b"));
        }
        assert_eq!(gen_c(4, 1, 1).unwrap(), w4("bCac"));
        assert_eq!(gen_c(4, 1, 2).unwrap(), w4("bCaDadc"));
        assert_eq!(closed_form_c(4, 1, 1).unwrap(), w4("bCac"));
        assert_eq!(closed_form_c(4, 1, 2).unwrap(), w4("bCaDadc"));
    }

    #[test]
    fn commutator_examples() {
        let rank = 2;
        assert!(gen_commutator_product(rank, 0, 3, 1, 0).unwrap().is_identity());
        let a = Word::parse("a", 2).unwrap();
        let b = Word::parse("b", 2).unwrap();
        assert_eq!(commutator(&a, &b).unwrap().to_string(), "ABab");
        for index in 0..20 {
            let w = gen_commutator_product(3, 3, 4, 9, index).unwrap();
            assert!(w.exponent_sums().iter().all(|&s| s == 0), "{w}");
        }
    }

    #[test]
    fn closure_examples() {
        let y = gen_y(4, 1, 2).unwrap();
        assert_eq!(y.conjugate(&w4("c")).unwrap(), w4("CaDadc"));
        let spec: FamilySpec = "closure g=c of Y k=1".parse().unwrap();
        assert_eq!(spec.word(2).unwrap(), w4("CaDadc"));
        let spec: FamilySpec = "closure g=1 of Y k=1".parse().unwrap();
        assert_eq!(spec.word(2).unwrap(), w4("aDad"));
        let spec: FamilySpec = "closure g=b of cyclic w=a".parse().unwrap();
        assert_eq!(spec.word(1).unwrap().to_string(), "Bab");
    }

    #[test]
    fn random_reduced_is_reduced_exact_and_deterministic() {
        assert!(random_reduced(3, 0, 5, 5).is_identity());
        for index in 0..50 {
            let w = random_reduced(3, 40, 11, index);
            assert_eq!(w.len(), 40);
            assert_eq!(Word::from_letters(3, w.letters().iter().copied()).unwrap(), w);
            assert_eq!(random_reduced(3, 40, 11, index), w);
        }
        assert_ne!(random_reduced(3, 40, 11, 0), random_reduced(3, 40, 11, 1));
        assert_ne!(random_reduced(3, 40, 11, 0), random_reduced(3, 40, 12, 0));
    }

    #[test]
    fn random_reduced_covers_every_letter_roughly_uniformly() {
        let mut counts = [0usize; 4];
        for index in 0..2000 {
            let w = random_reduced(2, 1, 3, index);
            counts[w.letters()[0].code() as usize] += 1;
        }
        assert!(counts.iter().all(|&c| (400..600).contains(&c)), "{counts:?}");
    }

    #[test]
    fn spec_text_round_trips() {
        for text in [
            "Y k=2",
            "c k=1",
            "borel m=4 g=bc",
            "borel glen=3 seed=5",
            "borel m=3 seed=0",
            "commprod m=3 seed=7",
            "commprod len=2 seed=1",
            "cyclic w=ab",
            "powers m=2 seed=3",
            "random seed=9 r=3",
            "closure glen=2 seed=3 of Y k=2",
            "closure g=c of Y k=1",
            "Y k=1 r=6",
        ] {
            let spec: FamilySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        }
    }

    #[test]
    fn spec_parameter_order_is_free() {
        let a: FamilySpec = "borel g=bc m=4".parse().unwrap();
        assert_eq!(a.to_string(), "borel m=4 g=bc");
        assert_eq!(a.name(), "borel");
        assert_eq!(a.params(), "m=4 g=bc");
    }

    #[test]
    fn spec_parse_errors() {
        for bad in [
            "",
            "Y",
            "Y k=0",
            "Y k=x",
            "Y k=1 k=2",
            "Y k=1 z=2",
            "Y k=1 r=3",
            "zeta k=1",
            "cyclic w=1",
            "borel m=0",
            "Y k=1 of c k=1",
            "closure seed=1",
            "cyclic w=c r=2",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn family_streams() {
        let y: FamilySpec = "Y k=2".parse().unwrap();
        assert_eq!(y.word(3).unwrap(), w4("aaDaaDDaaddd"));
        assert!(matches!(y.word(0), Err(FamilyError::IndexOutOfDomain { .. })));
        let borel: FamilySpec = "borel g=bc".parse().unwrap();
        assert_eq!(borel.word(4).unwrap(), w4("CBaaaabc"));
        let borel: FamilySpec = "borel m=4 seed=2".parse().unwrap();
        let w = borel.word(3).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w.cyclic_reduce().0, w4("aaaa"));
        let cyc: FamilySpec = "cyclic w=ab".parse().unwrap();
        assert_eq!(cyc.word(0).unwrap().to_string(), "1");
        assert_eq!(cyc.word(3).unwrap().to_string(), "ababab");
    }

    #[test]
    fn seed_override() {
        let mut spec: FamilySpec = "closure glen=2 seed=3 of powers m=2 seed=4".parse().unwrap();
        assert!(spec.with_seed(11));
        assert_eq!(spec.to_string(), "closure glen=2 seed=11 of powers m=2 seed=11");
        let mut y: FamilySpec = "Y k=2".parse().unwrap();
        assert!(!y.with_seed(11));
        assert_eq!(y.to_string(), "Y k=2");
        let mut fixed: FamilySpec = "borel g=bc".parse().unwrap();
        assert!(!fixed.with_seed(1));
    }
}
