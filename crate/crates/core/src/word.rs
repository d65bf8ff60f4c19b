//! Freely reduced words in a free group of finite rank.
//!
//! A [`Word`] always holds its reduced form together with the rank of the
//! ambient free group. Words of different ranks never mix implicitly; use
//! [`Word::embed`] to widen a word into a larger free group.

use std::fmt;
use std::num::NonZeroI32;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// 1-based index of a basis element `f_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(u32);

impl GeneratorId {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(GeneratorId(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A generator or its inverse, packed as a signed index (`+k` is `f_k`,
/// `-k` is `f_k^-1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(NonZeroI32);

impl Letter {
    pub fn new(gen: GeneratorId, positive: bool) -> Self {
        let k = gen.0 as i32;
        Letter(NonZeroI32::new(if positive { k } else { -k }).unwrap())
    }

    pub fn pos(index: u32) -> Self {
        Letter::new(
            GeneratorId::new(index).expect("generator index is 1-based"),
            true,
        )
    }

    pub fn neg(index: u32) -> Self {
        Letter::new(
            GeneratorId::new(index).expect("generator index is 1-based"),
            false,
        )
    }

    /// Decodes the JSON interchange form.
    pub fn from_signed(value: i64) -> Result<Self> {
        i32::try_from(value)
            .ok()
            .and_then(NonZeroI32::new)
            .filter(|v| v.get() != i32::MIN)
            .map(Letter)
            .ok_or(Error::BadLetter(value))
    }

    pub fn signed(self) -> i32 {
        self.0.get()
    }

    pub fn gen(self) -> GeneratorId {
        GeneratorId(self.0.get().unsigned_abs())
    }

    pub fn index(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "f{}", self.index())
        } else {
            write!(f, "f{}^-1", self.index())
        }
    }
}

/// Pushes `letter` onto a reduced stack, cancelling against the top.
#[inline]
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

/// An element of the free group `F_rank`, stored in reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    rank: u32,
}

impl Word {
    pub fn identity(rank: u32) -> Self {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    /// The basis element `f_index` of `F_rank`.
    pub fn generator(index: u32, rank: u32) -> Result<Self> {
        Word::reduce([Letter::from_signed(index as i64)?], rank)
    }

    /// Freely reduces an arbitrary letter sequence in one stack pass.
    pub fn reduce<I>(raw: I, rank: u32) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let raw = raw.into_iter();
        let mut letters = Vec::with_capacity(raw.size_hint().0);
        for letter in raw {
            if letter.index() > rank {
                return Err(Error::RankViolation {
                    index: letter.index(),
                    rank,
                });
            }
            push_reduced(&mut letters, letter);
        }
        Ok(Word { letters, rank })
    }

    /// Builds a word from its JSON form (nonzero signed integers).
    pub fn from_signed(values: &[i64], rank: u32) -> Result<Self> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(letters, rank)
    }

    /// Wraps letters already known to be reduced and within `rank`.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>, rank: u32) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        debug_assert!(letters.iter().all(|l| l.index() <= rank));
        Word { letters, rank }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        // Only a common suffix/prefix can cancel between two reduced words.
        let overlap = self
            .letters
            .iter()
            .rev()
            .zip(&other.letters)
            .take_while(|(a, b)| **a == b.inverse())
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * overlap);
        letters.extend_from_slice(&self.letters[..self.len() - overlap]);
        letters.extend_from_slice(&other.letters[overlap..]);
        Word {
            letters,
            rank: self.rank,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            rank: self.rank,
        }
    }

    /// `[self, other] = self·other·self^-1·other^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self
            .mul_unchecked(other)
            .mul_unchecked(&self.inverse())
            .mul_unchecked(&other.inverse()))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Largest generator index occurring in the word, or 0 for the identity.
    /// The word lies in `F_m = gp(f_1, ..., f_m)` iff this is at most `m`.
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Views the word inside a free group of larger (or equal) rank.
    pub fn embed(&self, new_rank: u32) -> Result<Word> {
        if new_rank < self.rank {
            return Err(Error::Narrowing {
                from: self.rank,
                to: new_rank,
            });
        }
        Ok(Word {
            letters: self.letters.clone(),
            rank: new_rank,
        })
    }

    /// Reinterprets the word in a possibly smaller rank, as long as every
    /// letter still fits.
    pub fn restrict(&self, new_rank: u32) -> Result<Word> {
        if new_rank == 0 {
            return Err(Error::ZeroRank);
        }
        match self.max_generator() {
            m if m > new_rank => Err(Error::RankViolation {
                index: m,
                rank: new_rank,
            }),
            _ => Ok(Word {
                letters: self.letters.clone(),
                rank: new_rank,
            }),
        }
    }

    /// A uniformly random reduced word of exactly `length` letters.
    pub fn random(length: usize, rank: u32, seed: u64) -> Result<Word> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Word::random_with(&mut rng, length, rank)
    }

    /// Random reduced word whose length is uniform in `0..=max_len`.
    pub fn random_upto<R: Rng + ?Sized>(rng: &mut R, max_len: usize, rank: u32) -> Result<Word> {
        let length = rng.gen_range(0..=max_len);
        Word::random_with(rng, length, rank)
    }

    pub fn random_with<R: Rng + ?Sized>(rng: &mut R, length: usize, rank: u32) -> Result<Word> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let choices = 2 * rank;
        let mut letters: Vec<Letter> = Vec::with_capacity(length);
        for _ in 0..length {
            let letter = match letters.last() {
                None => letter_from_choice(rng.gen_range(0..choices)),
                Some(prev) => {
                    // Draw among the 2·rank − 1 letters that do not cancel `prev`.
                    let forbidden = choice_of(prev.inverse());
                    let mut c = rng.gen_range(0..choices - 1);
                    if c >= forbidden {
                        c += 1;
                    }
                    letter_from_choice(c)
                }
            };
            letters.push(letter);
        }
        Ok(Word { letters, rank })
    }
}

fn letter_from_choice(c: u32) -> Letter {
    let index = c / 2 + 1;
    if c.is_multiple_of(2) {
        Letter::pos(index)
    } else {
        Letter::neg(index)
    }
}

fn choice_of(letter: Letter) -> u32 {
    (letter.index() - 1) * 2 + u32::from(!letter.is_positive())
}

/// Convenience for short literals in code and tests: `word(&[1, -2], 2)`.
pub fn word(values: &[i64], rank: u32) -> Word {
    Word::from_signed(values, rank).expect("valid word literal")
}

/// Convenience for raw letter sequences.
pub fn letters(values: &[i64]) -> Vec<Letter> {
    values
        .iter()
        .map(|&v| Letter::from_signed(v).expect("nonzero letter"))
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[F{}]({})", self.rank, self)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.letters.iter().map(|l| l.signed()))
    }
}
