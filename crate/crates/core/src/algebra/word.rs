use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    fn bit(self) -> u128 {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }

    fn from_bit(b: u128) -> Letter {
        if b & 1 == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// Longest word a [`Word`] can hold.
pub const MAX_DEGREE: usize = 128;

/// A monomial in the letters `x`, `y`.
///
/// Letters are packed one per bit, first letter most significant, so the
/// derived ordering is by degree and then lexicographic with `x < y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u128,
}

impl Word {
    pub const fn empty() -> Word {
        Word { len: 0, bits: 0 }
    }

    pub fn letter(l: Letter) -> Word {
        Word { len: 1, bits: l.bit() }
    }

    pub fn x() -> Word {
        Word::letter(Letter::X)
    }

    pub fn y() -> Word {
        Word::letter(Letter::Y)
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        letters.into_iter().fold(Word::empty(), |w, l| w.push(l))
    }

    /// Letters as bits (`x = 0`, `y = 1`), first letter most significant.
    pub fn to_bits(&self) -> u128 {
        self.bits
    }

    pub fn from_bits(degree: usize, bits: u128) -> Word {
        assert!(degree <= MAX_DEGREE, "word degree exceeds {MAX_DEGREE}");
        let mask = if degree == 0 { 0 } else { u128::MAX >> (128 - degree) };
        Word { len: degree as u8, bits: bits & mask }
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of `x` letters.
    pub fn count_x(&self) -> usize {
        self.len as usize - self.bits.count_ones() as usize
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        (i < self.len as usize).then(|| Letter::from_bit(self.bits >> (self.len as usize - 1 - i)))
    }

    pub fn first(&self) -> Option<Letter> {
        self.get(0)
    }

    pub fn last(&self) -> Option<Letter> {
        (self.len > 0).then(|| Letter::from_bit(self.bits))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        (0..self.len as usize).map(move |i| self.get(i).unwrap())
    }

    pub fn push(self, l: Letter) -> Word {
        assert!((self.len as usize) < MAX_DEGREE, "word degree exceeds {MAX_DEGREE}");
        Word { len: self.len + 1, bits: (self.bits << 1) | l.bit() }
    }

    pub fn prepend(self, l: Letter) -> Word {
        Word::letter(l).concat(self)
    }

    pub fn concat(self, other: Word) -> Word {
        if other.len == 0 {
            return self;
        }
        assert!(
            self.len as usize + other.len as usize <= MAX_DEGREE,
            "word degree exceeds {MAX_DEGREE}"
        );
        Word { len: self.len + other.len, bits: (self.bits << other.len) | other.bits }
    }

    /// Splits into the first `i` letters and the rest.
    pub fn split_at(self, i: usize) -> (Word, Word) {
        assert!(i <= self.len as usize);
        let rest = self.len as usize - i;
        let tail_mask = if rest == 0 { 0 } else { u128::MAX >> (128 - rest) };
        let head = Word { len: i as u8, bits: if rest == 128 { 0 } else { self.bits >> rest } };
        let tail = Word { len: rest as u8, bits: self.bits & tail_mask };
        (head, tail)
    }

    /// `(first letter, remainder)`.
    pub fn split_first(self) -> Option<(Letter, Word)> {
        let l = self.first()?;
        Some((l, self.split_at(1).1))
    }

    /// `(remainder, last letter)`.
    pub fn split_last(self) -> Option<(Word, Letter)> {
        let l = self.last()?;
        Some((Word { len: self.len - 1, bits: self.bits >> 1 }, l))
    }

    pub fn starts_with(&self, l: Letter) -> bool {
        self.first() == Some(l)
    }

    pub fn ends_with(&self, l: Letter) -> bool {
        self.last() == Some(l)
    }

    /// Member of y𝔥x: begins with `y` and ends with `x`.
    pub fn is_admissible(&self) -> bool {
        self.starts_with(Letter::Y) && self.ends_with(Letter::X)
    }

    /// All words of the given degree, lexicographic with `x < y`.
    pub fn all_of_degree(degree: usize) -> impl Iterator<Item = Word> {
        assert!(degree < 64, "exhaustive enumeration limited to degree < 64");
        (0..1u128 << degree).map(move |bits| Word { len: degree as u8, bits })
    }

    /// All words of degree at most `max_degree`, graded.
    pub fn all_up_to(max_degree: usize) -> impl Iterator<Item = Word> {
        (0..=max_degree).flat_map(Word::all_of_degree)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("1")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Letters `x`/`y`; the empty string (or `"1"`) is the unit.
    fn from_str(s: &str) -> Result<Word, Error> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.len() > MAX_DEGREE {
            return Err(Error::Parse(format!("word longer than {MAX_DEGREE} letters")));
        }
        s.chars()
            .map(|ch| match ch {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("invalid letter {ch:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from_letters)
    }
}
