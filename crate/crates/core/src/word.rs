//! Finite words over a digit alphabet `{0, …, k-1}` with `k <= 10`.
//!
//! Words render as ASCII digit strings; the empty word renders as `""`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter is its digit value, `0..=9`.
pub type Letter = u8;

pub const MAX_ALPHABET: u8 = 10;

/// The alphabet `{0, …, size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet { size: 2 };
    pub const TERNARY: Alphabet = Alphabet { size: 3 };

    pub fn new(size: usize) -> Result<Alphabet> {
        if size == 0 || size > MAX_ALPHABET as usize {
            return Err(Error::InvalidAlphabet(size));
        }
        Ok(Alphabet { size: size as u8 })
    }

    /// Smallest alphabet containing every letter of `w` (at least unary).
    pub fn inferred(w: &Word) -> Alphabet {
        let size = w.iter().max().map_or(1, |&m| m + 1);
        Alphabet { size }
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    pub fn contains(self, a: Letter) -> bool {
        a < self.size
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        0..self.size
    }

    pub fn all(self) -> LetterSet {
        self.letters().collect()
    }

    pub fn check(self, w: &Word) -> Result<()> {
        match w.iter().position(|&a| !self.contains(a)) {
            None => Ok(()),
            Some(position) => Err(Error::InvalidLetter {
                found: (b'0' + w[position]) as char,
                position,
                alphabet_size: self.size,
            }),
        }
    }
}

/// A set of letters, stored as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(u16);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1 << a;
    }

    pub fn contains(self, a: Letter) -> bool {
        a < MAX_ALPHABET && self.0 & (1 << a) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Letters in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..MAX_ALPHABET).filter(move |&a| self.contains(a))
    }

    pub fn to_vec(self) -> Vec<Letter> {
        self.iter().collect()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A finite word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from raw letter values. Panics if a value is not a digit.
    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Word {
        let letters = letters.into();
        assert!(
            letters.iter().all(|&a| a < MAX_ALPHABET),
            "letter out of range"
        );
        Word(letters)
    }

    /// Parses a digit string and checks it against `alphabet`.
    pub fn parse_in(s: &str, alphabet: Alphabet) -> Result<Word> {
        let w: Word = s.parse()?;
        alphabet.check(&w)?;
        Ok(w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `|w|_a`
    pub fn count(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&b| b == a).count()
    }

    pub fn alph(&self) -> LetterSet {
        self.0.iter().copied().collect()
    }

    pub fn is_unary(&self) -> bool {
        self.alph().len() == 1
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    pub fn push(&mut self, a: Letter) {
        assert!(a < MAX_ALPHABET, "letter out of range");
        self.0.push(a);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn is_factor_of(&self, other: &[Letter]) -> bool {
        find_all(other, &self.0).next().is_some()
    }

    /// Length of the longest run `a^n` inside the word.
    pub fn max_power(&self, a: Letter) -> usize {
        let mut best = 0;
        let mut run = 0;
        for &b in &self.0 {
            run = if b == a { run + 1 } else { 0 };
            best = best.max(run);
        }
        best
    }

    pub fn leading_run(&self, a: Letter) -> usize {
        self.0.iter().take_while(|&&b| b == a).count()
    }

    pub fn trailing_run(&self, a: Letter) -> usize {
        self.0.iter().rev().take_while(|&&b| b == a).count()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Word {
        Word::from_letters(s.to_vec())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .enumerate()
            .map(|(position, c)| {
                c.to_digit(10)
                    .filter(|_| c.is_ascii_digit())
                    .map(|d| d as Letter)
                    .ok_or(Error::InvalidLetter {
                        found: c,
                        position,
                        alphabet_size: MAX_ALPHABET,
                    })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

pub fn is_palindrome(s: &[Letter]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Start positions of every occurrence of `pattern` in `text` (overlaps included).
pub fn find_all<'a>(text: &'a [Letter], pattern: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
    let last = (text.len() + 1).saturating_sub(pattern.len());
    (0..last).filter(move |&i| &text[i..i + pattern.len()] == pattern)
}

/// Every word of length `n` over `alphabet`, in lexicographic order.
pub fn all_words(alphabet: Alphabet, n: usize) -> impl Iterator<Item = Word> {
    let k = alphabet.size() as u64;
    let total = k.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % k) as Letter;
            code /= k;
        }
        Word(v)
    })
}
