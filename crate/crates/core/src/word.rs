//! Alphabets and finite words.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Symbol = u8;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// The symbol set `{0, .., k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);

    /// Symbols print as single base-36 digits, hence the upper bound.
    pub fn new(k: usize) -> Result<Self> {
        if (2..=36).contains(&k) {
            Ok(Alphabet(k))
        } else {
            Err(Error::InvalidAlphabet(k))
        }
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> + Clone {
        (0..self.0).map(|a| a as Symbol)
    }

    pub fn check_symbol(self, symbol: Symbol) -> Result<()> {
        if (symbol as usize) < self.0 {
            Ok(())
        } else {
            Err(Error::InvalidSymbol {
                symbol: symbol as usize,
                k: self.0,
            })
        }
    }

    pub fn check_word(self, word: &[Symbol]) -> Result<()> {
        word.iter().try_for_each(|&a| self.check_symbol(a))
    }

    /// Base-k big-endian value of `word`, leftmost symbol most significant.
    pub fn index_of(self, word: &[Symbol]) -> usize {
        word.iter().fold(0, |acc, &a| acc * self.0 + a as usize)
    }

    /// Inverse of [`Alphabet::index_of`] for words of length `len`.
    pub fn word_at(self, mut index: usize, len: usize) -> Word {
        let mut symbols = vec![0; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % self.0) as Symbol;
            index /= self.0;
        }
        Word(symbols)
    }

    /// Writes the word with the given index into `out` without allocating.
    pub fn fill_word_at(self, mut index: usize, out: &mut [Symbol]) {
        for slot in out.iter_mut().rev() {
            *slot = (index % self.0) as Symbol;
            index /= self.0;
        }
    }

    /// All words of length `len` in lexicographic order.
    ///
    /// The caller is responsible for keeping `k^len` enumerable.
    pub fn words(self, len: usize) -> impl Iterator<Item = Word> {
        let count = self.0.checked_pow(len as u32).expect("word count overflows usize");
        (0..count).map(move |i| self.word_at(i, len))
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::BINARY
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over some alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn constant(symbol: Symbol, len: usize) -> Self {
        Word(vec![symbol; len])
    }

    /// Parses a digit string (`0-9`, then `a-z`) and checks it against the alphabet.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for (column, ch) in text.trim().chars().enumerate() {
            let digit = ch.to_digit(36).ok_or_else(|| Error::Parse {
                line: 1,
                column: column + 1,
                message: format!("'{ch}' is not a symbol digit"),
            })?;
            if digit as usize >= alphabet.size() {
                return Err(Error::Parse {
                    line: 1,
                    column: column + 1,
                    message: format!("symbol {digit} is outside the alphabet of size {alphabet}"),
                });
            }
            symbols.push(digit as Symbol);
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(parts: &[&[Symbol]]) -> Self {
        Word(parts.concat())
    }

    /// Start positions of every (possibly overlapping) occurrence of `pattern`.
    pub fn occurrences(&self, pattern: &[Symbol]) -> Vec<usize> {
        occurrences(&self.0, pattern)
    }

    pub fn contains_word(&self, pattern: &[Symbol]) -> bool {
        contains(&self.0, pattern)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }
}

impl From<&[Symbol]> for Word {
    fn from(symbols: &[Symbol]) -> Self {
        Word(symbols.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &a in &self.0 {
            write!(f, "{}", DIGITS[a as usize] as char)?;
        }
        Ok(())
    }
}

pub(crate) fn occurrences(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn contains(text: &[Symbol], pattern: &[Symbol]) -> bool {
    pattern.len() <= text.len() && text.windows(pattern.len()).any(|w| w == pattern)
}

/// Whether `word` is `p`-periodic: `word[i] == word[i + p]` wherever both exist.
pub fn has_period(word: &[Symbol], p: usize) -> bool {
    p > 0 && (p..word.len()).all(|i| word[i] == word[i - p])
}

/// Whether `word` is `p`-periodic for some `1 <= p < bound`.
pub fn has_period_below(word: &[Symbol], bound: usize) -> bool {
    (1..bound).any(|p| has_period(word, p))
}
