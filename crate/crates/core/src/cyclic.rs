//! Spatially periodic configurations.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::word::{Symbol, Word};

/// The periodic configuration `x` with `x_i = period_word[i mod n]`.
///
/// Equality is equality of configurations: `01` and `0101` are the same
/// point, while `01` and `10` are different points of the same shift orbit.
/// The stored period word keeps whatever length it was built with.
#[derive(Debug, Clone)]
pub struct CyclicWord {
    word: Word,
    least_period: usize,
}

impl CyclicWord {
    /// # Panics
    ///
    /// Panics if `word` is empty.
    pub fn new(word: impl Into<Word>) -> Self {
        let word = word.into();
        assert!(!word.is_empty(), "a cyclic word needs at least one symbol");
        let least_period = least_period(&word);
        CyclicWord { word, least_period }
    }

    pub fn unary(symbol: Symbol) -> Self {
        CyclicWord::new(vec![symbol])
    }

    pub fn period_word(&self) -> &Word {
        &self.word
    }

    /// Length of the stored period word (a period, not necessarily the least).
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn least_period(&self) -> usize {
        self.least_period
    }

    /// The first `least_period` symbols: the primitive root anchored at 0.
    pub fn reduced(&self) -> &[Symbol] {
        &self.word[..self.least_period]
    }

    /// Symbol at coordinate `i` of the configuration.
    pub fn at(&self, i: isize) -> Symbol {
        let n = self.word.len() as isize;
        self.word[i.rem_euclid(n) as usize]
    }

    /// `x_0 .. x_{len-1}` as a plain word.
    pub fn expand(&self, len: usize) -> Word {
        Word((0..len).map(|i| self.word[i % self.word.len()]).collect())
    }

    /// `x_{-before} .. x_{len-1+after}`; useful for applying a local rule.
    pub fn padded(&self, before: usize, len: usize, after: usize) -> Vec<Symbol> {
        (-(before as isize)..(len + after) as isize)
            .map(|i| self.at(i))
            .collect()
    }

    /// The left shift applied `s` times: `(σ^s x)_i = x_{i+s}`.
    pub fn rotate(&self, s: usize) -> CyclicWord {
        let n = self.word.len();
        let s = s % n;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.word[s..]);
        symbols.extend_from_slice(&self.word[..s]);
        CyclicWord {
            word: Word(symbols),
            least_period: self.least_period,
        }
    }

    /// The same point with its period word cut down to the least period.
    pub fn primitive(&self) -> CyclicWord {
        CyclicWord {
            word: Word(self.reduced().to_vec()),
            least_period: self.least_period,
        }
    }

    /// Lexicographically least rotation of the primitive root; one
    /// representative per shift orbit.
    pub fn canonical(&self) -> CyclicWord {
        let root = self.reduced();
        let s = least_rotation(root);
        let mut symbols = Vec::with_capacity(root.len());
        symbols.extend_from_slice(&root[s..]);
        symbols.extend_from_slice(&root[..s]);
        CyclicWord {
            word: Word(symbols),
            least_period: self.least_period,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.word.len() == self.least_period && least_rotation(&self.word) == 0
    }

    pub fn same_orbit(&self, other: &CyclicWord) -> bool {
        self.canonical() == other.canonical()
    }

    /// The `s` with `σ^s self == other`, if they share an orbit.
    pub fn shift_to(&self, other: &CyclicWord) -> Option<usize> {
        if self.least_period != other.least_period {
            return None;
        }
        (0..self.least_period).find(|&s| self.rotate(s) == *other)
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.reduced().hash(state);
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by least period, then by primitive root.
impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.least_period
            .cmp(&other.least_period)
            .then_with(|| self.reduced().cmp(other.reduced()))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.word)
    }
}

/// Least `p` such that rotating by `p` fixes the cyclic word.
pub fn least_period(word: &[Symbol]) -> usize {
    let n = word.len();
    if n == 0 {
        return 0;
    }
    // prefix function; the smallest border-derived period divides n iff it is cyclic.
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && word[i] != word[k] {
            k = pi[k - 1];
        }
        if word[i] == word[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

/// Start of the lexicographically least rotation.
pub fn least_rotation(word: &[Symbol]) -> usize {
    let n = word.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = word[(i + k) % n];
        let b = word[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}
