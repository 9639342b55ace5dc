//! Coding ingredients: unbordered words, the capacity inequality and the
//! `w·s·w` block injection.
//!
//! Fix a word `v` (typically an orphan of the CA being factored). The
//! language `Y` avoids `v`; the language `Y'` avoids a longer word `w`
//! containing `v` once, so it is strictly richer. Above the capacity
//! threshold `m`, every length-`n` word of `Y` can be stored as a block
//! `w·s·w` of the same length with `s` avoiding `w`:
//!
//! ```text
//! |{ s : |s| = n - 2|w|, s avoids w }|  >  |{ u : |u| = n, u avoids v }|
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::language::{is_mixing_avoid, AvoidAutomaton};
use crate::word::{occurrences, Alphabet, Symbol, Word};

/// Does placing `b` at offset `d` (relative to `a`) agree on the overlap?
fn compatible(a: &[Symbol], b: &[Symbol], d: isize) -> bool {
    let lo = d.max(0);
    let hi = (d + b.len() as isize).min(a.len() as isize);
    lo < hi && (lo..hi).all(|i| a[i as usize] == b[(i - d) as usize])
}

/// No two occurrences of words from the set may overlap, except an
/// occurrence with itself.
pub fn is_mutually_unbordered(words: &[Word]) -> bool {
    if words.iter().any(|w| w.is_empty()) {
        return false;
    }
    for a in words {
        for b in words {
            for d in 0..a.len() as isize {
                if d == 0 && a == b {
                    continue;
                }
                if compatible(a, b, d) {
                    return false;
                }
            }
        }
    }
    true
}

/// `x` contains `v` exactly once, and `v` can be laid over `x` consistently
/// only at that occurrence.
pub fn overlaps_only_at_occurrence(v: &[Symbol], x: &[Symbol]) -> bool {
    let found = occurrences(x, v);
    if found.len() != 1 {
        return false;
    }
    let at = found[0] as isize;
    let from = 1 - v.len() as isize;
    (from..x.len() as isize).all(|d| d == at || !compatible(x, v, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnborderedTriple {
    pub alphabet: Alphabet,
    pub v: Word,
    pub w: Word,
    pub w0: Word,
    pub w1: Word,
}

impl UnborderedTriple {
    pub fn words(&self) -> [&Word; 3] {
        [&self.w, &self.w0, &self.w1]
    }

    /// Rechecks every invariant of the triple.
    pub fn verify(&self, budget: Budget) -> Result<bool> {
        let set = [self.w.clone(), self.w0.clone(), self.w1.clone()];
        Ok(self.words().iter().all(|x| x.len() > self.v.len() && overlaps_only_at_occurrence(&self.v, x))
            && is_mutually_unbordered(&set)
            && is_mixing_avoid(self.alphabet, &self.w, budget)?)
    }
}

impl fmt::Display for UnborderedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} w={} w0={} w1={}", self.v, self.w, self.w0, self.w1)
    }
}

/// Searches words `p·v·s` by length, then lexicographically, and returns
/// the first triple found greedily: `w` is the first usable word whose
/// avoid-`w` shift is mixing, `w0` and `w1` the first words compatible with
/// it. `candidates` caps the number of words examined.
pub fn build_triple(alphabet: Alphabet, v: &Word, candidates: u64) -> Result<UnborderedTriple> {
    alphabet.check_word(v)?;
    if v.is_empty() {
        return Err(Error::InvalidArgument("v must be non-empty".into()));
    }
    let mut examined = 0u64;
    let mut pool: Vec<Word> = Vec::new();
    let mut mixing: Vec<bool> = Vec::new();
    for len in v.len() + 1.. {
        let pad = len - v.len();
        let mut fresh = BTreeSet::new();
        for before in 0..=pad {
            let count = alphabet.size().checked_pow(pad as u32).ok_or(Error::SearchBudgetExceeded(candidates))?;
            for index in 0..count {
                examined += 1;
                if examined > candidates {
                    return Err(Error::SearchBudgetExceeded(candidates));
                }
                let padding = alphabet.word_at(index, pad);
                let x = Word::concat(&[&padding[..before], v, &padding[before..]]);
                if overlaps_only_at_occurrence(v, &x) && is_mutually_unbordered(std::slice::from_ref(&x)) {
                    fresh.insert(x);
                }
            }
        }
        for x in fresh {
            mixing.push(is_mixing_avoid(alphabet, &x, Budget::DEFAULT)?);
            pool.push(x);
        }
        for (i, w) in pool.iter().enumerate() {
            if !mixing[i] {
                continue;
            }
            let mut chosen = vec![w.clone()];
            for x in &pool {
                if chosen.len() == 3 {
                    break;
                }
                let mut trial = chosen.clone();
                trial.push(x.clone());
                if !chosen.contains(x) && is_mutually_unbordered(&trial) {
                    chosen = trial;
                }
            }
            if let [w, w0, w1] = &chosen[..] {
                return Ok(UnborderedTriple {
                    alphabet,
                    v: v.clone(),
                    w: w.clone(),
                    w0: w0.clone(),
                    w1: w1.clone(),
                });
            }
        }
    }
    unreachable!("the length loop only ends by returning")
}

fn count_sequence(automaton: &AvoidAutomaton, max_len: usize) -> Vec<BigUint> {
    let table = automaton
        .completions::<BigUint>(max_len)
        .expect("big integers do not overflow");
    table.into_iter().map(|row| row[AvoidAutomaton::START].clone()).collect()
}

/// Dominant eigenvalue of the automaton's transition matrix by power iteration.
fn growth_rate(automaton: &AvoidAutomaton, iterations: usize) -> f64 {
    let states = automaton.state_count();
    let mut x = vec![1.0f64; states];
    let mut lambda = 0.0;
    for _ in 0..iterations {
        let mut y = vec![0.0; states];
        for (s, slot) in y.iter_mut().enumerate() {
            for a in automaton.alphabet().symbols() {
                if let Some(t) = automaton.step(s, a) {
                    *slot += x[t];
                }
            }
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm / x.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|c| c / norm).collect();
    }
    lambda
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    /// The least `m` with the inequality exact-verified on `[m, m + check_span]`.
    pub m: usize,
    pub check_span: usize,
    /// Growth rates of the avoid-`v` and avoid-`w` languages.
    pub lambda_v: f64,
    pub lambda_w: f64,
    /// `lambda_w > lambda_v` by at least [`CapacityReport::MARGIN`]: the
    /// inequality then holds for all large `n`, but this is numeric evidence only.
    pub asymptotic: bool,
}

impl CapacityReport {
    pub const MARGIN: f64 = 1e-6;
    const ITERATIONS: usize = 2000;
}

/// Least `m` such that the capacity inequality holds with exact counts for
/// every `n` in `[m, m + check_span]`, scanning `m` up to `scan_limit`.
pub fn capacity_threshold(triple: &UnborderedTriple, check_span: usize, scan_limit: usize) -> Result<CapacityReport> {
    let av = AvoidAutomaton::new(triple.alphabet, std::slice::from_ref(&triple.v))?;
    let aw = AvoidAutomaton::new(triple.alphabet, std::slice::from_ref(&triple.w))?;
    let top = scan_limit + check_span;
    let yv = count_sequence(&av, top);
    let yw = count_sequence(&aw, top);
    let gap = 2 * triple.w.len();
    let holds = |n: usize| n >= gap && yw[n - gap] > yv[n];
    let mut run = 0;
    for n in 0..=top {
        run = if holds(n) { run + 1 } else { 0 };
        if run == check_span + 1 {
            let lambda_v = growth_rate(&av, CapacityReport::ITERATIONS);
            let lambda_w = growth_rate(&aw, CapacityReport::ITERATIONS);
            return Ok(CapacityReport {
                m: n - check_span,
                check_span,
                lambda_v,
                lambda_w,
                asymptotic: lambda_w - lambda_v > CapacityReport::MARGIN,
            });
        }
    }
    Err(Error::NoThresholdFound(scan_limit))
}

/// Has the word a period `q ≤ m` that is not a multiple of its least period?
pub fn has_two_distinct_periods(word: &[Symbol], m: usize) -> bool {
    let periods: Vec<usize> = (1..=m.min(word.len())).filter(|&p| crate::word::has_period(word, p)).collect();
    match periods.first() {
        Some(&least) => periods.iter().any(|&q| q % least != 0),
        None => false,
    }
}

/// The least length `L > m` at which no word has two distinct periods `≤ m`.
///
/// By Fine and Wilf, periods `p` and `q` on a word of length at least
/// `p + q - gcd(p, q)` force the period `gcd(p, q)`, and the bound is tight
/// already over two letters. So the answer is `max(m + 1, max (p + q - gcd))`
/// over `p < q ≤ m` with `p ∤ q`.
pub fn separation_length(m: usize) -> usize {
    assert!(m >= 1, "m must be positive");
    let mut best = m + 1;
    for q in 1..=m {
        for p in 1..q {
            if q % p != 0 {
                best = best.max(p + q - gcd(p, q));
            }
        }
    }
    best
}

/// [`separation_length`] by brute force over all words, scanning from `m + 1`.
pub fn separation_length_exhaustive(m: usize, alphabet: Alphabet, budget: Budget) -> Result<usize> {
    for len in m + 1.. {
        let count = budget.check_pow(alphabet.size(), len)?;
        let mut word = vec![0; len];
        let clash = (0..count).any(|i| {
            alphabet.fill_word_at(i, &mut word);
            has_two_distinct_periods(&word, m)
        });
        if !clash {
            return Ok(len);
        }
    }
    unreachable!()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lexicographic rank and unrank within the words of one length avoiding a
/// fixed word, using 128-bit completion counts.
#[derive(Debug, Clone)]
struct Ranker {
    automaton: AvoidAutomaton,
    states: usize,
    /// `table[j * states + s]`: completions of length `j` from state `s`.
    table: Vec<u128>,
    max_len: usize,
}

impl Ranker {
    fn new(alphabet: Alphabet, forbidden: &Word, limit: usize) -> Result<Self> {
        let automaton = AvoidAutomaton::new(alphabet, std::slice::from_ref(forbidden))?;
        let states = automaton.state_count();
        let mut table = vec![1u128; states];
        let mut max_len = 0;
        // grow row by row until the next row would overflow
        'grow: while max_len < limit {
            let prev = max_len * states;
            let mut row = Vec::with_capacity(states);
            for s in 0..states {
                let mut total = 0u128;
                for a in alphabet.symbols() {
                    if let Some(t) = automaton.step(s, a) {
                        match total.checked_add(table[prev + t]) {
                            Some(sum) => total = sum,
                            None => break 'grow,
                        }
                    }
                }
                row.push(total);
            }
            table.extend(row);
            max_len += 1;
        }
        Ok(Ranker {
            automaton,
            states,
            table,
            max_len,
        })
    }

    fn count(&self, len: usize) -> u128 {
        self.table[len * self.states + AvoidAutomaton::START]
    }

    /// `None` if `word` contains the forbidden word.
    fn rank(&self, word: &[Symbol]) -> Option<u128> {
        let n = word.len();
        let mut state = AvoidAutomaton::START;
        let mut rank = 0u128;
        for (j, &b) in word.iter().enumerate() {
            let row = (n - j - 1) * self.states;
            for a in 0..b {
                if let Some(t) = self.automaton.step(state, a) {
                    rank += self.table[row + t];
                }
            }
            state = self.automaton.step(state, b)?;
        }
        Some(rank)
    }

    /// Writes the `rank`-th word into `out`; `false` if there is none.
    fn unrank(&self, mut rank: u128, out: &mut [Symbol]) -> bool {
        let n = out.len();
        let mut state = AvoidAutomaton::START;
        for j in 0..n {
            let row = (n - j - 1) * self.states;
            let mut placed = false;
            for a in self.automaton.alphabet().symbols() {
                if let Some(t) = self.automaton.step(state, a) {
                    let c = self.table[row + t];
                    if rank < c {
                        out[j] = a;
                        state = t;
                        placed = true;
                        break;
                    }
                    rank -= c;
                }
            }
            if !placed {
                return false;
            }
        }
        rank == 0
    }
}

/// A triple with its capacity threshold, separation length and rank tables.
#[derive(Debug, Clone)]
pub struct CodingKit {
    pub triple: UnborderedTriple,
    pub capacity: CapacityReport,
    pub k_sep: usize,
    ranker_v: Ranker,
    ranker_w: Ranker,
}

impl CodingKit {
    /// Rank tables are built as long as counts fit in 128 bits; longer
    /// inputs are refused with [`Error::RankOverflow`].
    pub const MAX_TABLE_LEN: usize = 512;

    pub fn new(triple: UnborderedTriple, check_span: usize, scan_limit: usize) -> Result<Self> {
        let capacity = capacity_threshold(&triple, check_span, scan_limit)?;
        let ranker_v = Ranker::new(triple.alphabet, &triple.v, Self::MAX_TABLE_LEN)?;
        let ranker_w = Ranker::new(triple.alphabet, &triple.w, Self::MAX_TABLE_LEN)?;
        Ok(CodingKit {
            k_sep: separation_length(capacity.m),
            triple,
            capacity,
            ranker_v,
            ranker_w,
        })
    }

    pub fn m(&self) -> usize {
        self.capacity.m
    }

    /// Largest block length the 128-bit rank tables support.
    pub fn max_len(&self) -> usize {
        self.ranker_v.max_len.min(self.ranker_w.max_len + 2 * self.triple.w.len())
    }

    /// Number of length-`n` words avoiding `v`, exactly.
    pub fn count_v(&self, n: usize) -> Result<BigUint> {
        crate::language::count_avoiding(self.triple.alphabet, std::slice::from_ref(&self.triple.v), n)
    }

    /// Number of length-`n` words avoiding `w`, exactly.
    pub fn count_w(&self, n: usize) -> Result<BigUint> {
        crate::language::count_avoiding(self.triple.alphabet, std::slice::from_ref(&self.triple.w), n)
    }

    /// Checks the capacity inequality with exact counts at length `n`.
    pub fn inequality_holds(&self, n: usize) -> Result<bool> {
        let gap = 2 * self.triple.w.len();
        Ok(n >= gap && self.count_w(n - gap)? > self.count_v(n)?)
    }

    /// Writes `w·s·w` for `u` into `out` (same length as `u`).
    pub fn encode_into(&self, u: &[Symbol], out: &mut [Symbol]) -> Result<()> {
        let n = u.len();
        if n < self.m() {
            return Err(Error::LengthBelowThreshold {
                len: n,
                threshold: self.m(),
            });
        }
        if n > self.max_len() {
            return Err(Error::RankOverflow(n));
        }
        debug_assert_eq!(out.len(), n);
        self.triple.alphabet.check_word(u)?;
        let rank = self
            .ranker_v
            .rank(u)
            .ok_or_else(|| Error::ContainsForbidden(self.triple.v.to_string()))?;
        let w = &self.triple.w;
        let mid = n - 2 * w.len();
        out[..w.len()].copy_from_slice(w);
        out[n - w.len()..].copy_from_slice(w);
        if !self.ranker_w.unrank(rank, &mut out[w.len()..w.len() + mid]) {
            return Err(Error::InvalidArgument(format!("the capacity inequality fails at length {n}")));
        }
        Ok(())
    }

    /// Inverse of [`CodingKit::encode_into`].
    pub fn decode_into(&self, block: &[Symbol], out: &mut [Symbol]) -> Result<()> {
        let n = block.len();
        let w = &self.triple.w;
        if n < 2 * w.len() || !block.starts_with(w) || !block.ends_with(w) {
            return Err(Error::MalformedBlock(format!("block is not framed by {w}")));
        }
        if n > self.max_len() {
            return Err(Error::RankOverflow(n));
        }
        self.triple.alphabet.check_word(block)?;
        let middle = &block[w.len()..n - w.len()];
        let rank = self
            .ranker_w
            .rank(middle)
            .ok_or_else(|| Error::MalformedBlock(format!("the middle contains {w}")))?;
        if rank >= self.ranker_v.count(n) || !self.ranker_v.unrank(rank, out) {
            return Err(Error::MalformedBlock("the middle is not the image of any word".into()));
        }
        Ok(())
    }

    pub fn encode_rank(&self, u: &[Symbol]) -> Result<Word> {
        let mut out = vec![0; u.len()];
        self.encode_into(u, &mut out)?;
        Ok(Word(out))
    }

    pub fn decode_rank(&self, block: &[Symbol]) -> Result<Word> {
        let mut out = vec![0; block.len()];
        self.decode_into(block, &mut out)?;
        Ok(Word(out))
    }
}

/// Number of occurrences of `w` in `block`; 2 for every encoded block.
pub fn frame_occurrences(block: &[Symbol], w: &[Symbol]) -> usize {
    occurrences(block, w).len()
}
