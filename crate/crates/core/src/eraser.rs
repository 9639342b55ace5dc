//! An idempotent, non-surjective CA that erases a diamond.
//!
//! Given a diamond `(u, u')` of a non-surjective CA `G`, the eraser `E`
//! rewrites an occurrence of `u` at `i` into `u'` when
//!
//! 1. `u` occurs exactly once in `x[i-2|u|+1 .. i+3|u|-2]`, and
//! 2. writing `u'` there creates no occurrence of `u` overlapping `[i, i+|u|-1]`.
//!
//! Then `E ∘ E = E`, `G ∘ E = G`, and `E` is not preinjective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::ca::{Ca, CellularAutomaton, ProceduralCA, RuleTableCA};
use crate::cyclic::CyclicWord;
use crate::error::{Error, Result};
use crate::language::{find_diamond, Diamond};
use crate::word::{occurrences, Alphabet, Symbol, Word};

#[derive(Debug, Clone)]
pub struct EraserCA {
    alphabet: Alphabet,
    u: Word,
    u_prime: Word,
    source_radius: usize,
    condition_two: bool,
}

impl EraserCA {
    /// Eraser for an arbitrary pair of distinct equal-length words with
    /// `|u| > 1`. Whether it preserves some CA's image depends on `(u, u')`
    /// being a diamond of it.
    pub fn new(alphabet: Alphabet, u: Word, u_prime: Word, source_radius: usize) -> Result<Self> {
        alphabet.check_word(&u)?;
        alphabet.check_word(&u_prime)?;
        if u.len() < 2 || u.len() != u_prime.len() || u == u_prime {
            return Err(Error::InvalidArgument(
                "eraser words must be distinct, of equal length at least 2".into(),
            ));
        }
        Ok(EraserCA {
            alphabet,
            u,
            u_prime,
            source_radius,
            condition_two: true,
        })
    }

    /// Built from a diamond; a length-1 `u` is padded with symbol 0 on both
    /// sides.
    pub fn from_diamond(alphabet: Alphabet, diamond: &Diamond, source_radius: usize) -> Result<Self> {
        let (mut u, mut v) = (diamond.u(), diamond.u_prime());
        if u.len() == 1 {
            u = Word(vec![0, u[0], 0]);
            v = Word(vec![0, v[0], 0]);
        }
        EraserCA::new(alphabet, u, v, source_radius)
    }

    /// Drops condition (2). The result is generally not idempotent; kept as a
    /// test fixture for the verifier.
    pub fn without_condition_two(mut self) -> Self {
        self.condition_two = false;
        self
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    pub fn u_prime(&self) -> &Word {
        &self.u_prime
    }

    pub fn source_radius(&self) -> usize {
        self.source_radius
    }

    /// Rewrites every occurrence of `u` whose conditions can be evaluated
    /// inside `x`; all other cells are copied.
    pub fn erase(&self, x: &[Symbol]) -> Vec<Symbol> {
        let n = self.u.len();
        let found = occurrences(x, &self.u);
        let mut out = x.to_vec();
        for (slot, &i) in found.iter().enumerate() {
            if i + 1 < 2 * n || i + 3 * n - 2 >= x.len() {
                continue;
            }
            let alone = slot.checked_sub(1).is_none_or(|p| i - found[p] >= 2 * n)
                && found.get(slot + 1).is_none_or(|&q| q - i >= 2 * n);
            if alone && (!self.condition_two || !self.creates_overlap(x, i)) {
                out[i..i + n].copy_from_slice(&self.u_prime);
            }
        }
        out
    }

    fn creates_overlap(&self, x: &[Symbol], i: usize) -> bool {
        let n = self.u.len();
        let mut rewritten = x[i + 1 - n..i + 2 * n - 1].to_vec();
        rewritten[n - 1..2 * n - 1].copy_from_slice(&self.u_prime);
        rewritten.windows(n).any(|w| w == &self.u[..])
    }

    /// The same rule as a procedural CA, for use with [`crate::ca::compose`].
    pub fn to_ca(&self) -> Ca {
        let eraser = self.clone();
        let r = self.radius();
        Ca::Procedural(ProceduralCA::new(
            self.alphabet,
            r,
            format!("eraser({}->{})", self.u, self.u_prime),
            move |window| eraser.erase(window)[r],
        ))
    }
}

impl CellularAutomaton for EraserCA {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// `3|u| - 2`: enough to see condition (1) for every occurrence
    /// covering the centre cell.
    fn radius(&self) -> usize {
        3 * self.u.len() - 2
    }

    fn local(&self, window: &[Symbol]) -> Symbol {
        self.erase(window)[self.radius()]
    }

    fn apply_to_word(&self, word: &[Symbol]) -> Result<Word> {
        let r = self.radius();
        if word.len() < 2 * r + 1 {
            return Err(Error::WordTooShort {
                len: word.len(),
                needed: 2 * r + 1,
            });
        }
        let out = self.erase(word);
        Ok(Word(out[r..word.len() - r].to_vec()))
    }
}

/// Builds the eraser for a non-surjective `g` from its minimal diamond.
pub fn build_eraser(g: &RuleTableCA, budget: Budget) -> Result<EraserCA> {
    let diamond = find_diamond(g, budget)?.ok_or(Error::SourceIsSurjective)?;
    EraserCA::from_diamond(g.alphabet(), &diamond, g.radius())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EraserFailure {
    NotIdempotent { point: CyclicWord },
    ImageChanged { point: CyclicWord },
    NotIdempotentOnWord { word: Word },
    ImageChangedOnWord { word: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EraserReport {
    pub cyclic_checked: usize,
    pub random_checked: usize,
    pub failures: Vec<EraserFailure>,
    /// Two inputs that differ only by a `u`/`u'` swap and have equal images.
    pub collision: Option<(Word, Word)>,
}

impl EraserReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.collision.is_some()
    }
}

/// Checks `E ∘ E = E` and `G ∘ E = G` on every cyclic word of length up to
/// `period_bound` and on `trials` random words (with copies of `u` and `u'`
/// planted so the rewrite actually fires), then looks for a collision pair
/// `a^M u b^M`, `a^M u' b^M`. At most one failure of each kind is recorded.
pub fn verify_eraser(
    e: &EraserCA,
    g: &RuleTableCA,
    period_bound: usize,
    trials: usize,
    seed: u64,
) -> Result<EraserReport> {
    if e.alphabet() != g.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: e.alphabet().size(),
            right: g.alphabet().size(),
        });
    }
    let alphabet = e.alphabet();
    let mut failures = Vec::new();
    let mut record = |failure: EraserFailure| {
        if !failures
            .iter()
            .any(|f| std::mem::discriminant(f) == std::mem::discriminant(&failure))
        {
            failures.push(failure);
        }
    };

    let mut cyclic_checked = 0;
    for n in 1..=period_bound {
        for word in alphabet.words(n) {
            let x = CyclicWord::new(word);
            let ex = e.apply_to_cyclic(&x);
            if e.apply_to_cyclic(&ex) != ex {
                record(EraserFailure::NotIdempotent { point: x.clone() });
            }
            if g.apply_to_cyclic(&ex) != g.apply_to_cyclic(&x) {
                record(EraserFailure::ImageChanged { point: x });
            }
            cyclic_checked += 1;
        }
    }

    let big_r = e.radius();
    let n = e.u().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let len = 4 * big_r + 2 * n + rng.gen_range(0..4 * n);
        let mut x: Vec<Symbol> = (0..len).map(|_| rng.gen_range(0..alphabet.size()) as Symbol).collect();
        for _ in 0..rng.gen_range(0..4) {
            let at = rng.gen_range(0..=len - n);
            let planted = if rng.gen_bool(0.5) { e.u() } else { e.u_prime() };
            x[at..at + n].copy_from_slice(planted);
        }
        let ex = e.apply_to_word(&x)?;
        let eex = e.apply_to_word(&ex)?;
        if eex[..] != ex[big_r..ex.len() - big_r] {
            record(EraserFailure::NotIdempotentOnWord { word: Word(x.clone()) });
        }
        let gex = g.apply_to_word(&ex)?;
        let gx = g.apply_to_word(&x)?;
        if gex[..] != gx[big_r..gx.len() - big_r] {
            record(EraserFailure::ImageChangedOnWord { word: Word(x) });
        }
    }

    Ok(EraserReport {
        cyclic_checked,
        random_checked: trials,
        failures,
        collision: collision_pair(e),
    })
}

/// `a^M u b^M` and `a^M u' b^M` with `a != u_1`, `b != u_last` and
/// `M = 2R`, if some choice of `a, b` gives equal images.
///
/// Away from the middle both configurations agree, so comparing the images
/// of these finite words decides equality of the images of the bi-infinite
/// configurations `…aaa u bbb…` and `…aaa u' bbb…`.
pub fn collision_pair(e: &EraserCA) -> Option<(Word, Word)> {
    let margin = 2 * e.radius();
    let (u, v) = (e.u(), e.u_prime());
    let first = u[0];
    let last = u[u.len() - 1];
    for a in e.alphabet().symbols().filter(|&a| a != first) {
        for b in e.alphabet().symbols().filter(|&b| b != last) {
            let left = vec![a; margin];
            let right = vec![b; margin];
            let x = Word::concat(&[&left, u, &right]);
            let y = Word::concat(&[&left, v, &right]);
            if e.apply_to_word(&x).ok()? == e.apply_to_word(&y).ok()? {
                return Some((x, y));
            }
        }
    }
    None
}
