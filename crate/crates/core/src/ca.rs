//! One-dimensional cellular automata on full shifts and their algebra.
//!
//! A CA of radius `r` is given by a local rule on windows of length `2r + 1`.
//! [`RuleTableCA`] stores that rule as a table indexed by the base-k
//! big-endian value of the window; [`ProceduralCA`] computes it on demand and
//! is used for constructions whose tables are too large to write down.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{checked_pow, Budget};
use crate::cyclic::CyclicWord;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A shift-commuting map `S^Z -> S^Z` given by a finite-radius local rule.
pub trait CellularAutomaton: Send + Sync {
    fn alphabet(&self) -> Alphabet;

    fn radius(&self) -> usize;

    /// The local rule. `window.len()` must be `2 * radius + 1`.
    fn local(&self, window: &[Symbol]) -> Symbol;

    fn window_len(&self) -> usize {
        2 * self.radius() + 1
    }

    /// Applies the rule to every full window of `word`; the result is
    /// `2r` symbols shorter.
    fn apply_to_word(&self, word: &[Symbol]) -> Result<Word> {
        let len = self.window_len();
        if word.len() < len {
            return Err(Error::WordTooShort {
                len: word.len(),
                needed: len,
            });
        }
        Ok(Word(word.windows(len).map(|w| self.local(w)).collect()))
    }

    /// Image of a periodic configuration. The output period word has the
    /// same length as the input's.
    fn apply_to_cyclic(&self, x: &CyclicWord) -> CyclicWord {
        let r = self.radius();
        let padded = x.padded(r, x.len(), r);
        let image = self
            .apply_to_word(&padded)
            .expect("padded word always covers the window");
        CyclicWord::new(image)
    }
}

/// A local rule stored as a lookup table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RuleTableCA {
    alphabet: Alphabet,
    radius: usize,
    table: Vec<Symbol>,
}

impl RuleTableCA {
    pub fn new(alphabet: Alphabet, radius: usize, table: Vec<Symbol>) -> Result<Self> {
        let expected = checked_pow(alphabet.size(), 2 * radius + 1);
        if expected != table.len() as u128 {
            return Err(Error::TableLength {
                found: table.len(),
                expected: usize::try_from(expected).unwrap_or(usize::MAX),
            });
        }
        alphabet.check_word(&table)?;
        Ok(RuleTableCA {
            alphabet,
            radius,
            table,
        })
    }

    /// Elementary CA in Wolfram numbering: window `abc` maps to bit
    /// `4a + 2b + c` of `rule`.
    pub fn elementary(rule: u8) -> Self {
        let table = (0..8).map(|i| (rule >> i) & 1).collect();
        RuleTableCA {
            alphabet: Alphabet::BINARY,
            radius: 1,
            table,
        }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        RuleTableCA {
            alphabet,
            radius: 0,
            table: alphabet.symbols().collect(),
        }
    }

    /// Radius-0 CA applying `images` cellwise.
    pub fn symbol_map(alphabet: Alphabet, images: &[Symbol]) -> Result<Self> {
        RuleTableCA::new(alphabet, 0, images.to_vec())
    }

    /// The left shift `(σx)_i = x_{i+1}`, as a radius-1 rule reading the right neighbour.
    pub fn left_shift(alphabet: Alphabet) -> Self {
        RuleTableCA::from_fn(alphabet, 1, |w| w[2], Budget::unlimited())
            .expect("k^3 windows always fit")
    }

    pub fn from_fn(
        alphabet: Alphabet,
        radius: usize,
        rule: impl Fn(&[Symbol]) -> Symbol,
        budget: Budget,
    ) -> Result<Self> {
        let count = budget.check_pow(alphabet.size(), 2 * radius + 1)?;
        let mut window = vec![0; 2 * radius + 1];
        let mut table = Vec::with_capacity(count);
        for index in 0..count {
            alphabet.fill_word_at(index, &mut window);
            table.push(rule(&window));
        }
        RuleTableCA::new(alphabet, radius, table)
    }

    /// Tabulates any CA.
    pub fn materialize(ca: &dyn CellularAutomaton, budget: Budget) -> Result<Self> {
        RuleTableCA::from_fn(ca.alphabet(), ca.radius(), |w| ca.local(w), budget)
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    /// Wolfram number, when this is a binary radius-1 rule.
    pub fn wolfram_number(&self) -> Option<u8> {
        (self.alphabet == Alphabet::BINARY && self.radius == 1).then(|| {
            self.table
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (b << i))
        })
    }

    /// The same CA with its radius enlarged to `radius` (extra cells ignored).
    pub fn widen(&self, radius: usize, budget: Budget) -> Result<Self> {
        assert!(radius >= self.radius);
        let margin = radius - self.radius;
        RuleTableCA::from_fn(
            self.alphabet,
            radius,
            |w| self.local(&w[margin..w.len() - margin]),
            budget,
        )
    }
}

impl CellularAutomaton for RuleTableCA {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn local(&self, window: &[Symbol]) -> Symbol {
        debug_assert_eq!(window.len(), self.window_len());
        self.table[self.alphabet.index_of(window)]
    }

    fn apply_to_word(&self, word: &[Symbol]) -> Result<Word> {
        let len = self.window_len();
        if word.len() < len {
            return Err(Error::WordTooShort {
                len: word.len(),
                needed: len,
            });
        }
        let k = self.alphabet.size();
        let top = k.pow(len as u32 - 1);
        let mut index = self.alphabet.index_of(&word[..len]);
        let mut out = Vec::with_capacity(word.len() - len + 1);
        out.push(self.table[index]);
        for &a in &word[len..] {
            index = (index % top) * k + a as usize;
            out.push(self.table[index]);
        }
        Ok(Word(out))
    }
}

impl fmt::Debug for RuleTableCA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.wolfram_number() {
            Some(n) => write!(f, "RuleTableCA(eca:{n})"),
            None => write!(
                f,
                "RuleTableCA(k={}, r={}, table={})",
                self.alphabet,
                self.radius,
                Word(self.table.clone())
            ),
        }
    }
}

type LocalRule = dyn Fn(&[Symbol]) -> Symbol + Send + Sync;

/// A CA given by an evaluation procedure and a declared radius.
///
/// The procedure must be a pure function of the window.
#[derive(Clone)]
pub struct ProceduralCA {
    alphabet: Alphabet,
    radius: usize,
    name: String,
    eval: Arc<LocalRule>,
}

impl ProceduralCA {
    pub fn new(
        alphabet: Alphabet,
        radius: usize,
        name: impl Into<String>,
        eval: impl Fn(&[Symbol]) -> Symbol + Send + Sync + 'static,
    ) -> Self {
        ProceduralCA {
            alphabet,
            radius,
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl CellularAutomaton for ProceduralCA {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn local(&self, window: &[Symbol]) -> Symbol {
        debug_assert_eq!(window.len(), self.window_len());
        (self.eval)(window)
    }
}

impl fmt::Debug for ProceduralCA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProceduralCA({}, k={}, r={})",
            self.name, self.alphabet, self.radius
        )
    }
}

/// Either representation; the result type of the algebra.
#[derive(Clone, Debug)]
pub enum Ca {
    Table(RuleTableCA),
    Procedural(ProceduralCA),
}

impl Ca {
    pub fn as_table(&self) -> Option<&RuleTableCA> {
        match self {
            Ca::Table(t) => Some(t),
            Ca::Procedural(_) => None,
        }
    }

    pub fn to_table(&self, budget: Budget) -> Result<RuleTableCA> {
        match self {
            Ca::Table(t) => Ok(t.clone()),
            Ca::Procedural(p) => RuleTableCA::materialize(p, budget),
        }
    }

    fn inner(&self) -> &dyn CellularAutomaton {
        match self {
            Ca::Table(t) => t,
            Ca::Procedural(p) => p,
        }
    }
}

impl From<RuleTableCA> for Ca {
    fn from(t: RuleTableCA) -> Self {
        Ca::Table(t)
    }
}

impl From<ProceduralCA> for Ca {
    fn from(p: ProceduralCA) -> Self {
        Ca::Procedural(p)
    }
}

impl CellularAutomaton for Ca {
    fn alphabet(&self) -> Alphabet {
        self.inner().alphabet()
    }

    fn radius(&self) -> usize {
        self.inner().radius()
    }

    fn local(&self, window: &[Symbol]) -> Symbol {
        self.inner().local(window)
    }

    fn apply_to_word(&self, word: &[Symbol]) -> Result<Word> {
        self.inner().apply_to_word(word)
    }
}

fn same_alphabet(f: &dyn CellularAutomaton, g: &dyn CellularAutomaton) -> Result<Alphabet> {
    if f.alphabet() == g.alphabet() {
        Ok(f.alphabet())
    } else {
        Err(Error::AlphabetMismatch {
            left: f.alphabet().size(),
            right: g.alphabet().size(),
        })
    }
}

/// `f ∘ g`: first `g`, then `f`. The result has radius `r_f + r_g`; it is a
/// table when both inputs are tables and the table fits the budget.
pub fn compose(f: &Ca, g: &Ca, budget: Budget) -> Result<Ca> {
    let alphabet = same_alphabet(f, g)?;
    let rf = f.radius();
    let rg = g.radius();
    let radius = rf + rg;
    let window_len = 2 * radius + 1;
    if let (Ca::Table(ft), Ca::Table(gt)) = (f, g) {
        let required = checked_pow(alphabet.size(), window_len);
        if budget.check(required).is_ok() {
            let mut window = vec![0; window_len];
            let mut middle = vec![0; 2 * rf + 1];
            let table = (0..required as usize)
                .map(|index| {
                    alphabet.fill_word_at(index, &mut window);
                    for (j, slot) in middle.iter_mut().enumerate() {
                        *slot = gt.local(&window[j..j + 2 * rg + 1]);
                    }
                    ft.local(&middle)
                })
                .collect();
            return Ok(Ca::Table(RuleTableCA {
                alphabet,
                radius,
                table,
            }));
        }
    }
    let (f, g) = (f.clone(), g.clone());
    let name = format!("compose(r={rf}, r={rg})");
    Ok(Ca::Procedural(ProceduralCA::new(
        alphabet,
        radius,
        name,
        move |window| {
            let middle: Vec<Symbol> = (0..2 * rf + 1)
                .map(|j| g.local(&window[j..j + 2 * rg + 1]))
                .collect();
            f.local(&middle)
        },
    )))
}

/// `ca` composed with itself `n` times; `power(ca, 0)` is the radius-0 identity.
pub fn power(ca: &Ca, n: usize, budget: Budget) -> Result<Ca> {
    let mut acc = Ca::Table(RuleTableCA::identity(ca.alphabet()));
    for _ in 0..n {
        acc = compose(ca, &acc, budget)?;
    }
    Ok(acc)
}

/// First window (length `2·max(r_f, r_g) + 1`, lexicographic order) on which
/// `f` and `g` disagree.
pub fn first_difference(
    f: &dyn CellularAutomaton,
    g: &dyn CellularAutomaton,
    budget: Budget,
) -> Result<Option<Word>> {
    let alphabet = same_alphabet(f, g)?;
    let radius = f.radius().max(g.radius());
    let count = budget.check_pow(alphabet.size(), 2 * radius + 1)?;
    let (mf, mg) = (radius - f.radius(), radius - g.radius());
    let len = 2 * radius + 1;
    let mut window = vec![0; len];
    for index in 0..count {
        alphabet.fill_word_at(index, &mut window);
        if f.local(&window[mf..len - mf]) != g.local(&window[mg..len - mg]) {
            return Ok(Some(Word(window)));
        }
    }
    Ok(None)
}

/// Extensional equality, decided on all windows at the common radius.
pub fn equals(f: &dyn CellularAutomaton, g: &dyn CellularAutomaton, budget: Budget) -> Result<bool> {
    Ok(first_difference(f, g, budget)?.is_none())
}

/// Outcome of [`sampled_agreement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Agreement {
    Agree {
        cyclic_checked: usize,
        random_checked: usize,
    },
    CyclicDisagreement {
        point: CyclicWord,
        left: CyclicWord,
        right: CyclicWord,
    },
    WordDisagreement {
        word: Word,
        left: Word,
        right: Word,
    },
}

impl Agreement {
    pub fn agrees(&self) -> bool {
        matches!(self, Agreement::Agree { .. })
    }
}

/// Compares `f` and `g` on every cyclic word of length `1..=periods` and on
/// `trials` random words carrying full margins. Deterministic in `seed`.
pub fn sampled_agreement(
    f: &dyn CellularAutomaton,
    g: &dyn CellularAutomaton,
    periods: usize,
    trials: usize,
    seed: u64,
) -> Result<Agreement> {
    let alphabet = same_alphabet(f, g)?;
    let mut cyclic_checked = 0;
    for n in 1..=periods {
        for word in alphabet.words(n) {
            let point = CyclicWord::new(word);
            let left = f.apply_to_cyclic(&point);
            let right = g.apply_to_cyclic(&point);
            if left != right {
                return Ok(Agreement::CyclicDisagreement { point, left, right });
            }
            cyclic_checked += 1;
        }
    }
    let radius = f.radius().max(g.radius());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let len = 2 * radius + 1 + rng.gen_range(0..16);
        let word: Vec<Symbol> = (0..len)
            .map(|_| rng.gen_range(0..alphabet.size()) as Symbol)
            .collect();
        let mut left = f.apply_to_word(&word)?.into_inner();
        let mut right = g.apply_to_word(&word)?.into_inner();
        // Trim the larger-radius margins so both cover the same cells.
        let trim_left = radius - f.radius();
        let trim_right = radius - g.radius();
        left = left[trim_left..left.len() - trim_left].to_vec();
        right = right[trim_right..right.len() - trim_right].to_vec();
        if left != right {
            return Ok(Agreement::WordDisagreement {
                word: Word(word),
                left: Word(left),
                right: Word(right),
            });
        }
    }
    Ok(Agreement::Agree {
        cyclic_checked,
        random_checked: trials,
    })
}

/// Offsets `d ∈ [-r, r]` the local rule actually depends on.
pub fn minimal_neighborhood(ca: &dyn CellularAutomaton, budget: Budget) -> Result<Vec<isize>> {
    let alphabet = ca.alphabet();
    let k = alphabet.size();
    let len = ca.window_len();
    let count = budget.check_pow(k, len)?;
    let outputs = RuleTableCA::materialize(ca, budget)?.table;
    let r = ca.radius() as isize;
    let mut offsets = Vec::new();
    for pos in 0..len {
        let place = k.pow((len - 1 - pos) as u32);
        let depends = (0..count).any(|index| {
            let digit = (index / place) % k;
            // only compare against larger digits; each pair is seen once
            (digit + 1..k).any(|other| outputs[index] != outputs[index + (other - digit) * place])
        });
        if depends {
            offsets.push(pos as isize - r);
        }
    }
    Ok(offsets)
}

/// Shrinks the radius to the largest offset of the minimal neighbourhood.
pub fn minimize_radius(ca: &dyn CellularAutomaton, budget: Budget) -> Result<RuleTableCA> {
    let neighborhood = minimal_neighborhood(ca, budget)?;
    let radius = neighborhood.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0);
    let margin = ca.radius() - radius;
    let len = ca.window_len();
    RuleTableCA::from_fn(
        ca.alphabet(),
        radius,
        |w| {
            let mut full = vec![0; len];
            full[margin..margin + w.len()].copy_from_slice(w);
            ca.local(&full)
        },
        budget,
    )
}

pub fn is_idempotent(ca: &Ca, budget: Budget) -> Result<bool> {
    let square = compose(ca, ca, budget)?;
    equals(&square, ca, budget)
}

/// Least `m <= bound` with `ca^(m+1) == ca^m`.
pub fn is_eventually_idempotent(ca: &Ca, bound: usize, budget: Budget) -> Result<Option<usize>> {
    let mut current = power(ca, 0, budget)?;
    for m in 0..=bound {
        let next = compose(ca, &current, budget)?;
        if equals(&next, &current, budget)? {
            return Ok(Some(m));
        }
        current = next;
    }
    Ok(None)
}

/// Symbols `q` such that every window showing `q` at a cell of the minimal
/// neighbourhood maps to `q`. Empty when the neighbourhood has fewer than two cells.
pub fn spreading_states(ca: &dyn CellularAutomaton, budget: Budget) -> Result<BTreeSet<Symbol>> {
    let neighborhood = minimal_neighborhood(ca, budget)?;
    let mut states = BTreeSet::new();
    if neighborhood.len() < 2 {
        return Ok(states);
    }
    let alphabet = ca.alphabet();
    let r = ca.radius() as isize;
    let len = ca.window_len();
    let count = budget.check_pow(alphabet.size(), len)?;
    let positions: Vec<usize> = neighborhood.iter().map(|d| (d + r) as usize).collect();
    let mut window = vec![0; len];
    'symbols: for q in alphabet.symbols() {
        for index in 0..count {
            alphabet.fill_word_at(index, &mut window);
            if positions.iter().any(|&p| window[p] == q) && ca.local(&window) != q {
                continue 'symbols;
            }
        }
        states.insert(q);
    }
    Ok(states)
}

/// All unary windows `a^(2r+1)` map to one symbol.
pub fn is_constant_on_unary(ca: &dyn CellularAutomaton) -> bool {
    let len = ca.window_len();
    let mut images = ca
        .alphabet()
        .symbols()
        .map(|a| ca.local(&vec![a; len]));
    let first = images.next().expect("alphabet is nonempty");
    images.all(|b| b == first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eca(n: u8) -> Ca {
        Ca::Table(RuleTableCA::elementary(n))
    }

    fn w(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| b - b'0').collect()
    }

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::new(w(s))
    }

    fn k3_cascade() -> Ca {
        // 2 -> 1, 1 -> 0, 0 -> 0
        Ca::Table(RuleTableCA::symbol_map(Alphabet::new(3).unwrap(), &[0, 0, 1]).unwrap())
    }

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn apply_to_word_examples() {
        let id = RuleTableCA::elementary(204);
        assert_eq!(id.apply_to_word(&w("01101")).unwrap().symbols(), &w("110")[..]);
        assert_eq!(RuleTableCA::elementary(102).apply_to_word(&w("0011")).unwrap().symbols(), &w("10")[..]);
        assert_eq!(RuleTableCA::elementary(0).apply_to_word(&w("10110")).unwrap().symbols(), &w("000")[..]);
        assert_eq!(
            id.apply_to_word(&w("01")),
            Err(Error::WordTooShort { len: 2, needed: 3 })
        );
    }

    #[test]
    fn table_and_generic_application_agree() {
        let ca = RuleTableCA::elementary(110);
        let generic = ProceduralCA::new(Alphabet::BINARY, 1, "110", move |win| ca.local(win));
        let ca = RuleTableCA::elementary(110);
        let word = w("0110100111010001");
        assert_eq!(ca.apply_to_word(&word), generic.apply_to_word(&word));
    }

    #[test]
    fn apply_to_cyclic_examples() {
        let xor = RuleTableCA::elementary(102);
        assert_eq!(xor.apply_to_cyclic(&cw("001")), cw("011"));
        let and = RuleTableCA::elementary(136);
        let image = and.apply_to_cyclic(&cw("01"));
        assert_eq!(image, cw("00"));
        assert_eq!(image.least_period(), 1);
        assert_eq!(image.len(), 2);
        for rule in 0..=255 {
            assert_eq!(RuleTableCA::elementary(rule).apply_to_cyclic(&cw("0")).least_period(), 1);
        }
    }

    #[test]
    fn compose_examples() {
        let xor = eca(102);
        let c = compose(&Ca::Table(RuleTableCA::identity(Alphabet::BINARY)), &xor, B).unwrap();
        assert!(equals(&c, &xor, B).unwrap());
        assert_eq!(minimize_radius(&c, B).unwrap().radius(), 1);
        let zero = compose(&eca(0), &eca(110), B).unwrap();
        assert!(equals(&zero, &RuleTableCA::symbol_map(Alphabet::BINARY, &[0, 0]).unwrap(), B).unwrap());
        let xx = compose(&xor, &xor, B).unwrap();
        assert_eq!(xx.radius(), 2);
        assert!(xx.as_table().is_some());
        assert_eq!(xx.local(&w("00110")), 1);
    }

    #[test]
    fn compose_falls_back_to_procedural() {
        let tiny = Budget(8);
        let xx = compose(&eca(102), &eca(102), tiny).unwrap();
        assert!(xx.as_table().is_none());
        assert_eq!(xx.local(&w("00110")), 1);
        assert!(matches!(
            compose(&eca(0), &k3_cascade(), B),
            Err(Error::AlphabetMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn power_examples() {
        let id = RuleTableCA::identity(Alphabet::BINARY);
        assert!(equals(&power(&eca(102), 0, B).unwrap(), &id, B).unwrap());
        assert!(equals(&power(&eca(204), 5, B).unwrap(), &id, B).unwrap());
        let sq = power(&k3_cascade(), 2, B).unwrap();
        let expected = RuleTableCA::symbol_map(Alphabet::new(3).unwrap(), &[0, 0, 0]).unwrap();
        assert!(equals(&sq, &expected, B).unwrap());
    }

    #[test]
    fn equality_examples() {
        let id = RuleTableCA::identity(Alphabet::BINARY);
        assert!(equals(&eca(204), &id, B).unwrap());
        assert!(!equals(&eca(102), &eca(90), B).unwrap());
        assert_ne!(eca(102).local(&w("100")), eca(90).local(&w("100")));
        assert_eq!(first_difference(&eca(102), &eca(90), B).unwrap(), Some(Word(w("010"))));
        let idid = compose(&Ca::from(id.clone()), &Ca::from(id.clone()), B).unwrap();
        assert!(equals(&idid, &id, B).unwrap());
        assert!(matches!(
            equals(&eca(102), &eca(90), Budget(4)),
            Err(Error::ExhaustiveCheckInfeasible { required: 8, budget: 4 })
        ));
    }

    #[test]
    fn sampled_agreement_examples() {
        let report = sampled_agreement(&eca(102), &eca(90), 3, 0, 1).unwrap();
        match report {
            Agreement::CyclicDisagreement { point, .. } => assert!(point.len() <= 3),
            other => panic!("expected a cyclic witness, got {other:?}"),
        }
        let id = RuleTableCA::identity(Alphabet::BINARY);
        assert!(sampled_agreement(&eca(204), &id, 8, 1000, 7).unwrap().agrees());
        assert_eq!(
            sampled_agreement(&eca(30), &eca(30), 4, 50, 3).unwrap(),
            sampled_agreement(&eca(30), &eca(30), 4, 50, 3).unwrap()
        );
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(minimal_neighborhood(&eca(204), B).unwrap(), vec![0]);
        assert_eq!(minimal_neighborhood(&eca(102), B).unwrap(), vec![0, 1]);
        assert!(minimal_neighborhood(&eca(0), B).unwrap().is_empty());
        assert_eq!(minimize_radius(&eca(0), B).unwrap().radius(), 0);
    }

    #[test]
    fn idempotency_examples() {
        assert!(is_idempotent(&eca(204), B).unwrap());
        assert!(is_idempotent(&eca(0), B).unwrap());
        assert!(!is_idempotent(&eca(102), B).unwrap());
        let xx = compose(&eca(102), &eca(102), B).unwrap();
        assert_ne!(xx.local(&w("00010")), eca(102).local(&w("001")));
    }

    #[test]
    fn eventual_idempotency_examples() {
        assert_eq!(is_eventually_idempotent(&k3_cascade(), 5, B).unwrap(), Some(2));
        assert_eq!(is_eventually_idempotent(&eca(204), 3, B).unwrap(), Some(0));
        assert_eq!(is_eventually_idempotent(&eca(102), 4, B).unwrap(), None);
    }

    #[test]
    fn spreading_examples() {
        assert_eq!(spreading_states(&eca(136), B).unwrap(), BTreeSet::from([0]));
        assert!(spreading_states(&eca(204), B).unwrap().is_empty());
        assert!(spreading_states(&eca(102), B).unwrap().is_empty());
    }

    #[test]
    fn unary_examples() {
        assert!(is_constant_on_unary(&eca(0)));
        assert!(!is_constant_on_unary(&eca(136)));
        let k3 = Alphabet::new(3).unwrap();
        let rule = RuleTableCA::from_fn(
            k3,
            1,
            |win| {
                if win.contains(&0) || win.iter().all(|&a| a == win[0]) {
                    0
                } else {
                    win[1]
                }
            },
            B,
        )
        .unwrap();
        assert!(is_constant_on_unary(&rule));
    }

    #[test]
    fn left_shift_is_eca_170() {
        assert_eq!(RuleTableCA::left_shift(Alphabet::BINARY).wolfram_number(), Some(170));
        assert_eq!(RuleTableCA::left_shift(Alphabet::BINARY).apply_to_cyclic(&cw("01")), cw("10"));
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            RuleTableCA::new(Alphabet::BINARY, 1, vec![0; 7]),
            Err(Error::TableLength { found: 7, expected: 8 })
        ));
        assert!(matches!(
            RuleTableCA::new(Alphabet::BINARY, 0, vec![0, 2]),
            Err(Error::InvalidSymbol { symbol: 2, k: 2 })
        ));
    }
}
