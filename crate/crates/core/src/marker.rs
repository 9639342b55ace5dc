//! A marker CA: sparse marks that cover every non-periodic stretch.
//!
//! For a parameter `N` the output `M(x) ∈ {0,1}^Z` satisfies
//!
//! * any two 1s are at distance at least `N`, and
//! * if `M(x)` is 0 on `(i-N, i+N)` then `x[i-N..i+N]` has a period `p < N`.
//!
//! A position is a candidate when its window `x[i-N..i+N]` has no period
//! below `N`. Candidates are taken in order of their window's rank (windows
//! sorted lexicographically) and marked unless an earlier mark lies within
//! distance `N - 1`.

use crate::budget::Budget;
use crate::ca::ProceduralCA;
use crate::cyclic::CyclicWord;
use crate::error::{Error, Result};
use crate::word::{has_period_below, Alphabet, Symbol, Word};

#[derive(Debug, Clone)]
pub struct MarkerCA {
    alphabet: Alphabet,
    n: usize,
    priority: Vec<Word>,
    /// Rank of each window by its base-k index; `u32::MAX` for periodic windows.
    rank: Vec<u32>,
}

const UNRANKED: u32 = u32::MAX;

pub fn build_marker(alphabet: Alphabet, n: usize, budget: Budget) -> Result<MarkerCA> {
    if n == 0 {
        return Err(Error::InvalidArgument("the marker gap N must be at least 1".into()));
    }
    let count = budget.check_pow(alphabet.size(), 2 * n + 1)?;
    let mut rank = vec![UNRANKED; count];
    let mut priority = Vec::new();
    let mut window = vec![0; 2 * n + 1];
    for (index, slot) in rank.iter_mut().enumerate() {
        alphabet.fill_word_at(index, &mut window);
        if !has_period_below(&window, n) {
            *slot = priority.len() as u32;
            priority.push(Word(window.clone()));
        }
    }
    Ok(MarkerCA {
        alphabet,
        n,
        priority,
        rank,
    })
}

impl MarkerCA {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn gap(&self) -> usize {
        self.n
    }

    pub fn window_length(&self) -> usize {
        2 * self.n + 1
    }

    /// Windows without a period below `N`, highest priority first.
    pub fn priority_list(&self) -> &[Word] {
        &self.priority
    }

    pub fn rank_of(&self, window: &[Symbol]) -> Option<usize> {
        let r = self.rank[self.alphabet.index_of(window)];
        (r != UNRANKED).then_some(r as usize)
    }

    /// `N + (N-1)·|priority list|`: a radius at which the greedy rule is a
    /// genuine local rule. Evaluation never needs a table this large.
    pub fn declared_radius(&self) -> usize {
        self.n + (self.n - 1) * self.priority.len()
    }

    /// Greedy marking given the rank of each position; `distance` measures
    /// how far apart two positions are.
    fn greedy(&self, ranks: &[u32], distance: impl Fn(usize, usize) -> usize) -> Vec<Symbol> {
        let mut order: Vec<usize> = (0..ranks.len()).filter(|&i| ranks[i] != UNRANKED).collect();
        order.sort_by_key(|&i| (ranks[i], i));
        let mut marks = vec![0; ranks.len()];
        let mut placed: Vec<usize> = Vec::new();
        let reach = self.n - 1;
        for i in order {
            // only nearby marks matter; a linear scan is fine at desk scale
            if placed.iter().all(|&j| distance(i, j) > reach) {
                marks[i] = 1;
                placed.push(i);
            }
        }
        marks
    }

    /// Marks for positions `N..|x|-N` of a finite word.
    pub fn mark_word(&self, x: &[Symbol]) -> Result<Word> {
        self.alphabet.check_word(x)?;
        let len = self.window_length();
        if x.len() < len {
            return Err(Error::WordTooShort {
                len: x.len(),
                needed: len,
            });
        }
        let ranks: Vec<u32> = x.windows(len).map(|w| self.rank[self.alphabet.index_of(w)]).collect();
        Ok(Word(self.greedy(&ranks, |i, j| i.abs_diff(j))))
    }

    /// Marks of a periodic configuration, with the same period word length.
    pub fn mark_cyclic(&self, x: &CyclicWord) -> CyclicWord {
        let p = x.least_period();
        let root = x.primitive();
        let ranks: Vec<u32> = (0..p)
            .map(|i| {
                let w: Vec<Symbol> = (i as isize - self.n as isize..=i as isize + self.n as isize)
                    .map(|j| root.at(j))
                    .collect();
                self.rank[self.alphabet.index_of(&w)]
            })
            .collect();
        let marks = self.greedy(&ranks, |i, j| {
            let d = i.abs_diff(j);
            d.min(p - d)
        });
        CyclicWord::new(CyclicWord::new(marks).expand(x.len()))
    }

    /// The marker as a (very wide) procedural CA over the input alphabet,
    /// writing only the symbols 0 and 1.
    pub fn as_procedural(&self) -> ProceduralCA {
        let marker = self.clone();
        let r = self.declared_radius();
        ProceduralCA::new(self.alphabet, r, format!("marker(N={})", self.n), move |window| {
            let marks = marker.mark_word(window).expect("window has full length");
            marks[r - marker.n]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::CellularAutomaton;
    use proptest::prelude::*;

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::new(Word::parse(s, Alphabet::BINARY).unwrap())
    }

    fn marker(n: usize) -> MarkerCA {
        build_marker(Alphabet::BINARY, n, Budget::DEFAULT).unwrap()
    }

    fn ones(w: &[Symbol]) -> Vec<usize> {
        (0..w.len()).filter(|&i| w[i] == 1).collect()
    }

    #[test]
    fn priority_list_is_the_aperiodic_windows() {
        let m = marker(2);
        assert_eq!(m.priority_list().len(), 30);
        assert_eq!(m.declared_radius(), 32);
        assert!(m.priority_list().windows(2).all(|p| p[0] < p[1]));
        assert_eq!(m.priority_list()[0].symbols(), &[0, 0, 0, 0, 1]);
    }

    #[test]
    fn examples() {
        let m = marker(2);
        assert_eq!(m.mark_cyclic(&cw("0")), cw("0"));
        let marks = m.mark_cyclic(&cw("0011"));
        let at = ones(marks.period_word());
        assert!(!at.is_empty());
        for &i in &at {
            for &j in &at {
                let d = i.abs_diff(j);
                assert!(i == j || d.min(4 - d) >= 2);
            }
        }
    }

    #[test]
    fn top_window_is_always_marked() {
        let m = marker(3);
        let top = m.priority_list()[0].clone();
        let x = Word::concat(&[&[1, 0, 1, 0, 1, 0], &top, &[1, 0, 1, 0, 1, 0]]);
        let marks = m.mark_word(&x).unwrap();
        // centre of `top` sits at position 6 + N of x
        assert_eq!(marks[6], 1);
    }

    #[test]
    fn far_apart_copies_are_both_marked() {
        let m = marker(2);
        let w = [0, 0, 0, 0, 1];
        let x = Word::concat(&[&w, &[1; 9], &w]);
        let marks = m.mark_word(&x).unwrap();
        assert_eq!(marks[0], 1);
        assert_eq!(marks[x.len() - 5], 1);
    }

    #[test]
    fn procedural_form_agrees_on_cycles() {
        let m = marker(2);
        let ca = m.as_procedural();
        for n in 1..=8 {
            for w in Alphabet::BINARY.words(n) {
                let x = CyclicWord::new(w);
                assert_eq!(ca.apply_to_cyclic(&x), m.mark_cyclic(&x), "{x}");
            }
        }
    }

    fn check_contract(m: &MarkerCA, x: &[Symbol]) -> std::result::Result<(), TestCaseError> {
        let n = m.gap();
        let marks = m.mark_word(x)?;
        let at = ones(&marks);
        for pair in at.windows(2) {
            prop_assert!(pair[1] - pair[0] >= n);
        }
        for i in 0..marks.len() {
            let window = &x[i..i + 2 * n + 1];
            if !has_period_below(window, n) {
                prop_assert!(at.iter().any(|&j| j.abs_diff(i) < n), "uncovered at {}", i);
            }
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn spacing_and_coverage(x in proptest::collection::vec(0u8..2, 7..120), n in 1usize..4) {
            check_contract(&marker(n), &x)?;
        }

        #[test]
        fn marking_commutes_with_rotation(x in proptest::collection::vec(0u8..3, 1..16), s in 0usize..16) {
            let m = build_marker(Alphabet::new(3).unwrap(), 2, Budget::DEFAULT).unwrap();
            let x = CyclicWord::new(x);
            prop_assert_eq!(m.mark_cyclic(&x.rotate(s)), m.mark_cyclic(&x).rotate(s));
        }
    }
}
