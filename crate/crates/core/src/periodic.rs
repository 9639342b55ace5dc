//! Points of least period `n` and the periodic-point condition.
//!
//! `Q_n` is the set of configurations whose least period is exactly `n`.
//! A CA is a product of idempotents iff for every `n`, `F(Q_n) = Q_n`
//! implies that `F` fixes `Q_n` pointwise, and surjectivity implies `F` is
//! the identity. Only finitely many `n` can ever be checked; the bound is
//! always the caller's.

use std::collections::HashSet;

use crate::budget::Budget;
use crate::ca::CellularAutomaton;
use crate::cyclic::{least_period, least_rotation, CyclicWord};
use crate::error::Result;
use crate::word::Alphabet;

/// `Q_n`, grouped into shift orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicOrbitSet {
    pub alphabet: Alphabet,
    pub n: usize,
    /// Each orbit lists its canonical (least) rotation first, then
    /// `σ^1, σ^2, ...` of it. Orbits are sorted by their canonical word.
    pub orbits: Vec<Vec<CyclicWord>>,
}

impl PeriodicOrbitSet {
    pub fn len(&self) -> usize {
        self.orbits.len() * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &CyclicWord> {
        self.orbits.iter().flatten()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &CyclicWord> {
        self.orbits.iter().map(|o| &o[0])
    }

    pub fn contains(&self, x: &CyclicWord) -> bool {
        x.least_period() == self.n && self.orbits.binary_search_by(|o| o[0].cmp(&x.canonical())).is_ok()
    }
}

pub fn enumerate_q(alphabet: Alphabet, n: usize, budget: Budget) -> Result<PeriodicOrbitSet> {
    assert!(n >= 1, "periods start at 1");
    let count = budget.check_pow(alphabet.size(), n)?;
    let mut word = vec![0; n];
    let mut orbits = Vec::new();
    for index in 0..count {
        alphabet.fill_word_at(index, &mut word);
        if least_period(&word) == n && least_rotation(&word) == 0 {
            let x = CyclicWord::new(word.clone());
            orbits.push((0..n).map(|s| x.rotate(s)).collect());
        }
    }
    Ok(PeriodicOrbitSet { alphabet, n, orbits })
}

/// `|Q_n| = Σ_{d | n} μ(n/d) k^d`.
pub fn mobius_count(k: usize, n: usize) -> i128 {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(n / d) * (k as i128).pow(d as u32))
        .sum()
}

fn mobius(mut n: usize) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(x, F(x))` for every `x ∈ Q_n`, in the order of [`PeriodicOrbitSet::points`].
///
/// # Panics
///
/// Panics if an image's least period does not divide `n`, which would mean
/// the CA does not commute with the shift.
pub fn action_on_q(ca: &dyn CellularAutomaton, q: &PeriodicOrbitSet) -> Vec<(CyclicWord, CyclicWord)> {
    q.points()
        .map(|x| {
            let y = ca.apply_to_cyclic(x).primitive();
            assert_eq!(q.n % y.least_period(), 0, "image of {x} has period {}", y.least_period());
            (x.clone(), y)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq1Report {
    pub n: usize,
    /// `|Q_n|`
    pub size: usize,
    pub maps_onto: bool,
    pub is_identity_on: bool,
    /// Present iff `maps_onto` holds and `F` moves some point of `Q_n`.
    pub violation_witness: Option<CyclicWord>,
}

impl Eq1Report {
    pub fn violated(&self) -> bool {
        self.violation_witness.is_some()
    }
}

pub fn eq1_check(ca: &dyn CellularAutomaton, n: usize, budget: Budget) -> Result<Eq1Report> {
    let q = enumerate_q(ca.alphabet(), n, budget)?;
    let action = action_on_q(ca, &q);
    // F(Q_n) ⊆ Q_n with |F(Q_n)| = |Q_n| is equality
    let images: HashSet<&CyclicWord> = action.iter().map(|(_, y)| y).collect();
    let maps_onto = action.iter().all(|(_, y)| y.least_period() == n) && images.len() == action.len();
    let moved = action.iter().find(|(x, y)| x != y).map(|(x, _)| x.clone());
    Ok(Eq1Report {
        n,
        size: q.len(),
        maps_onto,
        is_identity_on: moved.is_none(),
        violation_witness: moved.filter(|_| maps_onto),
    })
}

/// Reports for `n = 1..=bound`, stopping after the first violation.
pub fn eq1_reports(ca: &dyn CellularAutomaton, bound: usize, budget: Budget) -> Result<Vec<Eq1Report>> {
    let mut reports = Vec::with_capacity(bound);
    for n in 1..=bound {
        let report = eq1_check(ca, n, budget)?;
        let stop = report.violated();
        reports.push(report);
        if stop {
            break;
        }
    }
    Ok(reports)
}

/// The least `n ≤ bound` at which the condition fails.
pub fn eq1_check_up_to(ca: &dyn CellularAutomaton, bound: usize, budget: Budget) -> Result<Option<Eq1Report>> {
    Ok(eq1_reports(ca, bound, budget)?.pop().filter(Eq1Report::violated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::RuleTableCA;
    use crate::word::Word;
    use proptest::prelude::*;

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::new(Word::parse(s, Alphabet::BINARY).unwrap())
    }

    #[test]
    fn small_q_sets() {
        let q1 = enumerate_q(Alphabet::BINARY, 1, Budget::DEFAULT).unwrap();
        assert_eq!((q1.len(), q1.orbits.len()), (2, 2));
        let q3 = enumerate_q(Alphabet::BINARY, 3, Budget::DEFAULT).unwrap();
        assert_eq!((q3.len(), q3.orbits.len()), (6, 2));
        assert_eq!(q3.representatives().cloned().collect::<Vec<_>>(), vec![cw("001"), cw("011")]);
        let q4 = enumerate_q(Alphabet::BINARY, 4, Budget::DEFAULT).unwrap();
        assert_eq!((q4.len(), q4.orbits.len()), (12, 3));
        assert!(q4.contains(&cw("1000")) && !q4.contains(&cw("1010")));
    }

    #[test]
    fn mobius_matches_brute_force() {
        for k in 2..=3 {
            let alphabet = Alphabet::new(k).unwrap();
            for n in 1..=8 {
                let brute = alphabet.words(n).filter(|w| least_period(w) == n).count();
                assert_eq!(mobius_count(k, n), brute as i128);
                assert_eq!(enumerate_q(alphabet, n, Budget::DEFAULT).unwrap().len(), brute);
            }
        }
    }

    #[test]
    fn action_examples() {
        let xor = RuleTableCA::elementary(102);
        let q1 = enumerate_q(Alphabet::BINARY, 1, Budget::DEFAULT).unwrap();
        assert!(action_on_q(&xor, &q1).iter().all(|(_, y)| *y == cw("0")));
        let and = RuleTableCA::elementary(136);
        let q2 = enumerate_q(Alphabet::BINARY, 2, Budget::DEFAULT).unwrap();
        assert!(action_on_q(&and, &q2).iter().all(|(_, y)| *y == cw("0")));
        let id = RuleTableCA::elementary(204);
        let q5 = enumerate_q(Alphabet::BINARY, 5, Budget::DEFAULT).unwrap();
        assert!(action_on_q(&id, &q5).iter().all(|(x, y)| x == y));
    }

    #[test]
    fn eq1_examples() {
        let xor = eq1_check(&RuleTableCA::elementary(102), 3, Budget::DEFAULT).unwrap();
        assert!(!xor.maps_onto && xor.violation_witness.is_none());
        let id = eq1_check(&RuleTableCA::elementary(204), 5, Budget::DEFAULT).unwrap();
        assert!(id.maps_onto && id.is_identity_on);
        let shift = RuleTableCA::left_shift(Alphabet::BINARY);
        let report = eq1_check(&shift, 2, Budget::DEFAULT).unwrap();
        assert!(report.maps_onto && !report.is_identity_on);
        assert_eq!(report.violation_witness, Some(cw("01")));

        assert_eq!(eq1_check_up_to(&RuleTableCA::elementary(102), 8, Budget::DEFAULT).unwrap(), None);
        assert_eq!(eq1_check_up_to(&RuleTableCA::elementary(204), 8, Budget::DEFAULT).unwrap(), None);
        assert_eq!(eq1_check_up_to(&shift, 4, Budget::DEFAULT).unwrap().map(|r| r.n), Some(2));
    }

    proptest! {
        #[test]
        fn action_commutes_with_rotation(rule in any::<u8>(), n in 1usize..8) {
            let ca = RuleTableCA::elementary(rule);
            let q = enumerate_q(Alphabet::BINARY, n, Budget::DEFAULT).unwrap();
            for x in q.points() {
                for s in 0..n {
                    prop_assert_eq!(ca.apply_to_cyclic(&x.rotate(s)), ca.apply_to_cyclic(x).rotate(s));
                }
            }
        }
    }
}
