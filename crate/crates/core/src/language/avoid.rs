use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, One, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Aho–Corasick automaton for a finite set of forbidden words, with every
/// state that completes a forbidden word removed.
///
/// Reading a word from [`AvoidAutomaton::START`] stays inside the automaton
/// exactly while no forbidden word has occurred.
#[derive(Debug, Clone)]
pub struct AvoidAutomaton {
    alphabet: Alphabet,
    delta: Vec<Option<u32>>,
}

impl AvoidAutomaton {
    pub const START: usize = 0;

    pub fn new(alphabet: Alphabet, forbidden: &[Word]) -> Result<Self> {
        let k = alphabet.size();
        for w in forbidden {
            alphabet.check_word(w)?;
            if w.is_empty() {
                return Err(Error::InvalidArgument("the empty word cannot be forbidden".into()));
            }
        }
        // trie
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut terminal = vec![false];
        for w in forbidden {
            let mut state = 0;
            for &a in w.iter() {
                state = match children[state][a as usize] {
                    Some(next) => next,
                    None => {
                        children.push(vec![None; k]);
                        terminal.push(false);
                        let next = children.len() - 1;
                        children[state][a as usize] = Some(next);
                        next
                    }
                };
            }
            terminal[state] = true;
        }
        // failure links, breadth first; goto becomes a complete transition table
        let states = children.len();
        let mut goto = vec![0usize; states * k];
        let mut fail = vec![0usize; states];
        let mut queue = VecDeque::new();
        for a in 0..k {
            match children[0][a] {
                Some(next) => {
                    goto[a] = next;
                    queue.push_back(next);
                }
                None => goto[a] = 0,
            }
        }
        while let Some(state) = queue.pop_front() {
            terminal[state] |= terminal[fail[state]];
            for a in 0..k {
                match children[state][a] {
                    Some(next) => {
                        fail[next] = goto[fail[state] * k + a];
                        goto[state * k + a] = next;
                        queue.push_back(next);
                    }
                    None => goto[state * k + a] = goto[fail[state] * k + a],
                }
            }
        }
        // drop dead states and renumber
        let mut renumber = vec![None; states];
        let mut live = 0u32;
        for (state, slot) in renumber.iter_mut().enumerate() {
            if !terminal[state] {
                *slot = Some(live);
                live += 1;
            }
        }
        if terminal[0] {
            return Err(Error::InvalidArgument("the empty word cannot be forbidden".into()));
        }
        let mut delta = Vec::with_capacity(live as usize * k);
        for state in (0..states).filter(|&s| !terminal[s]) {
            for a in 0..k {
                delta.push(renumber[goto[state * k + a]]);
            }
        }
        Ok(AvoidAutomaton { alphabet, delta })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len() / self.alphabet.size()
    }

    /// `None` once a forbidden word has been completed.
    pub fn step(&self, state: usize, symbol: Symbol) -> Option<usize> {
        self.delta[state * self.alphabet.size() + symbol as usize].map(|s| s as usize)
    }

    pub fn run(&self, word: &[Symbol]) -> Option<usize> {
        word.iter().try_fold(Self::START, |s, &a| self.step(s, a))
    }

    /// `table[j][s]`: the number of words of length `j` that can be read
    /// from state `s`. `None` if some entry overflows `T`.
    pub fn completions<T: Clone + Zero + One + CheckedAdd>(&self, max_len: usize) -> Option<Vec<Vec<T>>> {
        let states = self.state_count();
        let mut table = Vec::with_capacity(max_len + 1);
        table.push(vec![T::one(); states]);
        for j in 1..=max_len {
            let prev: &Vec<T> = &table[j - 1];
            let mut row = Vec::with_capacity(states);
            for s in 0..states {
                let mut total = T::zero();
                for a in self.alphabet.symbols() {
                    if let Some(t) = self.step(s, a) {
                        total = total.checked_add(&prev[t])?;
                    }
                }
                row.push(total);
            }
            table.push(row);
        }
        Some(table)
    }
}

/// Number of length-`n` words over the alphabet containing none of `forbidden`.
pub fn count_avoiding(alphabet: Alphabet, forbidden: &[Word], n: usize) -> Result<BigUint> {
    let automaton = AvoidAutomaton::new(alphabet, forbidden)?;
    let mut counts = vec![BigUint::zero(); automaton.state_count()];
    counts[AvoidAutomaton::START] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); automaton.state_count()];
        for (s, c) in counts.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for a in alphabet.symbols() {
                if let Some(t) = automaton.step(s, a) {
                    next[t] += c;
                }
            }
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// Is the one-word shift of finite type `X_{S, {w}}` mixing?
///
/// Works on the graph whose vertices are the `w`-free words of length
/// `|w| - 1`: mixing means the essential part is strongly connected,
/// aperiodic and not a single cycle (which would be a finite orbit).
pub fn is_mixing_avoid(alphabet: Alphabet, w: &[Symbol], budget: Budget) -> Result<bool> {
    alphabet.check_word(w)?;
    if w.is_empty() {
        return Ok(false);
    }
    let k = alphabet.size();
    let len = w.len() - 1;
    let vertices = budget.check_pow(k, len)?;
    budget.check(vertices as u128 * k as u128)?;
    // edge u -> v labelled by the length-|w| word u·a; forbidden if it equals w
    let forbidden = alphabet.index_of(w);
    let successors = |u: usize| {
        (0..k)
            .filter(move |&a| u * k + a != forbidden)
            .map(move |a| (u * k + a) % vertices)
    };
    let mut out_deg = vec![0usize; vertices];
    let mut in_deg = vec![0usize; vertices];
    for u in 0..vertices {
        for v in successors(u) {
            out_deg[u] += 1;
            in_deg[v] += 1;
        }
    }
    let mut alive = vec![true; vertices];
    let mut queue: VecDeque<usize> = (0..vertices).filter(|&u| out_deg[u] == 0 || in_deg[u] == 0).collect();
    for &u in &queue {
        alive[u] = false;
    }
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for u in 0..vertices {
        for v in successors(u) {
            predecessors[v].push(u);
        }
    }
    while let Some(u) = queue.pop_front() {
        for v in successors(u) {
            in_deg[v] -= 1;
            if alive[v] && in_deg[v] == 0 {
                alive[v] = false;
                queue.push_back(v);
            }
        }
        for &p in &predecessors[u] {
            out_deg[p] -= 1;
            if alive[p] && out_deg[p] == 0 {
                alive[p] = false;
                queue.push_back(p);
            }
        }
    }
    let Some(root) = (0..vertices).find(|&u| alive[u]) else {
        return Ok(false);
    };
    let essential = alive.iter().filter(|&&a| a).count();

    // forward BFS levels give the period as a gcd of level differences
    let mut level = vec![usize::MAX; vertices];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut period = 0usize;
    let mut reached = 1;
    let mut branching = false;
    while let Some(u) = queue.pop_front() {
        let next: Vec<usize> = successors(u).filter(|&v| alive[v]).collect();
        branching |= next.len() >= 2;
        for v in next {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                reached += 1;
                queue.push_back(v);
            } else {
                period = gcd(period, (level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    if reached != essential {
        return Ok(false);
    }
    let mut seen = vec![false; vertices];
    seen[root] = true;
    let mut stack = vec![root];
    let mut back = 1;
    while let Some(v) = stack.pop() {
        for &u in &predecessors[v] {
            if alive[u] && !seen[u] {
                seen[u] = true;
                back += 1;
                stack.push(u);
            }
        }
    }
    Ok(back == essential && period == 1 && branching)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
