use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::budget::Budget;
use crate::ca::{CellularAutomaton, RuleTableCA};
use crate::error::{Error, Result};
use crate::language::debruijn::DeBruijnGraph;
use crate::word::{Symbol, Word};

type NodeSet = Vec<u64>;

/// The de Bruijn graph read as an automaton over output labels. Every node
/// is initial and accepting, so it accepts exactly the words that occur in
/// images of the rule.
#[derive(Debug)]
pub struct ImageAutomaton {
    graph: DeBruijnGraph,
    budget: Budget,
    subsets: OnceLock<Result<SubsetAutomaton>>,
}

/// Determinization of an [`ImageAutomaton`], restricted to the subsets
/// reachable from the set of all nodes. State 0 is that full set.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    k: usize,
    sets: Vec<NodeSet>,
    delta: Vec<u32>,
    parent: Vec<Option<(u32, Symbol)>>,
    empty: Option<u32>,
}

impl SubsetAutomaton {
    pub fn state_count(&self) -> usize {
        self.sets.len()
    }

    pub fn step(&self, state: usize, symbol: Symbol) -> usize {
        self.delta[state * self.k + symbol as usize] as usize
    }

    pub fn node_count(&self, state: usize) -> usize {
        self.sets[state].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn empty_state(&self) -> Option<usize> {
        self.empty.map(|s| s as usize)
    }

    /// Labels along the breadth-first tree from the full set to `state`.
    fn path_to(&self, mut state: usize) -> Word {
        let mut symbols = Vec::new();
        while let Some((prev, symbol)) = self.parent[state] {
            symbols.push(symbol);
            state = prev as usize;
        }
        symbols.reverse();
        Word(symbols)
    }
}

fn contains(set: &NodeSet, node: usize) -> bool {
    set[node / 64] >> (node % 64) & 1 == 1
}

fn insert(set: &mut NodeSet, node: usize) {
    set[node / 64] |= 1 << (node % 64);
}

impl ImageAutomaton {
    pub fn new(ca: &RuleTableCA, budget: Budget) -> Result<Self> {
        Ok(ImageAutomaton {
            graph: DeBruijnGraph::new(ca, budget)?,
            budget,
            subsets: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &DeBruijnGraph {
        &self.graph
    }

    /// Is `word` a factor of some image?
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let n = self.graph.node_count();
        let mut current = vec![true; n];
        for &b in word {
            let mut next = vec![false; n];
            for u in (0..n).filter(|&u| current[u]) {
                for (_, v, label) in self.graph.edges(u) {
                    if label == b {
                        next[v] = true;
                    }
                }
            }
            if !next.contains(&true) {
                return false;
            }
            current = next;
        }
        true
    }

    /// Built on first use; the number of subset states is charged to the budget.
    pub fn subsets(&self) -> Result<&SubsetAutomaton> {
        self.subsets
            .get_or_init(|| self.determinize())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn determinize(&self) -> Result<SubsetAutomaton> {
        let g = &self.graph;
        let k = g.alphabet().size();
        let n = g.node_count();
        let words = n.div_ceil(64);
        let mut full = vec![0u64; words];
        for u in 0..n {
            insert(&mut full, u);
        }
        let mut index: HashMap<NodeSet, u32> = HashMap::new();
        let mut automaton = SubsetAutomaton {
            k,
            sets: vec![full.clone()],
            delta: Vec::new(),
            parent: vec![None],
            empty: None,
        };
        index.insert(full, 0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(state) = queue.pop_front() {
            let mut targets = vec![vec![0u64; words]; k];
            let set = automaton.sets[state as usize].clone();
            for u in (0..n).filter(|&u| contains(&set, u)) {
                for (_, v, label) in g.edges(u) {
                    insert(&mut targets[label as usize], v);
                }
            }
            for (b, target) in targets.into_iter().enumerate() {
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = automaton.sets.len() as u32;
                        if id as u64 >= self.budget.0 {
                            return Err(Error::SearchBudgetExceeded(self.budget.0));
                        }
                        if target.iter().all(|&w| w == 0) {
                            automaton.empty = Some(id);
                        }
                        index.insert(target.clone(), id);
                        automaton.sets.push(target);
                        automaton.parent.push(Some((state, b as Symbol)));
                        queue.push_back(id);
                        id
                    }
                };
                automaton.delta.push(id);
            }
        }
        Ok(automaton)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.subsets()?.empty.is_none())
    }

    /// Shortest word outside the image language, lexicographically least among
    /// the shortest.
    pub fn find_orphan(&self) -> Result<Option<Word>> {
        let subsets = self.subsets()?;
        Ok(subsets.empty_state().map(|e| subsets.path_to(e)))
    }
}

pub fn is_surjective(ca: &RuleTableCA, budget: Budget) -> Result<bool> {
    ImageAutomaton::new(ca, budget)?.is_surjective()
}

pub fn find_orphan(ca: &RuleTableCA, budget: Budget) -> Result<Option<Word>> {
    ImageAutomaton::new(ca, budget)?.find_orphan()
}

/// Does `word` fail to occur in any image? Checked directly by trying every
/// preimage of the right length.
pub fn is_orphan(ca: &RuleTableCA, word: &[Symbol], budget: Budget) -> Result<bool> {
    if word.is_empty() {
        return Ok(false);
    }
    let k = ca.alphabet().size();
    let len = word.len() + 2 * ca.radius();
    let count = budget.check_pow(k, len)?;
    let mut preimage = vec![0; len];
    for index in 0..count {
        ca.alphabet().fill_word_at(index, &mut preimage);
        if ca.apply_to_word(&preimage)?.symbols() == word {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn orphan(rule: u8) -> Option<Word> {
        find_orphan(&RuleTableCA::elementary(rule), Budget::DEFAULT).unwrap()
    }

    #[test]
    fn xor_and_identity_are_surjective() {
        for rule in [102, 204, 170, 60, 90, 150, 51] {
            assert!(is_surjective(&RuleTableCA::elementary(rule), Budget::DEFAULT).unwrap(), "{rule}");
        }
    }

    #[test]
    fn orphans_of_simple_rules() {
        assert_eq!(orphan(0).unwrap().symbols(), &[1]);
        assert_eq!(orphan(255).unwrap().symbols(), &[0]);
        let and = orphan(136).unwrap();
        assert_eq!(and.symbols(), &[1, 0, 1]);
        assert!(is_orphan(&RuleTableCA::elementary(136), &and, Budget::DEFAULT).unwrap());
    }

    #[test]
    fn orphan_is_shortest_and_least() {
        for rule in 0..=255u8 {
            let ca = RuleTableCA::elementary(rule);
            let Some(w) = orphan(rule) else { continue };
            assert!(is_orphan(&ca, &w, Budget::DEFAULT).unwrap(), "rule {rule}");
            for shorter in 0..w.len() {
                for v in Alphabet::BINARY.words(shorter) {
                    assert!(!is_orphan(&ca, &v, Budget::DEFAULT).unwrap(), "rule {rule}: {v} before {w}");
                }
            }
            for v in Alphabet::BINARY.words(w.len()).take_while(|v| *v != w) {
                assert!(!is_orphan(&ca, &v, Budget::DEFAULT).unwrap(), "rule {rule}: {v} before {w}");
            }
        }
    }

    #[test]
    fn accepts_agrees_with_brute_force() {
        let ca = RuleTableCA::elementary(110);
        let image = ImageAutomaton::new(&ca, Budget::DEFAULT).unwrap();
        for len in 0..=7 {
            for w in Alphabet::BINARY.words(len) {
                assert_eq!(image.accepts(&w), !is_orphan(&ca, &w, Budget::DEFAULT).unwrap(), "{w}");
            }
        }
    }

    #[test]
    fn subset_budget_is_enforced() {
        let (states, rule) = (0..=255u8)
            .map(|n| {
                let image = ImageAutomaton::new(&RuleTableCA::elementary(n), Budget::DEFAULT).unwrap();
                (image.subsets().unwrap().state_count(), n)
            })
            .max()
            .unwrap();
        // the graph needs 8 edges; the subset automaton needs more states than that
        assert!(states > 8);
        let image = ImageAutomaton::new(&RuleTableCA::elementary(rule), Budget(8)).unwrap();
        assert_eq!(image.is_surjective(), Err(Error::SearchBudgetExceeded(8)));
    }
}
