use crate::budget::Budget;
use crate::ca::{CellularAutomaton, RuleTableCA};
use crate::error::Result;
use crate::word::{Alphabet, Symbol, Word};

/// Nodes are the words of length `2r`; the edge leaving `u` with symbol `a`
/// goes to the last `2r` symbols of `u·a` and is labelled by the rule's
/// output on the window `u·a`.
///
/// Edge `(u, a)` has index `u·k + a`, which is exactly the table index of
/// the window `u·a`.
#[derive(Debug, Clone)]
pub struct DeBruijnGraph {
    alphabet: Alphabet,
    order: usize,
    node_count: usize,
    labels: Vec<Symbol>,
}

impl DeBruijnGraph {
    pub fn new(ca: &RuleTableCA, budget: Budget) -> Result<Self> {
        let alphabet = ca.alphabet();
        let order = 2 * ca.radius();
        let node_count = budget.check_pow(alphabet.size(), order)?;
        budget.check_pow(alphabet.size(), order + 1)?;
        Ok(DeBruijnGraph {
            alphabet,
            order,
            node_count,
            labels: ca.table().to_vec(),
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Node word length, `2r`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn successor(&self, node: usize, symbol: Symbol) -> usize {
        (node * self.alphabet.size() + symbol as usize) % self.node_count
    }

    pub fn label(&self, node: usize, symbol: Symbol) -> Symbol {
        self.labels[node * self.alphabet.size() + symbol as usize]
    }

    pub fn node_word(&self, node: usize) -> Word {
        self.alphabet.word_at(node, self.order)
    }

    /// Outgoing edges as `(symbol, target, label)`.
    pub fn edges(&self, node: usize) -> impl Iterator<Item = (Symbol, usize, Symbol)> + '_ {
        self.alphabet
            .symbols()
            .map(move |a| (a, self.successor(node, a), self.label(node, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_node_has_k_in_and_out_edges() {
        for ca in [
            RuleTableCA::elementary(110),
            RuleTableCA::identity(Alphabet::new(3).unwrap()),
            RuleTableCA::from_fn(Alphabet::new(3).unwrap(), 1, |w| w[0], Budget::DEFAULT).unwrap(),
        ] {
            let g = DeBruijnGraph::new(&ca, Budget::DEFAULT).unwrap();
            let k = g.alphabet().size();
            let mut indegree = vec![0; g.node_count()];
            for u in 0..g.node_count() {
                assert_eq!(g.edges(u).count(), k);
                for (_, v, _) in g.edges(u) {
                    indegree[v] += 1;
                }
            }
            assert!(indegree.iter().all(|&d| d == k));
        }
    }

    #[test]
    fn edges_overlap_in_2r_minus_1_symbols() {
        let g = DeBruijnGraph::new(&RuleTableCA::elementary(30), Budget::DEFAULT).unwrap();
        for u in 0..g.node_count() {
            for (a, v, label) in g.edges(u) {
                let uw = g.node_word(u);
                let vw = g.node_word(v);
                assert_eq!(uw[1..], vw[..1]);
                assert_eq!(vw[1], a);
                let window = [uw[0], uw[1], a];
                assert_eq!(label, RuleTableCA::elementary(30).local(&window));
            }
        }
    }
}
