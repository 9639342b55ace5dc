use std::collections::VecDeque;
use std::fmt;

use crate::budget::Budget;
use crate::ca::{CellularAutomaton, RuleTableCA};
use crate::error::Result;
use crate::language::debruijn::DeBruijnGraph;
use crate::word::{Symbol, Word};

/// Two words `u = prefix·mid_a·suffix` and `u' = prefix·mid_b·suffix` that
/// differ only in the middle and have the same image in every context.
///
/// `prefix` and `suffix` have length `2r`; the middles are non-empty and
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diamond {
    pub prefix: Word,
    pub mid_a: Word,
    pub mid_b: Word,
    pub suffix: Word,
}

impl Diamond {
    pub fn u(&self) -> Word {
        Word::concat(&[&self.prefix, &self.mid_a, &self.suffix])
    }

    pub fn u_prime(&self) -> Word {
        Word::concat(&[&self.prefix, &self.mid_b, &self.suffix])
    }

    /// Checks the diamond property by brute force over all `r`-symbol contexts.
    pub fn verify(&self, ca: &dyn CellularAutomaton, budget: Budget) -> Result<bool> {
        let r = ca.radius();
        if self.prefix.len() != 2 * r
            || self.suffix.len() != 2 * r
            || self.mid_a.is_empty()
            || self.mid_a.len() != self.mid_b.len()
            || self.mid_a == self.mid_b
        {
            return Ok(false);
        }
        let alphabet = ca.alphabet();
        let contexts = budget.check_pow(alphabet.size(), 2 * r)?;
        let (u, v) = (self.u(), self.u_prime());
        let mut context = vec![0; 2 * r];
        for index in 0..contexts {
            alphabet.fill_word_at(index, &mut context);
            let (left, right) = context.split_at(r);
            let a = ca.apply_to_word(&Word::concat(&[left, &u, right]))?;
            let b = ca.apply_to_word(&Word::concat(&[left, &v, right]))?;
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}|{}]{}", self.prefix, self.mid_a, self.mid_b, self.suffix)
    }
}

/// Pairs of de Bruijn nodes, joined by pairs of edges with equal labels.
#[derive(Clone, Copy)]
struct PairGraph<'a> {
    graph: &'a DeBruijnGraph,
    n: usize,
}

impl PairGraph<'_> {
    fn split(&self, pair: usize) -> (usize, usize) {
        (pair / self.n, pair % self.n)
    }

    fn join(&self, u: usize, v: usize) -> usize {
        u * self.n + v
    }

    fn step(&self, pair: usize, a: Symbol, b: Symbol) -> Option<usize> {
        let (u, v) = self.split(pair);
        (self.graph.label(u, a) == self.graph.label(v, b))
            .then(|| self.join(self.graph.successor(u, a), self.graph.successor(v, b)))
    }

    fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        self.graph.alphabet().symbols()
    }

    /// Breadth-first distance from each pair to the diagonal.
    fn distance_to_diagonal(&self) -> Vec<Option<usize>> {
        let pairs = self.n * self.n;
        let mut reverse: Vec<Vec<u32>> = vec![Vec::new(); pairs];
        for p in 0..pairs {
            for a in self.symbols() {
                for b in self.symbols() {
                    if let Some(q) = self.step(p, a, b) {
                        reverse[q].push(p as u32);
                    }
                }
            }
        }
        let mut dist = vec![None; pairs];
        let mut queue = VecDeque::new();
        for u in 0..self.n {
            dist[self.join(u, u)] = Some(0);
            queue.push_back(self.join(u, u));
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &p in &reverse[q] {
                if dist[p as usize].is_none() {
                    dist[p as usize] = Some(d + 1);
                    queue.push_back(p as usize);
                }
            }
        }
        dist
    }

    /// Edges leaving the diagonal: `(start node, a, b, target)` with `a != b`.
    fn departures(&self) -> impl Iterator<Item = (usize, Symbol, Symbol, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let pair = self.join(u, u);
            self.symbols().flat_map(move |a| {
                self.symbols()
                    .filter(move |&b| b != a)
                    .filter_map(move |b| self.step(pair, a, b).map(|q| (u, a, b, q)))
            })
        })
    }
}

/// Length of the shortest diamond path, counting every edge, if any exists.
fn shortest(pairs: &PairGraph, dist: &[Option<usize>]) -> Option<usize> {
    pairs
        .departures()
        .filter_map(|(_, _, _, q)| dist[q].map(|d| d + 1))
        .min()
}

pub fn is_preinjective(ca: &RuleTableCA, budget: Budget) -> Result<bool> {
    let graph = DeBruijnGraph::new(ca, budget)?;
    let n = graph.node_count();
    budget.check((n as u128).pow(2) * (graph.alphabet().size() as u128).pow(2))?;
    let pairs = PairGraph { graph: &graph, n };
    Ok(shortest(&pairs, &pairs.distance_to_diagonal()).is_none())
}

/// A diamond of minimal middle length; among those the lexicographically
/// least `(prefix, mid_a, mid_b, suffix)`. `None` when the rule is preinjective.
pub fn find_diamond(ca: &RuleTableCA, budget: Budget) -> Result<Option<Diamond>> {
    let graph = DeBruijnGraph::new(ca, budget)?;
    let n = graph.node_count();
    budget.check((n as u128).pow(2) * (graph.alphabet().size() as u128).pow(2))?;
    let pairs = PairGraph { graph: &graph, n };
    let dist = pairs.distance_to_diagonal();
    let Some(total) = shortest(&pairs, &dist) else {
        return Ok(None);
    };
    let order = graph.order();
    let middle = total - order;
    let count = n * n;

    // exact[j][p]: the diagonal is reachable from p in exactly j steps.
    let mut exact = vec![vec![false; count]; total];
    for u in 0..n {
        exact[0][pairs.join(u, u)] = true;
    }
    for j in 1..total {
        for p in 0..count {
            exact[j][p] = pairs.symbols().any(|a| {
                pairs
                    .symbols()
                    .any(|b| pairs.step(p, a, b).is_some_and(|q| exact[j - 1][q]))
            });
        }
    }
    let feasible = |steps_left: usize, q: usize| exact[steps_left][q];

    let (start, ..) = pairs
        .departures()
        .find(|&(_, _, _, q)| feasible(total - 1, q))
        .expect("shortest path exists");

    // mid_a: advance the set of pairs compatible with the chosen top symbols.
    let mut frontier = vec![pairs.join(start, start)];
    let mut mid_a = Vec::with_capacity(middle);
    for t in 0..middle {
        let mut chosen = None;
        for a in pairs.symbols() {
            let mut next: Vec<usize> = frontier
                .iter()
                .flat_map(|&p| {
                    pairs
                        .symbols()
                        .filter(move |&b| t > 0 || b != a)
                        .filter_map(move |b| pairs.step(p, a, b))
                })
                .filter(|&q| feasible(total - 1 - t, q))
                .collect();
            if !next.is_empty() {
                next.sort_unstable();
                next.dedup();
                chosen = Some((a, next));
                break;
            }
        }
        let (a, next) = chosen.expect("frontier stays feasible");
        mid_a.push(a);
        frontier = next;
    }

    let mut pair = pairs.join(start, start);
    let mut mid_b = Vec::with_capacity(middle);
    for (t, &a) in mid_a.iter().enumerate() {
        let (b, q) = pairs
            .symbols()
            .filter(|&b| t > 0 || b != a)
            .find_map(|b| {
                pairs
                    .step(pair, a, b)
                    .filter(|&q| feasible(total - 1 - t, q))
                    .map(|q| (b, q))
            })
            .expect("mid_a was chosen with a compatible mid_b");
        mid_b.push(b);
        pair = q;
    }

    let mut suffix = Vec::with_capacity(order);
    for t in middle..total {
        let (c, q) = pairs
            .symbols()
            .find_map(|c| {
                pairs
                    .step(pair, c, c)
                    .filter(|&q| feasible(total - 1 - t, q))
                    .map(|q| (c, q))
            })
            .expect("suffix closes the diamond");
        suffix.push(c);
        pair = q;
    }

    Ok(Some(Diamond {
        prefix: graph.node_word(start),
        mid_a: Word(mid_a),
        mid_b: Word(mid_b),
        suffix: Word(suffix),
    }))
}
