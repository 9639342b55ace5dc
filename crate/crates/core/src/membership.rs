//! Deciding, as far as finite checks allow, whether a CA is a product of
//! idempotents.
//!
//! Negative answers always carry a witness. Positive answers carry the
//! certificate that fired. When neither happens the verdict only says the
//! periodic-point condition held up to the bound.

use std::fmt;

use crate::budget::Budget;
use crate::ca::{
    compose, equals, is_constant_on_unary, is_idempotent, minimal_neighborhood, power, spreading_states, Ca,
    CellularAutomaton, RuleTableCA,
};
use crate::cyclic::{least_period, CyclicWord};
use crate::error::Result;
use crate::language;
use crate::periodic::eq1_check_up_to;
use crate::word::Symbol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Identity,
    Idempotent,
    /// `G^(m+1) = G^m`.
    EventuallyIdempotent(usize),
    /// A spreading state, neighbourhood of size at least 2, constant on unary points.
    SpreadingConstantUnary(Symbol),
    /// Non-surjective with exactly one temporally periodic point among the
    /// points of spatial period at most `bound`. Only as strong as the bound:
    /// a larger bound may still find a violation beyond it.
    SinglePeriodicPoint { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    SurjectiveNonIdentity,
    /// `G` maps `Q_n` onto itself but moves `point`.
    Eq1Violation { n: usize, point: CyclicWord },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    In(Certificate),
    Out(Witness),
    /// No certificate and no witness up to this period bound.
    ConsistentUpTo(usize),
}

impl MembershipVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            MembershipVerdict::In(_) => "in",
            MembershipVerdict::Out(_) => "out",
            MembershipVerdict::ConsistentUpTo(_) => "consistent",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Identity => write!(f, "identity"),
            Certificate::Idempotent => write!(f, "idempotent"),
            Certificate::EventuallyIdempotent(m) => write!(f, "eventually-idempotent(m={m})"),
            Certificate::SpreadingConstantUnary(q) => write!(f, "spreading-constant-unary(state={q})"),
            Certificate::SinglePeriodicPoint { bound } => write!(f, "single-periodic-point(bound={bound})"),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SurjectiveNonIdentity => write!(f, "surjective-non-identity"),
            Witness::Eq1Violation { n, point } => write!(f, "periodic-condition-violated(n={n}, point={point})"),
        }
    }
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipVerdict::In(c) => write!(f, "in: {c}"),
            MembershipVerdict::Out(w) => write!(f, "out: {w}"),
            MembershipVerdict::ConsistentUpTo(b) => write!(f, "consistent up to {b}"),
        }
    }
}

/// Runs the checks in a fixed order and returns the first verdict that fires.
///
/// `bound` limits both the periods examined and the powers tried for
/// eventual idempotency. Powers whose tables would exceed the budget are
/// skipped rather than reported as errors.
pub fn decide_membership(ca: &Ca, bound: usize, budget: Budget) -> Result<MembershipVerdict> {
    let table = ca.to_table(budget)?;
    let identity = RuleTableCA::identity(ca.alphabet());
    if equals(&table, &identity, budget)? {
        return Ok(MembershipVerdict::In(Certificate::Identity));
    }
    // the periodic witness is the more specific one, so it is tried first
    if let Some(report) = eq1_check_up_to(ca, bound, budget)? {
        let point = report.violation_witness.expect("violated reports carry a witness");
        return Ok(MembershipVerdict::Out(Witness::Eq1Violation { n: report.n, point }));
    }
    if language::is_surjective(&table, budget)? {
        return Ok(MembershipVerdict::Out(Witness::SurjectiveNonIdentity));
    }
    let ca = Ca::Table(table);
    if is_idempotent(&ca, budget)? {
        return Ok(MembershipVerdict::In(Certificate::Idempotent));
    }
    if let Some(m) = eventual_idempotency_within(&ca, bound, budget)? {
        return Ok(MembershipVerdict::In(Certificate::EventuallyIdempotent(m)));
    }
    let spreading = spreading_states(&ca, budget)?;
    if let Some(&q) = spreading.first() {
        if minimal_neighborhood(&ca, budget)?.len() >= 2 && is_constant_on_unary(&ca) {
            return Ok(MembershipVerdict::In(Certificate::SpreadingConstantUnary(q)));
        }
    }
    if let Some(checked) = single_periodic_point(&ca, bound, budget)? {
        return Ok(MembershipVerdict::In(Certificate::SinglePeriodicPoint { bound: checked }));
    }
    Ok(MembershipVerdict::ConsistentUpTo(bound))
}

/// Least `m <= bound` with `G^(m+1) = G^m`, stopping early once the powers
/// no longer fit in the budget.
fn eventual_idempotency_within(ca: &Ca, bound: usize, budget: Budget) -> Result<Option<usize>> {
    let mut current = power(ca, 0, budget)?;
    for m in 0..=bound {
        let next = compose(ca, &current, budget)?;
        match equals(&next, &current, budget) {
            Ok(true) => return Ok(Some(m)),
            Ok(false) => current = next,
            Err(e) if e.is_infeasible() => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// `Some(b)` when exactly one point of period at most `b` is fixed, where
/// `b` is `bound` or the largest period the budget allows.
fn single_periodic_point(ca: &Ca, bound: usize, budget: Budget) -> Result<Option<usize>> {
    let k = ca.alphabet().size();
    let mut periodic = 0usize;
    let mut checked = 0;
    for n in 1..=bound {
        let size = match budget.check_pow(k, n) {
            Ok(size) => size,
            Err(e) if e.is_infeasible() => break,
            Err(e) => return Err(e),
        };
        let decode = |mut i: usize| {
            let mut w = vec![0; n];
            for c in w.iter_mut().rev() {
                *c = (i % k) as Symbol;
                i /= k;
            }
            w
        };
        let encode = |w: &[Symbol]| w.iter().fold(0usize, |i, &c| i * k + c as usize);
        // F acts on the k^n points of spatial period dividing n; its cycles are
        // the temporally periodic points.
        let next: Vec<usize> = (0..size)
            .map(|i| encode(&ca.apply_to_cyclic(&CyclicWord::new(decode(i))).expand(n).0))
            .collect();
        let on_cycle = cycle_nodes(&next);
        periodic += (0..size)
            .filter(|&i| on_cycle[i] && least_period(&decode(i)) == n)
            .count();
        if periodic > 1 {
            return Ok(None);
        }
        checked = n;
    }
    Ok((periodic == 1 && checked > 0).then_some(checked))
}

/// Marks the nodes of a functional graph that lie on a cycle.
fn cycle_nodes(next: &[usize]) -> Vec<bool> {
    const NEW: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![NEW; next.len()];
    let mut on_cycle = vec![false; next.len()];
    let mut path = Vec::new();
    for start in 0..next.len() {
        let mut v = start;
        while state[v] == NEW {
            state[v] = ACTIVE;
            path.push(v);
            v = next[v];
        }
        if state[v] == ACTIVE {
            let mut u = v;
            loop {
                on_cycle[u] = true;
                u = next[u];
                if u == v {
                    break;
                }
            }
        }
        for u in path.drain(..) {
            state[u] = DONE;
        }
    }
    on_cycle
}

/// A stable one-paragraph explanation of a verdict.
pub fn explain(verdict: &MembershipVerdict) -> String {
    match verdict {
        MembershipVerdict::In(Certificate::Identity) => {
            "In: the rule is the identity, the empty product of idempotents.".to_string()
        }
        MembershipVerdict::In(Certificate::Idempotent) => {
            "In: the rule is itself idempotent (G∘G = G).".to_string()
        }
        MembershipVerdict::In(Certificate::EventuallyIdempotent(m)) => format!(
            "In: G^{} = G^{m}, so the rule is eventually idempotent and hence a product of idempotents.",
            m + 1
        ),
        MembershipVerdict::In(Certificate::SpreadingConstantUnary(q)) => format!(
            "In: state {q} spreads, the neighbourhood has at least two cells and all unary points map to \
             one unary point."
        ),
        MembershipVerdict::In(Certificate::SinglePeriodicPoint { bound }) => format!(
            "In: the rule is not surjective and has exactly one temporally periodic point among the points \
             of spatial period at most {bound}. This certificate only covers periods up to {bound}."
        ),
        MembershipVerdict::Out(Witness::SurjectiveNonIdentity) => {
            "Out: the rule is surjective but not the identity; a surjective product of idempotents is the \
             identity."
                .to_string()
        }
        MembershipVerdict::Out(Witness::Eq1Violation { n, point }) => format!(
            "Out: the rule maps the points of least period {n} onto themselves but moves {point}."
        ),
        MembershipVerdict::ConsistentUpTo(bound) => format!(
            "Unknown: no violation of the periodic-point condition for periods up to {bound} and no \
             certificate applies. Membership is not certified."
        ),
    }
}
