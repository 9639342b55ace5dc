//! Idempotent factorizations at the finite level.
//!
//! Any self-map of a finite set that is not a non-identity bijection is a
//! product of idempotents ([`decompose_finite`]). The same holds, orbit by
//! orbit, for shift-equivariant maps on the periodic points of period at
//! most `m` that satisfy the periodic-point condition
//! ([`decompose_equivariant`]); [`monoid_closure_oracle`] confirms this by
//! brute force on small carriers.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::ca::CellularAutomaton;
use crate::cyclic::CyclicWord;
use crate::error::{Error, Result};
use crate::periodic::enumerate_q;
use crate::word::Alphabet;

/// Maps that can be composed and compared; `a.compose(b)` is `a ∘ b`.
pub trait Transformation: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn compose(&self, inner: &Self) -> Self;

    fn identity_like(&self) -> Self;

    fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// Structural invariants beyond idempotency (for example equivariance).
    fn is_well_formed(&self) -> bool {
        true
    }
}

/// A self-map of `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFunction {
    images: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if let Some(&bad) = images.iter().find(|&&b| b >= n) {
            return Err(Error::InvalidArgument(format!("image {bad} is outside a domain of size {n}")));
        }
        Ok(FiniteFunction { images })
    }

    pub fn identity(n: usize) -> Self {
        FiniteFunction { images: (0..n).collect() }
    }

    /// The idempotent that sends `from` to `to` and fixes everything else.
    pub fn elementary(n: usize, from: usize, to: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images[from] = to;
        FiniteFunction { images }
    }

    /// Parses a comma-separated image list such as `0,0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(FiniteFunction::identity(0));
        }
        let images = text
            .split(',')
            .enumerate()
            .map(|(i, part)| {
                part.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("entry {i} ('{}') is not an index", part.trim())))
            })
            .collect::<Result<Vec<usize>>>()?;
        FiniteFunction::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.images.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
    }
}

impl Transformation for FiniteFunction {
    fn compose(&self, inner: &Self) -> Self {
        assert_eq!(self.len(), inner.len(), "domains differ");
        FiniteFunction {
            images: inner.images.iter().map(|&b| self.images[b]).collect(),
        }
    }

    fn identity_like(&self) -> Self {
        FiniteFunction::identity(self.len())
    }
}

impl fmt::Display for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `factors[0] ∘ factors[1] ∘ ...`: the last factor is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization<T> {
    pub factors: Vec<T>,
    pub target: T,
}

impl<T: Transformation> Factorization<T> {
    pub fn product(&self) -> T {
        self.factors
            .iter()
            .rev()
            .fold(self.target.identity_like(), |acc, factor| factor.compose(&acc))
    }
}

impl<T: Transformation> fmt::Display for Factorization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            writeln!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// Recomputes the product and checks every factor.
pub fn verify_factorization<T: Transformation>(fact: &Factorization<T>) -> bool {
    fact.factors.iter().all(|g| g.is_idempotent() && g.is_well_formed()) && fact.product() == fact.target
}

pub fn decompose_finite(f: &FiniteFunction) -> Result<Factorization<FiniteFunction>> {
    let n = f.len();
    if f.is_identity() {
        return Ok(Factorization {
            factors: Vec::new(),
            target: f.clone(),
        });
    }
    if f.is_bijection() {
        return Err(Error::NotDecomposable);
    }
    // applied[0] acts first
    let mut applied = Vec::new();

    // least preimage of each image point
    let mut g = vec![None; n];
    for a in 0..n {
        g[f.apply(a)].get_or_insert(a);
    }
    let rep = |a: usize| g[f.apply(a)].expect("f(a) has a preimage");

    // (i) collapse every fibre onto its least element
    for a in 0..n {
        if rep(a) != a {
            applied.push(FiniteFunction::elementary(n, a, rep(a)));
        }
    }

    // (ii) move representatives outside f(X) onto the unused points of f(X)
    let in_image: Vec<bool> = (0..n).map(|b| g[b].is_some()).collect();
    let is_rep: Vec<bool> = (0..n).map(|a| rep(a) == a).collect();
    let leaving: Vec<usize> = (0..n).filter(|&a| is_rep[a] && !in_image[a]).collect();
    let arriving: Vec<usize> = (0..n).filter(|&b| in_image[b] && !is_rep[b]).collect();
    // position[b]: the representative whose value currently sits at b
    let mut position_of = vec![None; n];
    for a in (0..n).filter(|&a| is_rep[a]) {
        position_of[a] = Some(a);
    }
    for (&c, &d) in leaving.iter().zip(&arriving) {
        applied.push(FiniteFunction::elementary(n, c, d));
        position_of[d] = position_of[c].take();
    }

    // (iii) sort the values on f(X) with transpositions through a spare point
    let spare = (0..n).find(|&b| !in_image[b]).expect("f is not onto");
    // wanted[v]: where the value now at v has to go
    let mut wanted: Vec<Option<usize>> = position_of.iter().map(|r| r.map(|r| f.apply(r))).collect();
    for v in 0..n {
        while let Some(w) = wanted[v].filter(|&w| w != v) {
            applied.push(FiniteFunction::elementary(n, v, spare));
            applied.push(FiniteFunction::elementary(n, w, v));
            applied.push(FiniteFunction::elementary(n, spare, w));
            wanted.swap(v, w);
        }
    }

    applied.reverse();
    let fact = Factorization {
        factors: applied,
        target: f.clone(),
    };
    debug_assert!(verify_factorization(&fact));
    Ok(fact)
}

/// The periodic points of period at most `m`, listed orbit by orbit in order
/// of increasing period; each orbit starts at its canonical point and
/// continues with its successive left rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    alphabet: Alphabet,
    m: usize,
    points: Vec<CyclicWord>,
    orbit_start: Vec<usize>,
    index: HashMap<CyclicWord, usize>,
}

impl Carrier {
    pub fn new(alphabet: Alphabet, m: usize, budget: Budget) -> Result<Self> {
        let mut points = Vec::new();
        let mut orbit_start = Vec::new();
        for n in 1..=m {
            let q = enumerate_q(alphabet, n, budget)?;
            for orbit in q.orbits {
                let start = points.len();
                orbit_start.extend(std::iter::repeat(start).take(orbit.len()));
                points.extend(orbit);
            }
        }
        let index = points.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        Ok(Carrier {
            alphabet,
            m,
            points,
            orbit_start,
            index,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CyclicWord] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &CyclicWord {
        &self.points[i]
    }

    pub fn index_of(&self, x: &CyclicWord) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn period(&self, i: usize) -> usize {
        self.points[i].least_period()
    }

    /// Index of `σ^s` applied to point `i`.
    pub fn rotate(&self, i: usize, s: usize) -> usize {
        let start = self.orbit_start[i];
        let p = self.period(i);
        start + (i - start + s) % p
    }

    /// Indices of the canonical points, one per orbit.
    pub fn bases(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.orbit_start[i] == i)
    }

    pub fn base_of(&self, i: usize) -> usize {
        self.orbit_start[i]
    }

    /// `s` with `point(i) = σ^s point(base_of(i))`.
    pub fn offset(&self, i: usize) -> usize {
        i - self.orbit_start[i]
    }
}

/// A map on a [`Carrier`] that commutes with the shift.
#[derive(Debug, Clone)]
pub struct EquivariantMap {
    carrier: Arc<Carrier>,
    images: Vec<usize>,
}

impl PartialEq for EquivariantMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && (Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier)
    }
}

impl EquivariantMap {
    /// `images[i]` is the carrier index of the image of point `i`.
    pub fn new(carrier: Arc<Carrier>, images: Vec<usize>) -> Result<Self> {
        if images.len() != carrier.len() || images.iter().any(|&b| b >= carrier.len()) {
            return Err(Error::InvalidArgument("image list does not fit the carrier".into()));
        }
        let map = EquivariantMap { carrier, images };
        match map.first_non_equivariant() {
            Some(i) => Err(Error::NotEquivariant(map.carrier.point(i).clone())),
            None => Ok(map),
        }
    }

    pub fn identity(carrier: Arc<Carrier>) -> Self {
        let images = (0..carrier.len()).collect();
        EquivariantMap { carrier, images }
    }

    /// The action of a CA on the carrier.
    pub fn from_ca(carrier: Arc<Carrier>, ca: &dyn CellularAutomaton) -> Result<Self> {
        if ca.alphabet() != carrier.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: ca.alphabet().size(),
                right: carrier.alphabet().size(),
            });
        }
        let images = carrier
            .points()
            .iter()
            .map(|x| carrier.index_of(&ca.apply_to_cyclic(x)).expect("periods never grow"))
            .collect();
        Ok(EquivariantMap { carrier, images })
    }

    /// The idempotent sending the orbit of base `from` onto the orbit of base
    /// `to`, with `σ^s from ↦ σ^(s+twist) to`; the identity elsewhere.
    fn orbit_move(carrier: &Arc<Carrier>, from: usize, to: usize, twist: usize) -> Self {
        let mut images: Vec<usize> = (0..carrier.len()).collect();
        for s in 0..carrier.period(from) {
            images[carrier.rotate(from, s)] = carrier.rotate(to, s + twist);
        }
        EquivariantMap {
            carrier: carrier.clone(),
            images,
        }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == b)
    }

    fn first_non_equivariant(&self) -> Option<usize> {
        (0..self.images.len()).find(|&i| self.images[self.carrier.rotate(i, 1)] != self.carrier.rotate(self.images[i], 1))
    }

    /// The least `(period, point)` at which `Q_period` is mapped onto itself
    /// but not fixed.
    pub fn condition_violation(&self) -> Option<(usize, CyclicWord)> {
        let c = &self.carrier;
        for n in 1..=c.m() {
            let q: Vec<usize> = (0..c.len()).filter(|&i| c.period(i) == n).collect();
            let images: HashSet<usize> = q.iter().map(|&i| self.images[i]).collect();
            let onto = images.len() == q.len() && images.iter().all(|&j| c.period(j) == n);
            if onto {
                if let Some(&i) = q.iter().find(|&&i| self.images[i] != i) {
                    return Some((n, c.point(i).clone()));
                }
            }
        }
        None
    }
}

impl Transformation for EquivariantMap {
    fn compose(&self, inner: &Self) -> Self {
        EquivariantMap {
            carrier: self.carrier.clone(),
            images: inner.images.iter().map(|&b| self.images[b]).collect(),
        }
    }

    fn identity_like(&self) -> Self {
        EquivariantMap::identity(self.carrier.clone())
    }

    fn is_well_formed(&self) -> bool {
        self.first_non_equivariant().is_none()
    }
}

impl fmt::Display for EquivariantMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", self.carrier.point(i), self.carrier.point(j)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Factors an equivariant map satisfying the periodic-point condition into
/// equivariant idempotents, treating periods `1, 2, ..., m` in turn.
pub fn decompose_equivariant(f: &EquivariantMap) -> Result<Factorization<EquivariantMap>> {
    if let Some((period, witness)) = f.condition_violation() {
        return Err(Error::ConditionViolated { period, witness });
    }
    let c = f.carrier.clone();
    let mut applied: Vec<EquivariantMap> = Vec::new();
    for period in 1..=c.m() {
        let orbits: Vec<usize> = c.bases().filter(|&b| c.period(b) == period).collect();
        // the drop map: points whose image has a smaller period go straight there
        let mut drop: Vec<usize> = (0..c.len()).collect();
        let mut dropped = false;
        for &o in &orbits {
            if c.period(f.apply(o)) < period {
                for s in 0..period {
                    drop[c.rotate(o, s)] = f.apply(c.rotate(o, s));
                }
                dropped = true;
            }
        }
        if dropped {
            applied.push(EquivariantMap {
                carrier: c.clone(),
                images: drop,
            });
        }
        let staying: Vec<usize> = orbits.iter().copied().filter(|&o| c.period(f.apply(o)) == period).collect();
        // image of each staying orbit as (target base, twist)
        let target = |o: usize| {
            let y = f.apply(o);
            (c.base_of(y), c.offset(y))
        };
        let mut representative: HashMap<usize, usize> = HashMap::new();
        for &o in &staying {
            representative.entry(target(o).0).or_insert(o);
        }

        // (i) merge orbits with a common target orbit into the least of them
        for &o in &staying {
            let (to, twist) = target(o);
            let rep = representative[&to];
            if rep != o {
                let shift = (twist + period - target(rep).1) % period;
                applied.push(EquivariantMap::orbit_move(&c, o, rep, shift));
            }
        }

        // (ii) and (iii) on the representatives: token[p] = (rep at orbit p, twist so far)
        let mut token: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut reps: Vec<usize> = representative.values().copied().collect();
        reps.sort_unstable();
        for &r in &reps {
            token.insert(r, (r, 0));
        }
        let targets: HashSet<usize> = representative.keys().copied().collect();
        let leaving: Vec<usize> = reps.iter().copied().filter(|r| !targets.contains(r)).collect();
        let mut arriving: Vec<usize> = targets.iter().copied().filter(|t| !token.contains_key(t)).collect();
        arriving.sort_unstable();
        for (&from, &to) in leaving.iter().zip(&arriving) {
            applied.push(EquivariantMap::orbit_move(&c, from, to, 0));
            let t = token.remove(&from).expect("occupied");
            token.insert(to, t);
        }

        let is_done = |token: &HashMap<usize, (usize, usize)>, p: usize| {
            let (r, twist) = token[&p];
            target(r) == (p, twist)
        };
        let mut positions: Vec<usize> = token.keys().copied().collect();
        positions.sort_unstable();
        if positions.iter().all(|&p| is_done(&token, p)) {
            continue;
        }
        let spare = orbits
            .iter()
            .copied()
            .find(|o| !token.contains_key(o))
            .expect("a map moving Q_n within Q_n that is not onto leaves an orbit free");
        for &v in &positions {
            while !is_done(&token, v) {
                let (r, twist) = token[&v];
                let (w, wanted) = target(r);
                let fix = (wanted + period - twist) % period;
                if w == v {
                    applied.push(EquivariantMap::orbit_move(&c, v, spare, fix));
                    applied.push(EquivariantMap::orbit_move(&c, spare, v, 0));
                    token.insert(v, (r, wanted));
                } else {
                    applied.push(EquivariantMap::orbit_move(&c, v, spare, fix));
                    applied.push(EquivariantMap::orbit_move(&c, w, v, 0));
                    applied.push(EquivariantMap::orbit_move(&c, spare, w, 0));
                    let other = token[&w];
                    token.insert(v, other);
                    token.insert(w, (r, wanted));
                }
            }
        }
    }
    applied.reverse();
    let fact = Factorization {
        factors: applied,
        target: f.clone(),
    };
    debug_assert!(verify_factorization(&fact));
    Ok(fact)
}

/// Every equivariant map on the carrier, in a fixed order. Fails when their
/// number exceeds the budget.
pub fn enumerate_equivariant_maps(carrier: &Arc<Carrier>, budget: Budget) -> Result<Vec<EquivariantMap>> {
    let bases: Vec<usize> = carrier.bases().collect();
    // a base of period p may go to any point whose period divides p
    let choices: Vec<Vec<usize>> = bases
        .iter()
        .map(|&b| {
            let p = carrier.period(b);
            (0..carrier.len()).filter(|&j| p % carrier.period(j) == 0).collect()
        })
        .collect();
    let total = choices
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    budget.check(total)?;
    let mut maps = Vec::with_capacity(total as usize);
    let mut pick = vec![0usize; bases.len()];
    loop {
        let mut images = vec![0; carrier.len()];
        for (slot, &b) in bases.iter().enumerate() {
            let y = choices[slot][pick[slot]];
            for s in 0..carrier.period(b) {
                images[carrier.rotate(b, s)] = carrier.rotate(y, s);
            }
        }
        maps.push(EquivariantMap {
            carrier: carrier.clone(),
            images,
        });
        // odometer
        let mut slot = bases.len();
        loop {
            if slot == 0 {
                return Ok(maps);
            }
            slot -= 1;
            pick[slot] += 1;
            if pick[slot] < choices[slot].len() {
                break;
            }
            pick[slot] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub k: usize,
    pub m: usize,
    pub carrier_size: usize,
    pub equivariant_maps: usize,
    pub idempotents: usize,
    /// Size of the monoid generated by the idempotents (identity included).
    pub closure_size: usize,
    /// Number of maps satisfying the periodic-point condition.
    pub condition_size: usize,
    /// Maps in exactly one of the two sets.
    pub counterexamples: Vec<EquivariantMap>,
}

impl OracleReport {
    pub fn sets_equal(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Compares the monoid generated by equivariant idempotents on `Q_{≤m}` with
/// the set of equivariant maps satisfying the periodic-point condition.
pub fn monoid_closure_oracle(alphabet: Alphabet, m: usize, budget: Budget) -> Result<OracleReport> {
    let carrier = Arc::new(Carrier::new(alphabet, m, budget)?);
    let maps = enumerate_equivariant_maps(&carrier, budget)?;
    let idempotents: Vec<&EquivariantMap> = maps.iter().filter(|g| g.is_idempotent()).collect();

    let identity = EquivariantMap::identity(carrier.clone());
    let mut closure: HashSet<Vec<usize>> = HashSet::from([identity.images.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for e in &idempotents {
            let h = e.compose(&g);
            if closure.insert(h.images.clone()) {
                queue.push_back(h);
            }
        }
    }

    let mut condition_size = 0;
    let mut counterexamples = Vec::new();
    for g in &maps {
        let satisfies = g.condition_violation().is_none();
        condition_size += satisfies as usize;
        if satisfies != closure.contains(&g.images) {
            counterexamples.push(g.clone());
        }
    }
    Ok(OracleReport {
        k: alphabet.size(),
        m,
        carrier_size: carrier.len(),
        equivariant_maps: maps.len(),
        idempotents: idempotents.len(),
        closure_size: closure.len(),
        condition_size,
        counterexamples,
    })
}
