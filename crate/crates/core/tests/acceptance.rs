//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use idemca::ca::{compose, equals, is_idempotent};
use idemca::coding::{build_triple, CodingKit};
use idemca::eraser::{build_eraser, verify_eraser};
use idemca::finite::{decompose_finite, monoid_closure_oracle, verify_factorization, FiniteFunction};
use idemca::language::{find_diamond, is_orphan, is_surjective, moore_myhill_crosscheck};
use idemca::marker::build_marker;
use idemca::membership::{decide_membership, Certificate, MembershipVerdict, Witness};
use idemca::periodic::eq1_check_up_to;
use idemca::word::has_period_below;
use idemca::{Alphabet, Budget, Ca, CyclicWord, RuleTableCA, Symbol, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: Budget = Budget::DEFAULT;

// pinned limits
const MOORE_MYHILL_LIMIT: Duration = Duration::from_secs(10);
const MARKER_LIMIT: Duration = Duration::from_secs(120);
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const PRODUCTS: usize = 500;
const PRODUCT_BOUND: usize = 6;
const ERASER_MAX_U: usize = 8;
const ERASER_CYCLIC: usize = 12;
const RANDOM_TRIALS: usize = 10_000;
const MARKER_CYCLIC: usize = 14;
const MARKER_WORD_LEN: usize = 200;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn eca(n: u8) -> Ca {
    Ca::Table(RuleTableCA::elementary(n))
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn moore_myhill() -> Outcome {
    let start = Instant::now();
    let mut surjective = 0;
    for rule in 0..=255u8 {
        let g = RuleTableCA::elementary(rule);
        let report = moore_myhill_crosscheck(&g, B).map_err(|e| e.to_string())?;
        if report.surjective != report.preinjective {
            return fail(format!("ECA {rule}: surjective {} but preinjective {}", report.surjective, report.preinjective));
        }
        if report.surjective {
            surjective += 1;
            if report.orphan.is_some() || report.diamond.is_some() {
                return fail(format!("ECA {rule}: surjective rule with a witness"));
            }
            continue;
        }
        let orphan = report.orphan.ok_or(format!("ECA {rule}: no orphan"))?;
        if !is_orphan(&g, &orphan, B).map_err(|e| e.to_string())? {
            return fail(format!("ECA {rule}: {orphan} has a preimage"));
        }
        let diamond = report.diamond.ok_or(format!("ECA {rule}: no diamond"))?;
        if !diamond.verify(&g, B).map_err(|e| e.to_string())? {
            return fail(format!("ECA {rule}: diamond {diamond} does not verify"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > MOORE_MYHILL_LIMIT {
        return fail(format!("took {elapsed:.2?}, limit {MOORE_MYHILL_LIMIT:?}"));
    }
    Ok(format!("256 rules, {surjective} surjective, witnesses re-verified, {elapsed:.2?}"))
}

fn products_of_idempotents() -> Outcome {
    let idempotents: Vec<u8> = (0..=255u8)
        .filter(|&n| is_idempotent(&eca(n), B).unwrap())
        .collect();
    let identity = RuleTableCA::identity(Alphabet::BINARY);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut surjective = 0;
    for _ in 0..PRODUCTS {
        let len = rng.gen_range(2..=4);
        let picks: Vec<u8> = (0..len).map(|_| idempotents[rng.gen_range(0..idempotents.len())]).collect();
        let mut product = eca(picks[0]);
        for &p in &picks[1..] {
            product = compose(&eca(p), &product, B).map_err(|e| e.to_string())?;
        }
        if let Some(report) = eq1_check_up_to(&product, PRODUCT_BOUND, B).map_err(|e| e.to_string())? {
            return fail(format!("product {picks:?} violates the condition at n = {}", report.n));
        }
        let table = product.to_table(B).map_err(|e| e.to_string())?;
        if is_surjective(&table, B).map_err(|e| e.to_string())? {
            surjective += 1;
            if !equals(&table, &identity, B).map_err(|e| e.to_string())? {
                return fail(format!("product {picks:?} is surjective but not the identity"));
            }
        }
    }
    Ok(format!(
        "{} idempotent ECA, {PRODUCTS} products, {surjective} surjective (all identity)",
        idempotents.len()
    ))
}

fn erasers() -> Outcome {
    let mut qualified = Vec::new();
    for rule in 0..=255u8 {
        let g = RuleTableCA::elementary(rule);
        let Some(diamond) = find_diamond(&g, B).map_err(|e| e.to_string())? else {
            continue;
        };
        if diamond.u().len() > ERASER_MAX_U {
            continue;
        }
        let e = build_eraser(&g, B).map_err(|e| format!("ECA {rule}: {e}"))?;
        let report = verify_eraser(&e, &g, ERASER_CYCLIC, RANDOM_TRIALS, SEED ^ rule as u64)
            .map_err(|e| e.to_string())?;
        if !report.passed() {
            return fail(format!("ECA {rule}: {:?}", report.failures));
        }
        qualified.push(rule);
    }
    for required in [0, 128, 136] {
        if !qualified.contains(&required) {
            return fail(format!("ECA {required} did not qualify"));
        }
    }
    Ok(format!("{} rules with |u| <= {ERASER_MAX_U}, all checks passed", qualified.len()))
}

/// Spacing and coverage on the bi-infinite expansion of a cyclic word.
fn check_marks_cyclic(x: &CyclicWord, marks: &CyclicWord, n: usize) -> Result<(), String> {
    let len = x.len() as isize;
    let at: Vec<isize> = (0..len).filter(|&i| marks.at(i) == 1).collect();
    for &i in &at {
        for &j in &at {
            // nearest copy of j other than i itself
            let d = (-2..=2)
                .map(|t| (i - j - t * len).abs())
                .filter(|&d| d > 0)
                .min()
                .unwrap();
            if d < n as isize {
                return Err(format!("marks {d} apart on {x}"));
            }
        }
    }
    let n = n as isize;
    for i in 0..len {
        let covered = (i - n + 1..i + n).any(|j| marks.at(j) == 1);
        let window: Vec<Symbol> = (i - n..=i + n).map(|j| x.at(j)).collect();
        if !covered && !has_period_below(&window, n as usize) {
            return Err(format!("uncovered aperiodic window at {i} of {x}"));
        }
    }
    Ok(())
}

fn check_marks_word(x: &[Symbol], marks: &[Symbol], n: usize) -> Result<(), String> {
    let at: Vec<usize> = (0..marks.len()).filter(|&i| marks[i] == 1).collect();
    if at.windows(2).any(|p| p[1] - p[0] < n) {
        return Err("marks too close".into());
    }
    for i in 0..marks.len() {
        let covered = at.iter().any(|&j| j.abs_diff(i) < n);
        if !covered && !has_period_below(&x[i..i + 2 * n + 1], n) {
            return Err(format!("uncovered aperiodic window at {i}"));
        }
    }
    Ok(())
}

fn markers() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for n in [2, 3] {
        let m = build_marker(Alphabet::BINARY, n, B).map_err(|e| e.to_string())?;
        for len in 1..=MARKER_CYCLIC {
            for w in Alphabet::BINARY.words(len) {
                let x = CyclicWord::new(w);
                check_marks_cyclic(&x, &m.mark_cyclic(&x), n).map_err(|e| format!("N = {n}: {e}"))?;
                checked += 1;
            }
        }
        for _ in 0..RANDOM_TRIALS {
            let x: Vec<Symbol> = (0..MARKER_WORD_LEN).map(|_| rng.gen_range(0..2)).collect();
            let marks = m.mark_word(&x).map_err(|e| e.to_string())?;
            check_marks_word(&x, &marks, n).map_err(|e| format!("N = {n}: {e} in {}", Word(x.clone())))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > MARKER_LIMIT {
        return fail(format!("took {elapsed:.2?}, limit {MARKER_LIMIT:?}"));
    }
    Ok(format!("N in {{2, 3}}, {checked} inputs, {elapsed:.2?}"))
}

/// Every map `n -> n`, as image vectors.
fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

fn finite_factorizations() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        let maps = all_maps(n);
        let then = |f: &[usize], g: &[usize]| -> Vec<usize> { (0..n).map(|a| g[f[a]]).collect() };
        let idempotents: Vec<&Vec<usize>> = maps.iter().filter(|f| then(f, f) == **f).collect();
        let identity: Vec<usize> = (0..n).collect();
        let mut closure = HashSet::from([identity.clone()]);
        let mut frontier = vec![identity.clone()];
        while let Some(f) = frontier.pop() {
            for e in &idempotents {
                let h = then(&f, e);
                if closure.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        for images in &maps {
            let f = FiniteFunction::new(images.clone()).map_err(|e| e.to_string())?;
            let expected = f.is_identity() || !f.is_bijection();
            let result = decompose_finite(&f);
            if result.is_ok() != expected || closure.contains(images) != expected {
                return fail(format!("{f}: decomposed {}, in closure {}", result.is_ok(), closure.contains(images)));
            }
            if let Ok(fact) = result {
                if !verify_factorization(&fact) {
                    return fail(format!("{f}: factorization does not verify"));
                }
            }
            total += 1;
        }
    }
    Ok(format!("{total} maps on sets of size 1..=4, matches the idempotent closure"))
}

fn oracle() -> Outcome {
    let mut lines = Vec::new();
    for m in 1..=3 {
        let start = Instant::now();
        let report = monoid_closure_oracle(Alphabet::BINARY, m, B).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if !report.sets_equal() {
            return fail(format!("m = {m}: {} counterexamples", report.counterexamples.len()));
        }
        if elapsed > ORACLE_LIMIT {
            return fail(format!("m = {m} took {elapsed:.2?}, limit {ORACLE_LIMIT:?}"));
        }
        lines.push(format!("m={m}: {} maps {elapsed:.2?}", report.closure_size));
    }
    Ok(lines.join(", "))
}

fn membership() -> Outcome {
    let k3 = Alphabet::new(3).unwrap();
    let cases = [
        (eca(204), 8, MembershipVerdict::In(Certificate::Identity)),
        (eca(102), 8, MembershipVerdict::Out(Witness::SurjectiveNonIdentity)),
        (
            Ca::Table(RuleTableCA::left_shift(Alphabet::BINARY)),
            4,
            MembershipVerdict::Out(Witness::Eq1Violation {
                n: 2,
                point: CyclicWord::new(Word::parse("01", Alphabet::BINARY).unwrap()),
            }),
        ),
        (
            Ca::Table(RuleTableCA::symbol_map(k3, &[0, 0, 1]).unwrap()),
            5,
            MembershipVerdict::In(Certificate::EventuallyIdempotent(2)),
        ),
        (eca(136), 10, MembershipVerdict::ConsistentUpTo(10)),
    ];
    for (ca, bound, expected) in cases {
        let got = decide_membership(&ca, bound, B).map_err(|e| e.to_string())?;
        if got != expected {
            return fail(format!("{ca:?}: expected {expected}, got {got}"));
        }
    }
    Ok("five verdicts exact".into())
}

/// All binary words of length `n` avoiding `v`, depth first in lexicographic order.
fn for_each_avoiding(n: usize, v: &[Symbol], mut visit: impl FnMut(&[Symbol])) -> u64 {
    let mut word = Vec::with_capacity(n);
    let mut count = 0;
    fn go(word: &mut Vec<Symbol>, n: usize, v: &[Symbol], count: &mut u64, visit: &mut dyn FnMut(&[Symbol])) {
        if word.ends_with(v) {
            return;
        }
        if word.len() == n {
            *count += 1;
            visit(word);
            return;
        }
        for a in 0..2 {
            word.push(a);
            go(word, n, v, count, visit);
            word.pop();
        }
    }
    go(&mut word, n, v, &mut count, &mut visit);
    count
}

fn coding() -> Outcome {
    let start = Instant::now();
    let v = Word::parse("001", Alphabet::BINARY).unwrap();
    let triple = build_triple(Alphabet::BINARY, &v, 100_000).map_err(|e| e.to_string())?;
    if !triple.verify(B).map_err(|e| e.to_string())? {
        return fail(format!("triple {triple} does not verify"));
    }
    let kit = CodingKit::new(triple, 8, 400).map_err(|e| e.to_string())?;
    let m = kit.m();
    for n in m..=m + 8 {
        if !kit.inequality_holds(n).map_err(|e| e.to_string())? {
            return fail(format!("capacity inequality fails at n = {n}"));
        }
    }
    let w = kit.triple.w.clone();
    let mut block = vec![0; m];
    let mut back = vec![0; m];
    let mut error = None;
    let count = for_each_avoiding(m, &v, |u| {
        if error.is_some() {
            return;
        }
        let result = kit
            .encode_into(u, &mut block)
            .and_then(|()| kit.decode_into(&block, &mut back));
        match result {
            Err(e) => error = Some(format!("{}: {e}", Word(u.to_vec()))),
            Ok(()) if back != u => error = Some(format!("{} does not round-trip", Word(u.to_vec()))),
            Ok(()) if block.windows(w.len()).filter(|x| *x == &w[..]).count() != 2 => {
                error = Some(format!("{} encodes with w not exactly twice", Word(u.to_vec())))
            }
            Ok(()) => {}
        }
    });
    if let Some(e) = error {
        return fail(e);
    }
    let expected = kit.count_v(m).map_err(|e| e.to_string())?;
    if expected != count.into() {
        return fail(format!("enumerated {count} words, expected {expected}"));
    }
    Ok(format!(
        "{}, m = {m}, inequality on [{m}, {}], {count} words round-trip, {:.2?}",
        kit.triple,
        m + 8,
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 moore-myhill", moore_myhill),
        ("2 products of idempotents", products_of_idempotents),
        ("3 eraser", erasers),
        ("4 marker", markers),
        ("5 finite factorization", finite_factorizations),
        ("6 monoid oracle", oracle),
        ("7 membership verdicts", membership),
        ("8 coding", coding),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
