use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use idemca::coding::{build_triple, frame_occurrences, CodingKit};
use idemca::eraser::{build_eraser, verify_eraser, EraserFailure};
use idemca::finite::{decompose_finite, monoid_closure_oracle, verify_factorization, FiniteFunction};
use idemca::language::moore_myhill_crosscheck;
use idemca::marker::build_marker;
use idemca::membership::{decide_membership, explain, MembershipVerdict, Witness};
use idemca::periodic::{eq1_reports, Eq1Report};
use idemca::rulefile::parse_rule;
use idemca::{Alphabet, Budget, Ca, CyclicWord, Error, RuleTableCA, Word};
use idemca_cli as out;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "idemca", version, about = "Products of idempotent cellular automata")]
struct Cli {
    /// Seed for every randomized corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on the size of any exhaustive enumeration.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RuleArg {
    /// `eca:N` or the path of a rule file.
    #[arg(long)]
    rule: String,
}

#[derive(Subcommand)]
enum Command {
    /// Surjectivity, preinjectivity, an orphan and a diamond.
    Analyze(RuleArg),
    /// The periodic-point condition for periods 1..=bound.
    Eq1 {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Membership verdict with its certificate or witness.
    Membership {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Build and check the eraser of a non-surjective rule.
    Eraser {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long, default_value_t = 12)]
        period_bound: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Build a marker and optionally mark a word.
    Marker {
        #[arg(long, short = 'n')]
        gap: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Finite word; marks are reported for its interior cells.
        #[arg(long, conflicts_with = "cyclic")]
        word: Option<String>,
        /// Period word of a periodic configuration.
        #[arg(long)]
        cyclic: Option<String>,
    },
    /// Factor a finite map, given as comma-separated images, into idempotents.
    DecomposeFinite {
        #[arg(long)]
        map: String,
    },
    /// Compare the idempotent closure with the periodic-point condition on Q_{<=m}.
    Oracle {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Build the unbordered triple and capacity threshold around v.
    CodingKit(KitArgs),
    /// Encode a word avoiding v as a block w·s·w.
    Encode {
        #[command(flatten)]
        kit: KitArgs,
        #[arg(long)]
        word: String,
    },
    /// Decode a block produced by `encode`.
    Decode {
        #[command(flatten)]
        kit: KitArgs,
        #[arg(long)]
        block: String,
    },
}

#[derive(Args)]
struct KitArgs {
    #[arg(long)]
    v: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Lengths past the threshold on which the inequality is checked exactly.
    #[arg(long, default_value_t = 8)]
    span: usize,
    #[arg(long, default_value_t = 400)]
    scan_limit: usize,
    #[arg(long, default_value_t = 100_000)]
    candidates: u64,
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_infeasible() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<String, Failure>;

fn load_rule(spec: &str) -> Result<RuleTableCA, Failure> {
    if spec.trim_start().starts_with("eca:") {
        return Ok(parse_rule(spec)?);
    }
    let text = fs::read_to_string(spec).map_err(|e| malformed(format!("{spec}: {e}")))?;
    parse_rule(&text).map_err(|e| malformed(format!("{spec}: {e}")))
}

fn rule_name(spec: &str, ca: &RuleTableCA) -> String {
    match ca.wolfram_number() {
        Some(n) => format!("eca:{n}"),
        None => spec.to_string(),
    }
}

fn render<T: Serialize>(json: bool, record: &T, text: impl FnOnce(&T) -> String) -> Outcome {
    if json {
        let s = serde_json::to_string_pretty(record).expect("records serialize");
        Ok(s + "\n")
    } else {
        Ok(text(record))
    }
}

fn opt(s: &Option<String>) -> &str {
    s.as_deref().unwrap_or("none")
}

fn eq1_row(r: &Eq1Report) -> out::Eq1Row {
    out::Eq1Row {
        n: r.n,
        size: r.size,
        maps_onto: r.maps_onto,
        is_identity_on: r.is_identity_on,
        violation_witness: r.violation_witness.as_ref().map(ToString::to_string),
    }
}

fn alphabet(k: usize) -> Result<Alphabet, Failure> {
    Alphabet::new(k).map_err(Failure::from)
}

fn kit(args: &KitArgs) -> Result<CodingKit, Failure> {
    let alphabet = alphabet(args.k)?;
    let v = Word::parse(&args.v, alphabet)?;
    let triple = build_triple(alphabet, &v, args.candidates)?;
    Ok(CodingKit::new(triple, args.span, args.scan_limit)?)
}

fn run(cli: Cli) -> Outcome {
    let budget = Budget(cli.budget);
    let json = cli.json;
    match cli.command {
        Command::Analyze(RuleArg { rule }) => {
            let ca = load_rule(&rule)?;
            let report = moore_myhill_crosscheck(&ca, budget)?;
            let record = out::Analyze {
                rule: rule_name(&rule, &ca),
                surjective: report.surjective,
                preinjective: report.preinjective,
                orphan: report.orphan.as_ref().map(ToString::to_string),
                diamond: report.diamond.as_ref().map(|d| out::DiamondRecord {
                    u: d.u().to_string(),
                    u_prime: d.u_prime().to_string(),
                    prefix: d.prefix.to_string(),
                    mid_a: d.mid_a.to_string(),
                    mid_b: d.mid_b.to_string(),
                    suffix: d.suffix.to_string(),
                }),
            };
            render(json, &record, |r| {
                format!(
                    "rule: {}\nsurjective: {}\npreinjective: {}\norphan: {}\ndiamond: {}\n",
                    r.rule,
                    r.surjective,
                    r.preinjective,
                    opt(&r.orphan),
                    report.diamond.as_ref().map_or("none".into(), ToString::to_string)
                )
            })
        }
        Command::Eq1 { rule, bound } => {
            let ca = load_rule(&rule.rule)?;
            let reports = eq1_reports(&ca, bound, budget)?;
            let rows: Vec<out::Eq1Row> = reports.iter().map(eq1_row).collect();
            let record = out::Eq1 {
                rule: rule_name(&rule.rule, &ca),
                bound,
                violation: rows.iter().find(|r| r.violation_witness.is_some()).cloned(),
                reports: rows,
            };
            render(json, &record, |r| {
                let mut s = format!("rule: {}\nbound: {}\n", r.rule, r.bound);
                for row in &r.reports {
                    s += &format!(
                        "n={} |Q_n|={} onto={} identity={} witness={}\n",
                        row.n,
                        row.size,
                        row.maps_onto,
                        row.is_identity_on,
                        opt(&row.violation_witness)
                    );
                }
                s += &match &r.violation {
                    Some(v) => format!("violated at n={}\n", v.n),
                    None => format!("no violation up to {}\n", r.bound),
                };
                s
            })
        }
        Command::Membership { rule, bound } => {
            let ca = load_rule(&rule.rule)?;
            let verdict = decide_membership(&Ca::Table(ca.clone()), bound, budget)?;
            let (certificate, witness) = match &verdict {
                MembershipVerdict::In(c) => (Some(c.to_string()), None),
                MembershipVerdict::Out(Witness::SurjectiveNonIdentity) => (
                    None,
                    Some(out::WitnessRecord {
                        kind: "surjective-non-identity".into(),
                        n: None,
                        point: None,
                    }),
                ),
                MembershipVerdict::Out(Witness::Eq1Violation { n, point }) => (
                    None,
                    Some(out::WitnessRecord {
                        kind: "periodic-condition".into(),
                        n: Some(*n),
                        point: Some(point.to_string()),
                    }),
                ),
                MembershipVerdict::ConsistentUpTo(_) => (None, None),
            };
            let record = out::Membership {
                rule: rule_name(&rule.rule, &ca),
                verdict: verdict.label().into(),
                certificate,
                witness,
                bound,
                explanation: explain(&verdict),
            };
            render(json, &record, |r| format!("rule: {}\nverdict: {verdict}\n{}\n", r.rule, r.explanation))
        }
        Command::Eraser {
            rule,
            period_bound,
            trials,
        } => {
            let ca = load_rule(&rule.rule)?;
            let e = build_eraser(&ca, budget)?;
            let report = verify_eraser(&e, &ca, period_bound, trials, cli.seed)?;
            let record = out::Eraser {
                rule: rule_name(&rule.rule, &ca),
                u: e.u().to_string(),
                u_prime: e.u_prime().to_string(),
                radius: idemca::CellularAutomaton::radius(&e),
                cyclic_checked: report.cyclic_checked,
                random_checked: report.random_checked,
                failures: report.failures.iter().map(describe_failure).collect(),
                collision: report.collision.as_ref().map(|(x, y)| [x.to_string(), y.to_string()]),
                passed: report.passed(),
                seed: cli.seed,
            };
            render(json, &record, |r| {
                let mut s = format!(
                    "rule: {}\nu: {}\nu': {}\nradius: {}\ncyclic words checked: {}\nrandom words checked: {} (seed {})\n",
                    r.rule, r.u, r.u_prime, r.radius, r.cyclic_checked, r.random_checked, r.seed
                );
                for f in &r.failures {
                    s += &format!("failure: {f}\n");
                }
                s += &match &r.collision {
                    Some([x, y]) => format!("collision: {x} / {y}\n"),
                    None => "collision: none\n".into(),
                };
                s += &format!("passed: {}\n", r.passed);
                s
            })
        }
        Command::Marker { gap, k, word, cyclic } => {
            let alphabet = alphabet(k)?;
            let m = build_marker(alphabet, gap, budget)?;
            let (input, marks) = match (word, cyclic) {
                (Some(w), _) => {
                    let x = Word::parse(&w, alphabet)?;
                    (Some(w), Some(m.mark_word(&x)?.to_string()))
                }
                (None, Some(c)) => {
                    let x = CyclicWord::new(Word::parse(&c, alphabet)?);
                    (Some(c), Some(m.mark_cyclic(&x).period_word().to_string()))
                }
                (None, None) => (None, None),
            };
            let record = out::Marker {
                k,
                gap,
                priority_list_len: m.priority_list().len(),
                declared_radius: m.declared_radius(),
                input,
                marks,
            };
            render(json, &record, |r| {
                let mut s = format!(
                    "gap: {}\npriority list: {} windows\ndeclared radius: {}\n",
                    r.gap, r.priority_list_len, r.declared_radius
                );
                if let (Some(i), Some(m)) = (&r.input, &r.marks) {
                    s += &format!("input: {i}\nmarks: {m}\n");
                }
                s
            })
        }
        Command::DecomposeFinite { map } => {
            let f = FiniteFunction::parse(&map)?;
            let record = match decompose_finite(&f) {
                Ok(fact) => out::DecomposeFinite {
                    map: f.to_string(),
                    decomposable: true,
                    factors: fact.factors.iter().map(ToString::to_string).collect(),
                    verified: verify_factorization(&fact),
                },
                Err(Error::NotDecomposable) => out::DecomposeFinite {
                    map: f.to_string(),
                    decomposable: false,
                    factors: Vec::new(),
                    verified: false,
                },
                Err(e) => return Err(e.into()),
            };
            render(json, &record, |r| {
                if !r.decomposable {
                    return format!("map: {}\nnot decomposable: a non-identity bijection\n", r.map);
                }
                let mut s = format!("map: {}\nfactors (outermost first): {}\n", r.map, r.factors.len());
                for g in &r.factors {
                    s += &format!("  {g}\n");
                }
                s += &format!("verified: {}\n", r.verified);
                s
            })
        }
        Command::Oracle { m, k } => {
            let report = monoid_closure_oracle(alphabet(k)?, m, budget)?;
            let record = out::Oracle {
                k: report.k,
                m: report.m,
                carrier_size: report.carrier_size,
                equivariant_maps: report.equivariant_maps,
                idempotents: report.idempotents,
                closure_size: report.closure_size,
                condition_size: report.condition_size,
                sets_equal: report.sets_equal(),
                counterexamples: report.counterexamples.iter().map(ToString::to_string).collect(),
            };
            render(json, &record, |r| {
                format!(
                    "k: {}\nm: {}\ncarrier: {} points\nequivariant maps: {}\nidempotents: {}\nclosure: {}\nsatisfying the condition: {}\nequal: {}\n",
                    r.k, r.m, r.carrier_size, r.equivariant_maps, r.idempotents, r.closure_size, r.condition_size, r.sets_equal
                )
            })
        }
        Command::CodingKit(args) => {
            let kit = kit(&args)?;
            let t = &kit.triple;
            let record = out::CodingKitRecord {
                k: args.k,
                v: t.v.to_string(),
                w: t.w.to_string(),
                w0: t.w0.to_string(),
                w1: t.w1.to_string(),
                m: kit.m(),
                check_span: kit.capacity.check_span,
                k_sep: kit.k_sep,
                lambda_v: kit.capacity.lambda_v,
                lambda_w: kit.capacity.lambda_w,
                asymptotic: kit.capacity.asymptotic,
                max_len: kit.max_len(),
            };
            render(json, &record, |r| {
                format!(
                    "v: {}\nw: {}\nw0: {}\nw1: {}\nm: {} (checked on [{}, {}])\nk_sep: {}\ngrowth: {:.6} (avoid v) vs {:.6} (avoid w)\nmax block length: {}\n",
                    r.v, r.w, r.w0, r.w1, r.m, r.m, r.m + r.check_span, r.k_sep, r.lambda_v, r.lambda_w, r.max_len
                )
            })
        }
        Command::Encode { kit: args, word } => {
            let kit = kit(&args)?;
            let u = Word::parse(&word, kit.triple.alphabet)?;
            let block = kit.encode_rank(&u)?;
            debug_assert_eq!(frame_occurrences(&block, &kit.triple.w), 2);
            coded(json, &kit, word, block.to_string())
        }
        Command::Decode { kit: args, block } => {
            let kit = kit(&args)?;
            let b = Word::parse(&block, kit.triple.alphabet)?;
            let u = kit.decode_rank(&b)?;
            coded(json, &kit, block, u.to_string())
        }
    }
}

fn coded(json: bool, kit: &CodingKit, input: String, output: String) -> Outcome {
    let record = out::Coded {
        v: kit.triple.v.to_string(),
        w: kit.triple.w.to_string(),
        input,
        output,
    };
    render(json, &record, |r| format!("{}\n", r.output))
}

fn describe_failure(f: &EraserFailure) -> String {
    match f {
        EraserFailure::NotIdempotent { point } => format!("not idempotent on cyclic {point}"),
        EraserFailure::ImageChanged { point } => format!("source image changes on cyclic {point}"),
        EraserFailure::NotIdempotentOnWord { word } => format!("not idempotent on word {word}"),
        EraserFailure::ImageChangedOnWord { word } => format!("source image changes on word {word}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
