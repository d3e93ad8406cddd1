use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use wal_core::classify::{self, Fixture};
use wal_core::hankel::MembershipOracle;
use wal_core::hypothesis::{
    build_cohypothesis, build_hypothesis, literalize, solve_gamma, solve_lambda, GammaOutcome,
    LambdaOutcome,
};
use wal_core::learner::{Equivalence, Event, Mode, Strategy, Teacher};
use wal_core::semiring::{Semiring, Tag};
use wal_core::solve::{solve_left, solve_right, LinSystem, Status};
use wal_core::wfa::Wfa;
use wal_core::words::{display, sort_shortlex, words_up_to, Word};
use wal_core::{learner, Error};

#[derive(Parser)]
#[command(name = "wal", about = "weighted automata learning toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized suites; accepted everywhere for reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessArg {
    Row,
    Column,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Hkrs,
    Incremental,
    Enumeration,
}

#[derive(Clone, Copy, ValueEnum)]
enum TeacherArg {
    Ally,
    Adversary,
}

#[derive(Args)]
struct TargetArgs {
    /// Automaton file in the documented JSON format.
    #[arg(long, conflicts_with = "fixture")]
    target: Option<String>,
    /// Name of a registry fixture (see `wal fixtures`).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an automaton on one word.
    Eval {
        #[arg(long)]
        automaton: String,
        /// The word; pass "" (or eps) for the empty word.
        #[arg(long)]
        word: String,
    },
    /// Print a finite Hankel block for an automaton or fixture.
    Hankel {
        #[command(flatten)]
        target: TargetArgs,
        /// Comma-separated row prefixes.
        #[arg(long)]
        rows: String,
        /// Comma-separated column suffixes.
        #[arg(long)]
        cols: String,
    },
    /// Solve a one-sided linear system from a file.
    Solve {
        #[arg(long)]
        system: String,
    },
    /// Solve the hypothesis equations over (rows, cols) and emit the automaton.
    Hypothesis {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Extend the solved side by all words up to this depth.
        #[arg(long)]
        probe_depth: Option<usize>,
    },
    /// Run a learning session against a teacher.
    Learn {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = TeacherArg::Ally)]
        teacher: TeacherArg,
        /// Bounded equivalence depth; omit for exact equivalence (fields only).
        #[arg(long)]
        equiv_depth: Option<usize>,
        #[arg(long, default_value_t = 6)]
        probe_depth: usize,
        #[arg(long)]
        budget: u64,
        /// Write the transcript as line-delimited JSON events.
        #[arg(long)]
        transcript: Option<String>,
    },
    /// Literalize the hypothesis solved over (rows, cols).
    Literalize {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        /// Validation depth for the literalized automaton.
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Print the mirror of an automaton.
    Mirror {
        #[arg(long)]
        automaton: String,
    },
    /// Probe a fixture's guessability at bounded scale, or check the table.
    Classify {
        #[arg(long, conflicts_with = "table")]
        fixture: Option<String>,
        #[arg(long)]
        max_q: Option<usize>,
        #[arg(long)]
        max_t: Option<usize>,
        /// Run the documented obstruction/generation witnesses instead.
        #[arg(long, value_enum)]
        witness: Option<WitnessArg>,
        /// Check every documented table cell.
        #[arg(long)]
        table: bool,
    },
    /// List the fixture registry; optionally emit automaton files.
    Fixtures {
        /// Directory to write one <name>.json per fixture automaton.
        #[arg(long)]
        emit: Option<String>,
    },
}

fn parse_words(s: &str) -> Vec<Word> {
    let mut ws: Vec<Word> = s
        .split(',')
        .map(|w| if w == "eps" { String::new() } else { w.to_string() })
        .collect();
    sort_shortlex(&mut ws);
    ws
}

fn file_stem(name: &str) -> String {
    name.replace("''", "pp").replace('\'', "p")
}

fn load_fixture(name: &str) -> Result<Fixture, Error> {
    classify::fixture(name).or_else(|e| {
        classify::fixtures()
            .into_iter()
            .find(|f| file_stem(f.name) == name)
            .ok_or(e)
    })
}

fn load_oracle(t: &TargetArgs) -> Result<MembershipOracle, Error> {
    match (&t.target, &t.fixture) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
            let j: Json = serde_json::from_str(&text)
                .map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
            Ok(MembershipOracle::from_wfa(Wfa::from_json(&j)?))
        }
        (None, Some(name)) => Ok(load_fixture(name)?.oracle()),
        _ => Err(Error::BadInput(
            "exactly one of --target and --fixture is required".into(),
        )),
    }
}

fn load_automaton(path: &str) -> Result<Wfa, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
    let j: Json =
        serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
    Wfa::from_json(&j)
}

fn parse_semiring(j: &Json) -> Result<Semiring, Error> {
    let name = j
        .get("semiring")
        .and_then(Json::as_str)
        .ok_or_else(|| Error::BadInput("system file: missing \"semiring\"".into()))?;
    let tag = Tag::from_name(name)?;
    if tag == Tag::FinLang {
        let alphabet = j
            .get("alphabet")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::BadInput("FINLANG system needs \"alphabet\"".into()))?;
        Ok(Semiring::finlang(&alphabet.chars().collect::<Vec<_>>()))
    } else {
        Ok(Semiring::new(tag))
    }
}

fn value_row(s: &Semiring, j: &Json) -> Result<Vec<wal_core::semiring::Value>, Error> {
    j.as_array()
        .ok_or_else(|| Error::BadInput("system file: vector must be an array".into()))?
        .iter()
        .map(|v| {
            let text = v
                .as_str()
                .map(str::to_string)
                .unwrap_or_else(|| v.to_string());
            s.parse(&text)
        })
        .collect()
}

fn event_json(e: &Event) -> Json {
    match e {
        Event::PairQueried { q, t } => json!({
            "event": "pair-queried",
            "q": q.iter().map(|w| display(w)).collect::<Vec<_>>(),
            "t": t.iter().map(|w| display(w)).collect::<Vec<_>>(),
        }),
        Event::EmptyDeclared { target } => json!({
            "event": "empty-declared",
            "target": format!("{target:?}"),
        }),
        Event::HypothesisIssued { states } => {
            json!({"event": "hypothesis-issued", "states": states})
        }
        Event::Counterexample { word } => {
            json!({"event": "counterexample", "word": display(word)})
        }
        Event::Note(msg) => json!({"event": "note", "message": msg}),
        Event::Success { states } => json!({"event": "success", "states": states}),
    }
}

fn print_block(
    format: Format,
    name: &str,
    rows: &[Word],
    cols: &[Word],
    cells: &[Vec<String>],
) {
    match format {
        Format::Json => {
            let obj = json!({
                "block": name,
                "rows": rows.iter().map(|w| display(w)).collect::<Vec<_>>(),
                "cols": cols.iter().map(|w| display(w)).collect::<Vec<_>>(),
                "values": cells,
            });
            println!("{obj}");
        }
        Format::Csv => {
            for (i, r) in rows.iter().enumerate() {
                for (j, c) in cols.iter().enumerate() {
                    println!("{name},{},{},{}", display(r), display(c), cells[i][j]);
                }
            }
        }
        Format::Table => {
            let mut widths: Vec<usize> = cols.iter().map(|c| display(c).len()).collect();
            for row in cells {
                for (j, v) in row.iter().enumerate() {
                    widths[j] = widths[j].max(v.len());
                }
            }
            let label = rows.iter().map(|r| display(r).len()).max().unwrap_or(0);
            println!("[{name}]");
            let header: Vec<String> = cols
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:>w$}", display(c), w = w))
                .collect();
            println!("{:>label$}  {}", "", header.join("  "), label = label);
            for (i, r) in rows.iter().enumerate() {
                let line: Vec<String> = cells[i]
                    .iter()
                    .zip(&widths)
                    .map(|(v, w)| format!("{v:>w$}", w = w))
                    .collect();
                println!("{:>label$}  {}", display(r), line.join("  "), label = label);
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Eval { automaton, word } => {
            let a = load_automaton(&automaton)?;
            let w = if word == "eps" { String::new() } else { word };
            println!("{}", a.semiring.render(&a.evaluate(&w)?));
            Ok(0)
        }
        Command::Hankel { target, rows, cols } => {
            let o = load_oracle(&target)?;
            let q = parse_words(&rows);
            let t = parse_words(&cols);
            let h = o.assemble(&q, &t)?;
            let render =
                |m: &[Vec<wal_core::semiring::Value>]| -> Vec<Vec<String>> {
                    m.iter()
                        .map(|r| r.iter().map(|v| o.semiring.render(v)).collect())
                        .collect()
                };
            print_block(cli.format, "base", &h.q, &h.t, &render(&h.base));
            for (a, block) in &h.extensions {
                print_block(cli.format, &format!("shift-{a}"), &h.q, &h.t, &render(block));
            }
            let eps = vec![h.eps_row.iter().map(|v| o.semiring.render(v)).collect()];
            print_block(cli.format, "eps-row", &[String::new()], &h.t, &eps);
            let fin: Vec<Vec<String>> = h
                .finals
                .iter()
                .map(|v| vec![o.semiring.render(v)])
                .collect();
            print_block(cli.format, "finals", &h.q, &[String::new()], &fin);
            Ok(0)
        }
        Command::Solve { system } => {
            let text =
                fs::read_to_string(&system).map_err(|e| Error::BadInput(format!("{system}: {e}")))?;
            let j: Json = serde_json::from_str(&text)
                .map_err(|e| Error::BadInput(format!("{system}: {e}")))?;
            let s = parse_semiring(&j)?;
            let side = j.get("side").and_then(Json::as_str).unwrap_or("left");
            let generators = j
                .get("generators")
                .and_then(Json::as_array)
                .ok_or_else(|| Error::BadInput("system file: missing \"generators\"".into()))?
                .iter()
                .map(|g| value_row(&s, g))
                .collect::<Result<Vec<_>, _>>()?;
            let target = value_row(
                &s,
                j.get("target")
                    .ok_or_else(|| Error::BadInput("system file: missing \"target\"".into()))?,
            )?;
            let sys = LinSystem::new(s.clone(), generators, target)?;
            let out = match side {
                "left" => solve_left(&sys),
                "right" => solve_right(&sys),
                other => {
                    return Err(Error::BadInput(format!("side must be left|right, got {other}")))
                }
            };
            let witness: Option<Vec<String>> = out
                .witness
                .as_ref()
                .map(|w| w.iter().map(|v| s.render(v)).collect());
            match cli.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "status": format!("{:?}", out.status),
                        "method": out.method,
                        "witness": witness,
                        "note": out.bound_note,
                    })
                ),
                _ => {
                    println!("status: {:?}", out.status);
                    println!("method: {}", out.method);
                    if let Some(w) = witness {
                        println!("witness: [{}]", w.join(", "));
                    }
                    if let Some(n) = out.bound_note {
                        println!("note: {n}");
                    }
                }
            }
            Ok(if out.status == Status::BoundExceeded { 2 } else { 0 })
        }
        Command::Hypothesis {
            target,
            rows,
            cols,
            side,
            probe_depth,
        } => {
            let o = load_oracle(&target)?;
            let q = parse_words(&rows);
            let t = parse_words(&cols);
            let probe = probe_depth.map(|d| words_up_to(&o.alphabet, d));
            match side {
                SideArg::Left => {
                    let rep = solve_lambda(&o, &q, &t, probe.as_deref())?;
                    match rep.outcome {
                        LambdaOutcome::Solved(lam) => {
                            let h = build_hypothesis(&o, &lam)?;
                            println!("{}", h.to_json());
                            Ok(0)
                        }
                        LambdaOutcome::Failed { target, status } => {
                            eprintln!("no hypothesis: {target:?} -> {status:?}");
                            Ok(if status == Status::BoundExceeded { 2 } else { 1 })
                        }
                    }
                }
                SideArg::Right => {
                    let rep = solve_gamma(&o, &q, &t, probe.as_deref())?;
                    match rep.outcome {
                        GammaOutcome::Solved(gam) => {
                            let h = build_cohypothesis(&o, &gam)?;
                            println!("{}", h.to_json());
                            Ok(0)
                        }
                        GammaOutcome::Failed { target, status } => {
                            eprintln!("no co-hypothesis: {target:?} -> {status:?}");
                            Ok(if status == Status::BoundExceeded { 2 } else { 1 })
                        }
                    }
                }
            }
        }
        Command::Learn {
            target,
            strategy,
            teacher,
            equiv_depth,
            probe_depth,
            budget,
            transcript,
        } => {
            let oracle = load_oracle(&target)?;
            let equivalence = match equiv_depth {
                Some(d) => Equivalence::Bounded(d),
                None => Equivalence::FieldExact,
            };
            let t = Teacher {
                oracle,
                equivalence,
                mode: match teacher {
                    TeacherArg::Ally => Mode::Ally,
                    TeacherArg::Adversary => Mode::Adversary,
                },
                probe_depth,
            };
            let strategy = match strategy {
                StrategyArg::Hkrs => Strategy::Hkrs,
                StrategyArg::Incremental => Strategy::Incremental,
                StrategyArg::Enumeration => Strategy::Enumeration,
            };
            let result = learner::run(&t, strategy, budget)?;
            let lines: Vec<String> = result
                .transcript
                .events
                .iter()
                .map(|e| event_json(e).to_string())
                .collect();
            if let Some(path) = transcript {
                fs::write(&path, lines.join("\n") + "\n")
                    .map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
            } else {
                for l in &lines {
                    println!("{l}");
                }
            }
            eprintln!(
                "outcome: {:?} (membership {}, solver {}, equivalence {})",
                result.outcome,
                result.transcript.membership_queries,
                result.transcript.solver_calls,
                result.transcript.equivalence_queries
            );
            match result.hypothesis {
                Some(h) => {
                    println!("{}", h.to_json());
                    Ok(0)
                }
                None => Ok(2),
            }
        }
        Command::Literalize {
            target,
            rows,
            cols,
            depth,
        } => {
            let o = load_oracle(&target)?;
            let q = parse_words(&rows);
            let t = parse_words(&cols);
            let rep = solve_lambda(&o, &q, &t, None)?;
            match rep.outcome {
                LambdaOutcome::Solved(lam) => {
                    let lit = literalize(&o, &lam, depth)?;
                    println!("{}", lit.to_json());
                    Ok(0)
                }
                LambdaOutcome::Failed { target, status } => {
                    eprintln!("no hypothesis to literalize: {target:?} -> {status:?}");
                    Ok(if status == Status::BoundExceeded { 2 } else { 1 })
                }
            }
        }
        Command::Mirror { automaton } => {
            let a = load_automaton(&automaton)?;
            println!("{}", a.mirror().to_json());
            Ok(0)
        }
        Command::Classify {
            fixture,
            max_q,
            max_t,
            witness,
            table,
        } => {
            if table {
                let cells = classify::check_expected_table()?;
                let mut all_pass = true;
                for c in &cells {
                    all_pass &= c.pass;
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            json!({
                                "fixture": c.fixture,
                                "property": c.property,
                                "expected": c.expected,
                                "detail": c.detail,
                                "pass": c.pass,
                            })
                        ),
                        Format::Csv => println!(
                            "{},{},{},{}",
                            c.fixture,
                            c.property,
                            c.expected,
                            if c.pass { "PASS" } else { "FAIL" }
                        ),
                        Format::Table => println!(
                            "{:4} {:10} {:22} expected={:5}  {}",
                            if c.pass { "PASS" } else { "FAIL" },
                            c.fixture,
                            c.property,
                            c.expected,
                            c.detail
                        ),
                    }
                }
                println!("{}", classify::BOUNDED_SCALE_CAVEAT);
                return Ok(if all_pass { 0 } else { 1 });
            }
            let name = fixture
                .ok_or_else(|| Error::BadInput("--fixture or --table is required".into()))?;
            let fx = load_fixture(&name)?;
            if let Some(w) = witness {
                let cells = classify::fixture_cells(&fx)?;
                let want = match w {
                    WitnessArg::Row => "weakly guessable",
                    WitnessArg::Column => "weakly co-guessable",
                };
                for c in cells.iter().filter(|c| c.property == want) {
                    println!(
                        "{} {}: {}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.property,
                        c.detail
                    );
                }
                println!("{}", classify::BOUNDED_SCALE_CAVEAT);
                return Ok(0);
            }
            let rep = classify::probe_weak_guessability(&fx, max_q.unwrap_or(1), max_t.unwrap_or(2))?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "fixture": rep.fixture,
                        "params": rep.params,
                        "findings": rep
                            .findings
                            .iter()
                            .map(|f| json!({
                                "kind": f.kind,
                                "params": f.params,
                                "verdict": format!("{:?}", f.verdict),
                            }))
                            .collect::<Vec<_>>(),
                        "caveat": rep.caveat,
                    })
                ),
                _ => {
                    println!("fixture: {} ({})", rep.fixture, rep.params);
                    for f in &rep.findings {
                        println!("  {:?} {} {}", f.verdict, f.kind, f.params);
                    }
                    println!("caveat: {}", rep.caveat);
                }
            }
            Ok(0)
        }
        Command::Fixtures { emit } => {
            for fx in classify::fixtures() {
                let e = fx.expected;
                let flags: Vec<&str> = [
                    (e.weakly_guessable, "weakly-guessable"),
                    (e.guessable, "guessable"),
                    (e.strongly_guessable, "strongly-guessable"),
                    (e.weakly_co_guessable, "weakly-co-guessable"),
                    (e.co_guessable, "co-guessable"),
                    (e.strongly_co_guessable, "strongly-co-guessable"),
                ]
                .iter()
                .filter(|(on, _)| *on)
                .map(|(_, n)| *n)
                .collect();
                println!(
                    "{:12} {:12} [{}]",
                    fx.name,
                    fx.semiring.tag().name(),
                    flags.join(", ")
                );
                if let Some(dir) = &emit {
                    if let Some(a) = &fx.automaton {
                        let path = format!("{dir}/{}.json", file_stem(fx.name));
                        fs::write(&path, a.to_json().to_string())
                            .map_err(|e| Error::BadInput(format!("{path}: {e}")))?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BoundExceeded(_) | Error::InfiniteSetRisk => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
        Err(_) => ExitCode::from(3),
    }
}
