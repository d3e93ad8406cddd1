//! The learner/teacher game: equivalence checking, the teacher's coefficient
//! choice (cooperative or adversarial), and the three learner strategies.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hankel::{MembershipOracle, OracleSource};
use crate::hypothesis::{
    build_hypothesis, lambda_system, lambda_targets, solve_lambda, LambdaOutcome, LambdaTarget,
    SolutionLambda,
};
use crate::semiring::{Tag, Value};
use crate::solve::{enumerate_left, LinSystem, Status};
use crate::wfa::Wfa;
use crate::words::{sort_shortlex, suffixes, words_up_to, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Ally,
    Adversary,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Equivalence {
    /// Exact over RAT via row-space reachability of the paired automaton;
    /// returns a shortlex-minimal counterexample.
    FieldExact,
    /// Compare on all words up to the given length.
    Bounded(usize),
}

pub struct Teacher {
    pub oracle: MembershipOracle,
    pub equivalence: Equivalence,
    pub mode: Mode,
    /// Depth of the word set the teacher probes beyond (Q, T) when choosing
    /// coefficients.
    pub probe_depth: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Hkrs,
    Incremental,
    Enumeration,
}

#[derive(Clone, Debug)]
pub enum Event {
    PairQueried { q: Vec<Word>, t: Vec<Word> },
    EmptyDeclared { target: LambdaTarget },
    HypothesisIssued { states: usize },
    Counterexample { word: Word },
    Note(String),
    Success { states: usize },
}

#[derive(Clone, Debug, Default)]
pub struct GameTranscript {
    pub events: Vec<Event>,
    pub membership_queries: u64,
    pub solver_calls: u64,
    pub equivalence_queries: u64,
}

impl GameTranscript {
    pub fn interactions(&self) -> u64 {
        self.membership_queries + self.solver_calls + self.equivalence_queries
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Learned,
    BudgetExhausted,
}

#[derive(Debug)]
pub struct LearnResult {
    pub outcome: Outcome,
    pub hypothesis: Option<Wfa>,
    pub transcript: GameTranscript,
}

const ADVERSARY_PER_TARGET_CAP: usize = 64;
const ADVERSARY_COMBO_CAP: usize = 2_000;

fn enumerable(tag: Tag) -> bool {
    matches!(tag, Tag::Bool | Tag::Nat | Tag::NatMax | Tag::FinLang)
}

/// The teacher's answer to a pair query (Q, T).
pub fn choose_lambda(
    teacher: &Teacher,
    q: &[Word],
    t: &[Word],
    solver_calls: &mut u64,
    events: &mut Vec<Event>,
) -> Result<LambdaOutcome> {
    let o = &teacher.oracle;
    match teacher.mode {
        Mode::Ally => {
            let probe = words_up_to(&o.alphabet, teacher.probe_depth);
            let rep = solve_lambda(o, q, t, Some(&probe))?;
            *solver_calls += rep.solver_calls;
            Ok(rep.outcome)
        }
        Mode::Adversary => {
            let rep = solve_lambda(o, q, t, None)?;
            *solver_calls += rep.solver_calls;
            let LambdaOutcome::Solved(principal) = rep.outcome else {
                return Ok(rep.outcome);
            };
            if !enumerable(o.semiring.tag()) {
                events.push(Event::Note(format!(
                    "adversary falls back to the principal solution over {}",
                    o.semiring.tag().name()
                )));
                return Ok(LambdaOutcome::Solved(principal));
            }
            match adversarial_pick(teacher, q, t, &principal, solver_calls)? {
                Some(lam) => Ok(LambdaOutcome::Solved(lam)),
                None => Ok(LambdaOutcome::Solved(principal)),
            }
        }
    }
}

/// Enumerates the per-target solution sets and walks their (capped) cartesian
/// product, returning the first combined Λ whose hypothesis disagrees with
/// the target on a word within the probe depth.
fn adversarial_pick(
    teacher: &Teacher,
    q: &[Word],
    t: &[Word],
    principal: &SolutionLambda,
    solver_calls: &mut u64,
) -> Result<Option<SolutionLambda>> {
    let o = &teacher.oracle;
    let targets = lambda_targets(o, q);
    let principal_witness = |target: &LambdaTarget| -> Vec<Value> {
        match target {
            LambdaTarget::EpsRow => principal.init.clone(),
            LambdaTarget::Shift(w, a) => {
                let i = q.iter().position(|x| x == w).unwrap();
                principal.trans[a][i].clone()
            }
        }
    };
    let mut choice_sets: Vec<Vec<Vec<Value>>> = Vec::with_capacity(targets.len());
    for target in &targets {
        let sys = lambda_system(o, q, t, target)?;
        let nonzero: Vec<usize> = (0..sys.generators.len())
            .filter(|&p| !sys.generators[p].iter().all(|v| o.semiring.is_zero(v)))
            .collect();
        let reduced = LinSystem::new(
            o.semiring.clone(),
            nonzero.iter().map(|&p| sys.generators[p].clone()).collect(),
            sys.target.clone(),
        )?;
        *solver_calls += 1;
        let en = enumerate_left(&reduced, ADVERSARY_PER_TARGET_CAP)?;
        let expand = |reduced_coeffs: &[Value]| -> Vec<Value> {
            let mut full = vec![o.semiring.zero(); q.len()];
            for (ri, &p) in nonzero.iter().enumerate() {
                full[p] = reduced_coeffs[ri].clone();
            }
            full
        };
        let mut set: Vec<Vec<Value>> = if en.capped {
            vec![principal_witness(target)]
        } else {
            en.solutions.iter().map(|s| expand(s)).collect()
        };
        set.sort();
        set.dedup();
        choice_sets.push(set);
    }
    let probe = words_up_to(&o.alphabet, teacher.probe_depth);
    let mut idx = vec![0usize; choice_sets.len()];
    let mut combos = 0usize;
    'outer: loop {
        combos += 1;
        if combos > ADVERSARY_COMBO_CAP {
            return Ok(None);
        }
        let mut init = Vec::new();
        let mut trans: std::collections::BTreeMap<Letter, Vec<Vec<Value>>> = Default::default();
        for (target, (&i, set)) in targets.iter().zip(idx.iter().zip(choice_sets.iter())) {
            let w = set[i].clone();
            match target {
                LambdaTarget::EpsRow => init = w,
                LambdaTarget::Shift(_, a) => trans.entry(*a).or_default().push(w),
            }
        }
        let lam = SolutionLambda {
            q: q.to_vec(),
            t: t.to_vec(),
            init,
            trans,
        };
        let h = build_hypothesis(o, &lam)?;
        for w in &probe {
            if h.evaluate(w)? != o.value(w)? {
                return Ok(Some(lam));
            }
        }
        for p in (0..choice_sets.len()).rev() {
            idx[p] += 1;
            if idx[p] < choice_sets[p].len() {
                continue 'outer;
            }
            idx[p] = 0;
        }
        return Ok(None);
    }
}

/// Asks whether the hypothesis equals the target, returning a counterexample.
pub fn equivalence_query(teacher: &Teacher, h: &Wfa) -> Result<Option<Word>> {
    match teacher.equivalence {
        Equivalence::Bounded(depth) => {
            for w in words_up_to(&teacher.oracle.alphabet, depth) {
                if h.evaluate(&w)? != teacher.oracle.value(&w)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        Equivalence::FieldExact => {
            let OracleSource::Wfa(target) = &teacher.oracle.source else {
                return Err(Error::BadInput(
                    "exact equivalence needs an automaton-backed target".into(),
                ));
            };
            if target.semiring.tag() != Tag::Rat || h.semiring.tag() != Tag::Rat {
                return Err(Error::BadInput(
                    "exact equivalence is only available over RAT".into(),
                ));
            }
            field_exact_counterexample(target, h)
        }
    }
}

fn rat(v: &Value) -> BigRational {
    match v {
        Value::Rat(r) => r.clone(),
        _ => unreachable!(),
    }
}

/// Row-space reachability over the paired automaton (A, H): explore vectors
/// (α_A M_A(w), α_H M_H(w)), stopping on a basis. Every explored vector must
/// be orthogonal to (η_A, −η_H); the first violation bounds the length of a
/// true counterexample, which a shortlex sweep then pins down.
fn field_exact_counterexample(a: &Wfa, h: &Wfa) -> Result<Option<Word>> {
    let na = a.n_states();
    let nh = h.n_states();
    let n = na + nh;
    let alphabet = &a.alphabet;
    let mats: Vec<Vec<Vec<BigRational>>> = alphabet
        .iter()
        .map(|l| {
            let ma = &a.transitions[l];
            let mh = &h.transitions[l];
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i < na && j < na {
                                rat(&ma[i][j])
                            } else if i >= na && j >= na {
                                rat(&mh[i - na][j - na])
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let eta: Vec<BigRational> = a
        .final_
        .iter()
        .map(rat)
        .chain(h.final_.iter().map(|v| -rat(v)))
        .collect();
    let start: Vec<BigRational> = a
        .initial
        .iter()
        .map(rat)
        .chain(h.initial.iter().map(rat))
        .collect();
    // Echelon basis: (pivot index, vector with 1 at the pivot).
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut queue: VecDeque<(Word, Vec<BigRational>)> = VecDeque::from([(Word::new(), start)]);
    while let Some((w, v)) = queue.pop_front() {
        let disc: BigRational = v.iter().zip(eta.iter()).map(|(x, y)| x * y).sum();
        if !disc.is_zero() {
            // A real mismatch exists at some word of length ≤ |w|.
            let len = w.chars().count();
            for c in words_up_to(alphabet, len) {
                if a.evaluate(&c)? != h.evaluate(&c)? {
                    return Ok(Some(c));
                }
            }
            unreachable!("discrepancy vector without a word-level mismatch");
        }
        let mut r = v.clone();
        for (p, b) in &basis {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(b.iter()) {
                    let sub = &f * y;
                    *x = &*x - sub;
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let inv = r[p].clone();
        for x in r.iter_mut() {
            *x = &*x / &inv;
        }
        basis.push((p, r));
        for (li, &l) in alphabet.iter().enumerate() {
            let child: Vec<BigRational> = (0..n)
                .map(|j| v.iter().zip(mats[li].iter()).map(|(x, row)| x * &row[j]).sum())
                .collect();
            queue.push_back((format!("{w}{l}"), child));
        }
    }
    Ok(None)
}

struct Session<'a> {
    teacher: &'a Teacher,
    budget: u64,
    membership_start: u64,
    transcript: GameTranscript,
}

impl<'a> Session<'a> {
    fn new(teacher: &'a Teacher, budget: u64) -> Session<'a> {
        Session {
            teacher,
            budget,
            membership_start: teacher.oracle.query_count(),
            transcript: GameTranscript::default(),
        }
    }

    fn spent(&self) -> u64 {
        (self.teacher.oracle.query_count() - self.membership_start)
            + self.transcript.solver_calls
            + self.transcript.equivalence_queries
    }

    fn exhausted(&self) -> bool {
        self.spent() >= self.budget
    }

    fn finish(mut self, outcome: Outcome, hypothesis: Option<Wfa>) -> LearnResult {
        self.transcript.membership_queries =
            self.teacher.oracle.query_count() - self.membership_start;
        LearnResult {
            outcome,
            hypothesis,
            transcript: self.transcript,
        }
    }

    /// Pair query + teacher answer + (on success) hypothesis & equivalence.
    /// Returns the hypothesis (if one was issued) and the counterexample or
    /// failing target.
    fn round(&mut self, q: &[Word], t: &[Word]) -> Result<RoundResult> {
        self.transcript.events.push(Event::PairQueried {
            q: q.to_vec(),
            t: t.to_vec(),
        });
        let outcome = choose_lambda(
            self.teacher,
            q,
            t,
            &mut self.transcript.solver_calls,
            &mut self.transcript.events,
        )?;
        match outcome {
            LambdaOutcome::Failed { target, status } => {
                if status == Status::BoundExceeded {
                    self.transcript
                        .events
                        .push(Event::Note("solver bound exceeded".into()));
                    return Ok(RoundResult::Exhausted);
                }
                self.transcript.events.push(Event::EmptyDeclared {
                    target: target.clone(),
                });
                Ok(RoundResult::Empty(target))
            }
            LambdaOutcome::Solved(lam) => {
                let h = build_hypothesis(&self.teacher.oracle, &lam)?;
                self.transcript.events.push(Event::HypothesisIssued {
                    states: h.n_states(),
                });
                self.transcript.equivalence_queries += 1;
                match equivalence_query(self.teacher, &h)? {
                    None => {
                        self.transcript.events.push(Event::Success {
                            states: h.n_states(),
                        });
                        Ok(RoundResult::Learned(h))
                    }
                    Some(z) => {
                        self.transcript
                            .events
                            .push(Event::Counterexample { word: z.clone() });
                        Ok(RoundResult::Counterexample(z))
                    }
                }
            }
        }
    }
}

enum RoundResult {
    Learned(Wfa),
    Counterexample(Word),
    Empty(LambdaTarget),
    Exhausted,
}

pub fn run(teacher: &Teacher, strategy: Strategy, budget: u64) -> Result<LearnResult> {
    match strategy {
        Strategy::Hkrs => run_hkrs(teacher, budget),
        Strategy::Incremental => run_incremental(teacher, budget),
        Strategy::Enumeration => run_enumeration(teacher, budget),
    }
}

/// Counterexample-guided learning: closure failures extend Q by the failing
/// shifted row, counterexamples add their suffixes to T.
pub fn run_hkrs(teacher: &Teacher, budget: u64) -> Result<LearnResult> {
    let mut session = Session::new(teacher, budget);
    let mut q: Vec<Word> = vec![Word::new()];
    let mut t: Vec<Word> = vec![Word::new()];
    loop {
        if session.exhausted() {
            return Ok(session.finish(Outcome::BudgetExhausted, None));
        }
        match session.round(&q, &t)? {
            RoundResult::Learned(h) => return Ok(session.finish(Outcome::Learned, Some(h))),
            RoundResult::Exhausted => return Ok(session.finish(Outcome::BudgetExhausted, None)),
            RoundResult::Empty(target) => {
                let LambdaTarget::Shift(w, a) = target else {
                    // The ε row over Q ∋ ε always has the unit solution.
                    unreachable!("the ε-row target cannot fail while ε ∈ Q");
                };
                let mut added = w;
                added.push(a);
                q.push(added);
                sort_shortlex(&mut q);
            }
            RoundResult::Counterexample(z) => {
                t.extend(suffixes(&z));
                sort_shortlex(&mut t);
            }
        }
    }
}

/// Grows prefix/suffix depth counters instead of tracking individual words:
/// an empty Λ deepens Q, a counterexample deepens T.
pub fn run_incremental(teacher: &Teacher, budget: u64) -> Result<LearnResult> {
    let mut session = Session::new(teacher, budget);
    let alphabet = teacher.oracle.alphabet.clone();
    let (mut i, mut j) = (0usize, 0usize);
    loop {
        if session.exhausted() {
            return Ok(session.finish(Outcome::BudgetExhausted, None));
        }
        let q = words_up_to(&alphabet, i);
        let t = words_up_to(&alphabet, j);
        match session.round(&q, &t)? {
            RoundResult::Learned(h) => return Ok(session.finish(Outcome::Learned, Some(h))),
            RoundResult::Exhausted => return Ok(session.finish(Outcome::BudgetExhausted, None)),
            RoundResult::Empty(_) => i += 1,
            RoundResult::Counterexample(_) => j += 1,
        }
    }
}

/// Dovetails over all pairs (U_i, U_j) of shortlex prefixes of the word
/// enumeration, by diagonal i + j and then by i.
pub fn run_enumeration(teacher: &Teacher, budget: u64) -> Result<LearnResult> {
    let mut session = Session::new(teacher, budget);
    let alphabet = teacher.oracle.alphabet.clone();
    // Enough shortlex words for any diagonal the budget can reach.
    let mut universe = words_up_to(&alphabet, 1);
    let mut depth = 1usize;
    for s in 0usize.. {
        for i in 0..=s {
            let j = s - i;
            while universe.len() <= s + 1 {
                depth += 1;
                universe = words_up_to(&alphabet, depth);
            }
            if session.exhausted() {
                return Ok(session.finish(Outcome::BudgetExhausted, None));
            }
            let q: Vec<Word> = universe[..=i].to_vec();
            let t: Vec<Word> = universe[..=j].to_vec();
            match session.round(&q, &t)? {
                RoundResult::Learned(h) => return Ok(session.finish(Outcome::Learned, Some(h))),
                RoundResult::Exhausted => {
                    return Ok(session.finish(Outcome::BudgetExhausted, None))
                }
                RoundResult::Empty(_) | RoundResult::Counterexample(_) => {}
            }
        }
    }
    unreachable!()
}
