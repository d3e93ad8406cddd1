//! Λ/Γ systems over a finite sub-Hankel block, hypothesis and co-hypothesis
//! automata, and literalization of a solved Λ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hankel::MembershipOracle;
use crate::semiring::Value;
use crate::solve::{solve_left, solve_right, LinSystem, Status};
use crate::wfa::Wfa;
use crate::words::{display, prefix_closure, words_up_to, Letter, Word};

/// A solution of the Λ_{Q,T} system: ⟨ε⟩_T = ⊕_q λ_q ⊗ ⟨q⟩_T and, for every
/// q ∈ Q and letter a, (⟨q⟩·a)_T = ⊕_p λ_{q,a,p} ⊗ ⟨p⟩_T.
#[derive(Clone, Debug)]
pub struct SolutionLambda {
    pub q: Vec<Word>,
    pub t: Vec<Word>,
    /// λ_q, indexed like `q`.
    pub init: Vec<Value>,
    /// trans[a][q][p] = λ_{q,a,p}.
    pub trans: BTreeMap<Letter, Vec<Vec<Value>>>,
}

/// A solution of the dual Γ_{Q,T} system: [ε]_Q = ⊕_t [t]_Q ⊗ γ_t and, for
/// every letter a and t ∈ T, (a·[t])_Q = ⊕_s [s]_Q ⊗ γ_{s,a,t}.
#[derive(Clone, Debug)]
pub struct SolutionGamma {
    pub q: Vec<Word>,
    pub t: Vec<Word>,
    /// γ_t, indexed like `t`.
    pub fin: Vec<Value>,
    /// trans[a][s][t] = γ_{s,a,t}.
    pub trans: BTreeMap<Letter, Vec<Vec<Value>>>,
}

/// One equation of Λ_{Q,T}, in the order failures are reported: the ε row
/// first, then the shifted rows (q, a) with q shortlex and a in alphabet
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LambdaTarget {
    EpsRow,
    Shift(Word, Letter),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GammaTarget {
    EpsCol,
    Shift(Letter, Word),
}

#[derive(Clone, Debug)]
pub enum LambdaOutcome {
    Solved(SolutionLambda),
    Failed { target: LambdaTarget, status: Status },
}

#[derive(Clone, Debug)]
pub enum GammaOutcome {
    Solved(SolutionGamma),
    Failed { target: GammaTarget, status: Status },
}

#[derive(Debug)]
pub struct LambdaReport {
    pub outcome: LambdaOutcome,
    pub solver_calls: u64,
}

#[derive(Debug)]
pub struct GammaReport {
    pub outcome: GammaOutcome,
    pub solver_calls: u64,
}

/// The Λ equation for one target over column set `cols`.
pub fn lambda_system(
    o: &MembershipOracle,
    q: &[Word],
    cols: &[Word],
    target: &LambdaTarget,
) -> Result<LinSystem> {
    let generators = q
        .iter()
        .map(|r| o.row(r, cols))
        .collect::<Result<Vec<_>>>()?;
    let b = match target {
        LambdaTarget::EpsRow => o.row("", cols)?,
        LambdaTarget::Shift(w, a) => o.row(&format!("{w}{a}"), cols)?,
    };
    LinSystem::new(o.semiring.clone(), generators, b)
}

/// The Γ equation for one target over row set `rows`.
pub fn gamma_system(
    o: &MembershipOracle,
    rows: &[Word],
    t: &[Word],
    target: &GammaTarget,
) -> Result<LinSystem> {
    let generators = t
        .iter()
        .map(|c| o.column(c, rows))
        .collect::<Result<Vec<_>>>()?;
    let b = match target {
        GammaTarget::EpsCol => o.column("", rows)?,
        GammaTarget::Shift(a, w) => o.column(&format!("{a}{w}"), rows)?,
    };
    LinSystem::new(o.semiring.clone(), generators, b)
}

pub fn lambda_targets(o: &MembershipOracle, q: &[Word]) -> Vec<LambdaTarget> {
    let mut ts = vec![LambdaTarget::EpsRow];
    for w in q {
        for &a in &o.alphabet {
            ts.push(LambdaTarget::Shift(w.clone(), a));
        }
    }
    ts
}

pub fn gamma_targets(o: &MembershipOracle, t: &[Word]) -> Vec<GammaTarget> {
    let mut ts = vec![GammaTarget::EpsCol];
    for w in t {
        for &a in &o.alphabet {
            ts.push(GammaTarget::Shift(a, w.clone()));
        }
    }
    ts
}

/// Solves Λ_{Q,T} target by target. When `probe` columns are given, each
/// target is first attempted over T ∪ probe (a cooperative teacher narrowing
/// the solution set); a solution there restricts to one over T. The plain
/// system over T alone is the fallback, and only its failure makes the target
/// fail.
pub fn solve_lambda(
    o: &MembershipOracle,
    q: &[Word],
    t: &[Word],
    probe: Option<&[Word]>,
) -> Result<LambdaReport> {
    let extended: Option<Vec<Word>> = probe.map(|p| {
        let mut cols = t.to_vec();
        cols.extend(p.iter().cloned());
        crate::words::sort_shortlex(&mut cols);
        cols
    });
    let mut solver_calls = 0;
    let mut solve_target = |target: &LambdaTarget| -> Result<(Status, Option<Vec<Value>>)> {
        if let Some(cols) = &extended {
            solver_calls += 1;
            let out = solve_left(&lambda_system(o, q, cols, target)?);
            if out.status == Status::Solved {
                return Ok((Status::Solved, out.witness));
            }
        }
        solver_calls += 1;
        let out = solve_left(&lambda_system(o, q, t, target)?);
        Ok((out.status, out.witness))
    };
    let mut init = Vec::new();
    let mut trans: BTreeMap<Letter, Vec<Vec<Value>>> = BTreeMap::new();
    for target in lambda_targets(o, q) {
        let (status, witness) = solve_target(&target)?;
        if status != Status::Solved {
            return Ok(LambdaReport {
                outcome: LambdaOutcome::Failed { target, status },
                solver_calls,
            });
        }
        let w = witness.unwrap();
        match target {
            LambdaTarget::EpsRow => init = w,
            LambdaTarget::Shift(_, a) => trans.entry(a).or_default().push(w),
        }
    }
    Ok(LambdaReport {
        outcome: LambdaOutcome::Solved(SolutionLambda {
            q: q.to_vec(),
            t: t.to_vec(),
            init,
            trans,
        }),
        solver_calls,
    })
}

/// Dual of `solve_lambda`: coefficients multiply on the right, probe words
/// extend the row set.
pub fn solve_gamma(
    o: &MembershipOracle,
    q: &[Word],
    t: &[Word],
    probe: Option<&[Word]>,
) -> Result<GammaReport> {
    let extended: Option<Vec<Word>> = probe.map(|p| {
        let mut rows = q.to_vec();
        rows.extend(p.iter().cloned());
        crate::words::sort_shortlex(&mut rows);
        rows
    });
    let mut solver_calls = 0;
    let mut solve_target = |target: &GammaTarget| -> Result<(Status, Option<Vec<Value>>)> {
        if let Some(rows) = &extended {
            solver_calls += 1;
            let out = solve_right(&gamma_system(o, rows, t, target)?);
            if out.status == Status::Solved {
                return Ok((Status::Solved, out.witness));
            }
        }
        solver_calls += 1;
        let out = solve_right(&gamma_system(o, q, t, target)?);
        Ok((out.status, out.witness))
    };
    let mut fin = Vec::new();
    // Collected per target (a, t): the coefficient vector over s becomes
    // column t of trans[a].
    let mut cols: BTreeMap<Letter, Vec<Vec<Value>>> = BTreeMap::new();
    for target in gamma_targets(o, t) {
        let (status, witness) = solve_target(&target)?;
        if status != Status::Solved {
            return Ok(GammaReport {
                outcome: GammaOutcome::Failed { target, status },
                solver_calls,
            });
        }
        let w = witness.unwrap();
        match target {
            GammaTarget::EpsCol => fin = w,
            GammaTarget::Shift(a, _) => cols.entry(a).or_default().push(w),
        }
    }
    let n = t.len();
    let mut trans = BTreeMap::new();
    for (a, by_col) in cols {
        let mut m = vec![vec![o.semiring.zero(); n]; n];
        for (j, col) in by_col.into_iter().enumerate() {
            for (s, v) in col.into_iter().enumerate() {
                m[s][j] = v;
            }
        }
        trans.insert(a, m);
    }
    Ok(GammaReport {
        outcome: GammaOutcome::Solved(SolutionGamma {
            q: q.to_vec(),
            t: t.to_vec(),
            fin,
            trans,
        }),
        solver_calls,
    })
}

fn state_names(words: &[Word]) -> Vec<String> {
    words.iter().map(|w| display(w).to_string()).collect()
}

/// Hypothesis automaton: states Q, initial λ, finals f(q), transition weight
/// λ_{q,a,p} from q to p.
pub fn build_hypothesis(o: &MembershipOracle, lam: &SolutionLambda) -> Result<Wfa> {
    let finals = lam
        .q
        .iter()
        .map(|w| o.value(w))
        .collect::<Result<Vec<_>>>()?;
    Wfa::new(
        o.semiring.clone(),
        o.alphabet.clone(),
        state_names(&lam.q),
        lam.init.clone(),
        lam.trans.clone(),
        finals,
    )
}

/// Co-hypothesis automaton: states T, initials f(t), finals γ, transition
/// weight γ_{s,a,t} from s to t.
pub fn build_cohypothesis(o: &MembershipOracle, gam: &SolutionGamma) -> Result<Wfa> {
    let initials = gam
        .t
        .iter()
        .map(|w| o.value(w))
        .collect::<Result<Vec<_>>>()?;
    Wfa::new(
        o.semiring.clone(),
        o.alphabet.clone(),
        state_names(&gam.t),
        initials,
        gam.trans.clone(),
        gam.fin.clone(),
    )
}

/// Rewrites a solved Λ as a literal automaton over the prefix closure of Q:
/// the closure words form a weight-1 spine from ε, every other transition
/// lands in Q with the weight the Λ coefficients induce, and the result is
/// validated against the oracle on all words up to `depth`.
pub fn literalize(o: &MembershipOracle, lam: &SolutionLambda, depth: usize) -> Result<Wfa> {
    let s = &o.semiring;
    let w_set = &lam.q;
    let closure = prefix_closure(w_set);
    let idx_w = |u: &Word| w_set.iter().position(|x| x == u);
    let idx_c = |u: &str| closure.iter().position(|x| x == u).unwrap();
    // c[q'] expresses state q' of the closure over W in the Λ row space.
    let mut c: Vec<Vec<Value>> = vec![Vec::new(); closure.len()];
    for (i, q) in closure.iter().enumerate() {
        if let Some(j) = idx_w(q) {
            let mut unit = vec![s.zero(); w_set.len()];
            unit[j] = s.one();
            c[i] = unit;
        } else if q.is_empty() {
            c[i] = lam.init.clone();
        } else {
            // Closure is processed in shortlex order, so the proper prefix r
            // of q = ra is already expressed.
            let mut chars: Vec<char> = q.chars().collect();
            let a = chars.pop().unwrap();
            let r: Word = chars.into_iter().collect();
            let cr = &c[idx_c(&r)];
            let m = &lam.trans[&a];
            let mut out = vec![s.zero(); w_set.len()];
            for (p, coeff) in cr.iter().enumerate() {
                for (j, o_j) in out.iter_mut().enumerate() {
                    let prod = s.mul(coeff, &m[p][j])?;
                    *o_j = s.add(o_j, &prod)?;
                }
            }
            c[i] = out;
        }
    }
    let n = closure.len();
    let mut initial = vec![s.zero(); n];
    initial[idx_c("")] = s.one();
    let mut transitions: BTreeMap<Letter, Vec<Vec<Value>>> = BTreeMap::new();
    for &a in &o.alphabet {
        let mut m = vec![vec![s.zero(); n]; n];
        for (i, q) in closure.iter().enumerate() {
            let qa = format!("{q}{a}");
            if let Some(j) = closure.iter().position(|x| *x == qa) {
                m[i][j] = s.one();
            } else {
                let lam_a = &lam.trans[&a];
                for (j, target) in w_set.iter().enumerate() {
                    let mut acc = s.zero();
                    for (p, coeff) in c[i].iter().enumerate() {
                        let prod = s.mul(coeff, &lam_a[p][j])?;
                        acc = s.add(&acc, &prod)?;
                    }
                    m[i][idx_c(target)] = acc;
                }
            }
        }
        transitions.insert(a, m);
    }
    let finals = closure
        .iter()
        .map(|q| o.value(q))
        .collect::<Result<Vec<_>>>()?;
    let result = Wfa::new(
        s.clone(),
        o.alphabet.clone(),
        state_names(&closure),
        initial,
        transitions,
        finals,
    )?;
    for w in words_up_to(&o.alphabet, depth) {
        let expected = o.value(&w)?;
        let got = result.evaluate(&w)?;
        if got != expected {
            return Err(Error::LiteralizeValidation {
                word: display(&w).to_string(),
                expected: s.render(&expected),
                got: s.render(&got),
            });
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Semiring, Tag};
    use std::rc::Rc;

    fn f3_oracle() -> MembershipOracle {
        MembershipOracle::from_closed_form(
            "f3",
            Semiring::new(Tag::NatMax),
            vec!['a', 'b'],
            Rc::new(|w: &str| match w.chars().next() {
                None => Value::neg_inf(),
                Some(x) => Value::mp(w.chars().filter(|&c| c == x).count() as i64),
            }),
        )
    }

    fn mirror_f3_oracle() -> MembershipOracle {
        // f3 of the reversed word: |w|_x for the final letter x.
        MembershipOracle::from_closed_form(
            "f3-mirror",
            Semiring::new(Tag::NatMax),
            vec!['a', 'b'],
            Rc::new(|w: &str| match w.chars().last() {
                None => Value::neg_inf(),
                Some(x) => Value::mp(w.chars().filter(|&c| c == x).count() as i64),
            }),
        )
    }

    #[test]
    fn two_state_hypothesis_with_probe() {
        let o = f3_oracle();
        let q: Vec<Word> = vec!["".into(), "a".into()];
        let t: Vec<Word> = vec!["".into()];
        let probe = words_up_to(&['a', 'b'], 2);
        let rep = solve_lambda(&o, &q, &t, Some(&probe)).unwrap();
        let LambdaOutcome::Solved(lam) = rep.outcome else {
            panic!("expected a solved Λ");
        };
        assert_eq!(lam.init, vec![Value::mp(0), Value::neg_inf()]);
        let h = build_hypothesis(&o, &lam).unwrap();
        // Computes |w|_a on words starting with a and |w|_a + 1 on words
        // starting with b: correct on ε, a, b, aa, ab; first wrong at ba.
        for w in ["", "a", "b", "aa", "ab"] {
            assert_eq!(h.evaluate(w).unwrap(), o.value(w).unwrap(), "at {w:?}");
        }
        assert_eq!(h.evaluate("ba").unwrap(), Value::mp(2));
        assert_eq!(o.value("ba").unwrap(), Value::mp(1));
    }

    #[test]
    fn plain_lambda_without_probe_is_degenerate() {
        // Over T = {ε} alone the principal solution has an all-(−∞) initial
        // vector: the hypothesis agrees with f3 on T but nowhere else.
        let o = f3_oracle();
        let q: Vec<Word> = vec!["".into(), "a".into()];
        let t: Vec<Word> = vec!["".into()];
        let rep = solve_lambda(&o, &q, &t, None).unwrap();
        let LambdaOutcome::Solved(lam) = rep.outcome else {
            panic!("expected a solved Λ");
        };
        let h = build_hypothesis(&o, &lam).unwrap();
        assert_eq!(h.evaluate("").unwrap(), Value::neg_inf());
        assert_eq!(h.evaluate("a").unwrap(), Value::neg_inf());
    }

    #[test]
    fn cohypothesis_mirrors_hypothesis() {
        let o = mirror_f3_oracle();
        let q: Vec<Word> = vec!["".into()];
        let t: Vec<Word> = vec!["".into(), "a".into()];
        let probe = words_up_to(&['a', 'b'], 2);
        let rep = solve_gamma(&o, &q, &t, Some(&probe)).unwrap();
        let GammaOutcome::Solved(gam) = rep.outcome else {
            panic!("expected a solved Γ");
        };
        let b = build_cohypothesis(&o, &gam).unwrap();
        for w in ["", "a", "b", "aa", "ba"] {
            assert_eq!(b.evaluate(w).unwrap(), o.value(w).unwrap(), "at {w:?}");
        }
        // Mirror image of the hypothesis' first error at ba.
        assert_eq!(b.evaluate("ab").unwrap(), Value::mp(2));
        assert_eq!(o.value("ab").unwrap(), Value::mp(1));
    }

    #[test]
    fn literalize_three_state_lambda() {
        // The Λ whose rows are ⟨ε⟩, ⟨a⟩, ⟨b⟩: principal over T = words ≤ 3.
        // (Columns up to length 2 leave a spurious weight-0 edge a → ε whose
        // hypothesis is first wrong on aabbb.)
        let o = f3_oracle();
        let q: Vec<Word> = vec!["".into(), "a".into(), "b".into()];
        let t = words_up_to(&['a', 'b'], 3);
        let rep = solve_lambda(&o, &q, &t, None).unwrap();
        let LambdaOutcome::Solved(lam) = rep.outcome else {
            panic!("expected a solved Λ");
        };
        let lit = literalize(&o, &lam, 5).unwrap();
        let cert = lit.is_literal().expect("result must be literal");
        assert_eq!(cert.sigma, vec!["", "a", "b"]);
        for w in words_up_to(&['a', 'b'], 5) {
            assert_eq!(lit.evaluate(&w).unwrap(), o.value(&w).unwrap());
        }
    }
}
