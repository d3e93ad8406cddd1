//! Weighted finite automata: representation, evaluation, mirror, literality.

use std::collections::BTreeMap;

use serde_json::{json, Map as JsonMap, Value as Json};

use crate::error::{Error, Result};
use crate::semiring::{Semiring, Tag, Value};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Wfa {
    pub semiring: Semiring,
    pub alphabet: Vec<Letter>,
    pub states: Vec<String>,
    /// Initial row vector α, indexed like `states`.
    pub initial: Vec<Value>,
    /// One matrix per letter, `transitions[a][from][to]`.
    pub transitions: BTreeMap<Letter, Vec<Vec<Value>>>,
    /// Final column vector η.
    pub final_: Vec<Value>,
}

/// Witness that an automaton is literal: the prefix-closed labeling σ and, for
/// each state, the unique weight-1 run (as a state-index path from the initial
/// state).
#[derive(Clone, Debug, PartialEq)]
pub struct LiteralCertificate {
    /// state index → word σ(q), in state order.
    pub sigma: Vec<Word>,
    /// state index → run γ_q (state indices from the initial state, inclusive).
    pub runs: Vec<Vec<usize>>,
}

impl Wfa {
    pub fn new(
        semiring: Semiring,
        alphabet: Vec<Letter>,
        states: Vec<String>,
        initial: Vec<Value>,
        transitions: BTreeMap<Letter, Vec<Vec<Value>>>,
        final_: Vec<Value>,
    ) -> Result<Wfa> {
        let n = states.len();
        if initial.len() != n || final_.len() != n {
            return Err(Error::BadInput("vector length != state count".into()));
        }
        for v in initial.iter().chain(final_.iter()) {
            semiring.check(v)?;
        }
        for (a, m) in &transitions {
            if !alphabet.contains(a) {
                return Err(Error::UnknownLetter(*a));
            }
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::BadInput("transition matrix shape mismatch".into()));
            }
            for row in m {
                for v in row {
                    semiring.check(v)?;
                }
            }
        }
        let mut a = Wfa {
            semiring,
            alphabet,
            states,
            initial,
            transitions,
            final_,
        };
        // Letters without transitions behave as the zero matrix.
        for &l in a.alphabet.clone().iter() {
            a.transitions
                .entry(l)
                .or_insert_with(|| vec![vec![a.semiring.zero(); n]; n]);
        }
        Ok(a)
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    fn matrix(&self, a: Letter) -> Result<&Vec<Vec<Value>>> {
        self.transitions.get(&a).ok_or(Error::UnknownLetter(a))
    }

    fn propagate(&self, v: &[Value], w: &str) -> Result<Vec<Value>> {
        let mut cur = v.to_vec();
        for a in w.chars() {
            let m = self.matrix(a)?;
            cur = row_times_matrix(&self.semiring, &cur, m)?;
        }
        Ok(cur)
    }

    /// f(w) = α M(w₁)···M(w_k) η.
    pub fn evaluate(&self, w: &str) -> Result<Value> {
        let v = self.propagate(&self.initial, w)?;
        dot(&self.semiring, &v, &self.final_)
    }

    /// Transpose every transition matrix and swap initial/final vectors.
    pub fn mirror(&self) -> Wfa {
        let n = self.n_states();
        let mut transitions = BTreeMap::new();
        for (&a, m) in &self.transitions {
            let mut t = vec![vec![self.semiring.zero(); n]; n];
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    t[j][i] = v.clone();
                }
            }
            transitions.insert(a, t);
        }
        Wfa {
            semiring: self.semiring.clone(),
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.final_.clone(),
            transitions,
            final_: self.initial.clone(),
        }
    }

    /// Value computed by _qA: q made the unique initial state with weight 1_S.
    pub fn state_row_function(&self, q: &str, w: &str) -> Result<Value> {
        let qi = self.state_index(q)?;
        let mut e = vec![self.semiring.zero(); self.n_states()];
        e[qi] = self.semiring.one();
        let v = self.propagate(&e, w)?;
        dot(&self.semiring, &v, &self.final_)
    }

    /// Value computed by A_q: q made the unique final state with weight 1_S.
    pub fn state_column_function(&self, q: &str, w: &str) -> Result<Value> {
        let qi = self.state_index(q)?;
        let mut e = vec![self.semiring.zero(); self.n_states()];
        e[qi] = self.semiring.one();
        let v = self.propagate(&self.initial, w)?;
        dot(&self.semiring, &v, &e)
    }

    /// Searches for a literal labeling: unique weight-1 initial state, then a
    /// greedy shortlex BFS that labels p with wa whenever the labeled state w
    /// has exactly one nonzero a-successor, of weight 1_S. Each state's
    /// candidate labels are disjoint from every other state's (a word's unique
    /// run ends in one state), so the greedy choice is the shortlex-least
    /// valid labeling when one exists.
    pub fn is_literal(&self) -> Option<LiteralCertificate> {
        let one = self.semiring.one();
        let zero = self.semiring.zero();
        let mut root = None;
        for (i, v) in self.initial.iter().enumerate() {
            if *v == zero {
                continue;
            }
            if *v != one || root.is_some() {
                return None;
            }
            root = Some(i);
        }
        let root = root?;
        let n = self.n_states();
        let mut sigma: Vec<Option<Word>> = vec![None; n];
        let mut runs: Vec<Vec<usize>> = vec![Vec::new(); n];
        sigma[root] = Some(String::new());
        runs[root] = vec![root];
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(q) = queue.pop_front() {
            let w = sigma[q].clone().unwrap();
            for &a in &self.alphabet {
                let m = &self.transitions[&a];
                let succs: Vec<usize> = (0..n).filter(|&p| m[q][p] != zero).collect();
                // Uniqueness of the run labeled wa requires exactly one
                // nonzero a-transition out of q; literality requires weight 1.
                if succs.len() != 1 || m[q][succs[0]] != one {
                    continue;
                }
                let p = succs[0];
                if sigma[p].is_none() {
                    sigma[p] = Some(format!("{w}{a}"));
                    runs[p] = runs[q].iter().copied().chain([p]).collect();
                    queue.push_back(p);
                }
            }
        }
        if sigma.iter().any(|s| s.is_none()) {
            return None;
        }
        Some(LiteralCertificate {
            sigma: sigma.into_iter().map(|s| s.unwrap()).collect(),
            runs,
        })
    }

    pub fn to_json(&self) -> Json {
        let zero = self.semiring.zero();
        let mut initial = JsonMap::new();
        let mut final_ = JsonMap::new();
        for (i, name) in self.states.iter().enumerate() {
            if self.initial[i] != zero {
                initial.insert(name.clone(), json!(self.semiring.render(&self.initial[i])));
            }
            if self.final_[i] != zero {
                final_.insert(name.clone(), json!(self.semiring.render(&self.final_[i])));
            }
        }
        let mut transitions = Vec::new();
        for (a, m) in &self.transitions {
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if *v != zero {
                        transitions.push(json!({
                            "from": self.states[i],
                            "letter": a.to_string(),
                            "to": self.states[j],
                            "weight": self.semiring.render(v),
                        }));
                    }
                }
            }
        }
        json!({
            "semiring": self.semiring.tag().name(),
            "alphabet": self.alphabet.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "states": self.states,
            "initial": initial,
            "final": final_,
            "transitions": transitions,
        })
    }

    pub fn from_json(j: &Json) -> Result<Wfa> {
        let bad = |msg: &str| Error::BadInput(format!("automaton file: {msg}"));
        let obj = j.as_object().ok_or_else(|| bad("expected an object"))?;
        let tag_name = obj
            .get("semiring")
            .and_then(|v| v.as_str())
            .ok_or_else(|| bad("missing 'semiring'"))?;
        let tag = Tag::from_name(tag_name)?;
        let alphabet: Vec<Letter> = obj
            .get("alphabet")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing 'alphabet'"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .and_then(|s| {
                        let mut it = s.chars();
                        match (it.next(), it.next()) {
                            (Some(c), None) => Some(c),
                            _ => None,
                        }
                    })
                    .ok_or_else(|| bad("letters must be single characters"))
            })
            .collect::<Result<_>>()?;
        let semiring = if tag == Tag::FinLang {
            Semiring::finlang(&alphabet)
        } else {
            Semiring::new(tag)
        };
        let states: Vec<String> = obj
            .get("states")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing 'states'"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(|s| s.to_string())
                    .ok_or_else(|| bad("state names must be strings"))
            })
            .collect::<Result<_>>()?;
        let n = states.len();
        let index = |name: &str| -> Result<usize> {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        let read_vec = |key: &str| -> Result<Vec<Value>> {
            let mut out = vec![semiring.zero(); n];
            if let Some(map) = obj.get(key) {
                let map = map.as_object().ok_or_else(|| bad("expected an object"))?;
                for (name, val) in map {
                    let s = val.as_str().ok_or_else(|| bad("weights must be strings"))?;
                    out[index(name)?] = semiring.parse(s)?;
                }
            }
            Ok(out)
        };
        let initial = read_vec("initial")?;
        let final_ = read_vec("final")?;
        let mut transitions: BTreeMap<Letter, Vec<Vec<Value>>> = BTreeMap::new();
        for &a in &alphabet {
            transitions.insert(a, vec![vec![semiring.zero(); n]; n]);
        }
        if let Some(list) = obj.get("transitions") {
            for entry in list.as_array().ok_or_else(|| bad("'transitions' must be an array"))? {
                let e = entry.as_object().ok_or_else(|| bad("transition entries must be objects"))?;
                let get = |k: &str| -> Result<&str> {
                    e.get(k)
                        .and_then(|v| v.as_str())
                        .ok_or_else(|| bad(&format!("transition missing '{k}'")))
                };
                let from = index(get("from")?)?;
                let to = index(get("to")?)?;
                let letter_s = get("letter")?;
                let mut it = letter_s.chars();
                let letter = match (it.next(), it.next()) {
                    (Some(c), None) => c,
                    _ => return Err(bad("letters must be single characters")),
                };
                if !alphabet.contains(&letter) {
                    return Err(Error::UnknownLetter(letter));
                }
                let weight = semiring.parse(get("weight")?)?;
                transitions.get_mut(&letter).unwrap()[from][to] = weight;
            }
        }
        Wfa::new(semiring, alphabet, states, initial, transitions, final_)
    }
}

pub fn row_times_matrix(s: &Semiring, v: &[Value], m: &[Vec<Value>]) -> Result<Vec<Value>> {
    let n = m.len();
    let mut out = vec![s.zero(); if n == 0 { 0 } else { m[0].len() }];
    for (i, vi) in v.iter().enumerate() {
        if s.is_zero(vi) {
            continue;
        }
        for (j, out_j) in out.iter_mut().enumerate() {
            let prod = s.mul(vi, &m[i][j])?;
            *out_j = s.add(out_j, &prod)?;
        }
    }
    Ok(out)
}

pub fn dot(s: &Semiring, u: &[Value], v: &[Value]) -> Result<Value> {
    let mut acc = s.zero();
    for (a, b) in u.iter().zip(v.iter()) {
        let prod = s.mul(a, b)?;
        acc = s.add(&acc, &prod)?;
    }
    Ok(acc)
}

/// Test oracle: sum over all runs of the product of weights. Exponential in
/// |w|; used only to cross-check `evaluate`.
pub fn evaluate_by_paths(a: &Wfa, w: &str) -> Result<Value> {
    let s = &a.semiring;
    let letters: Vec<Letter> = w.chars().collect();
    let n = a.n_states();
    let mut acc = s.zero();
    // Depth-first over state sequences q_0 ... q_k.
    fn go(
        a: &Wfa,
        letters: &[Letter],
        pos: usize,
        q: usize,
        weight: &Value,
        acc: &mut Value,
    ) -> Result<()> {
        let s = &a.semiring;
        if pos == letters.len() {
            let w = s.mul(weight, &a.final_[q])?;
            *acc = s.add(acc, &w)?;
            return Ok(());
        }
        let m = &a.transitions[&letters[pos]];
        for p in 0..a.n_states() {
            let w = s.mul(weight, &m[q][p])?;
            go(a, letters, pos + 1, p, &w, acc)?;
        }
        Ok(())
    }
    for q in 0..n {
        go(a, &letters, 0, q, &a.initial[q], &mut acc)?;
    }
    Ok(acc)
}
