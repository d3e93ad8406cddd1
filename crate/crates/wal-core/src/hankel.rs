//! Membership-query access to the Hankel matrix F of a target function, and
//! assembly of the finite blocks the Λ/Γ systems need.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::error::Result;
use crate::semiring::{Semiring, Value};
use crate::wfa::Wfa;
use crate::words::{Letter, Word};

pub type ClosedForm = Rc<dyn Fn(&str) -> Value>;

pub enum OracleSource {
    Wfa(Wfa),
    ClosedForm { name: String, f: ClosedForm },
}

/// Cached membership oracle. Caching is by the full concatenated word, so
/// `query_count` measures distinct membership queries.
pub struct MembershipOracle {
    pub semiring: Semiring,
    pub alphabet: Vec<Letter>,
    pub source: OracleSource,
    cache: RefCell<HashMap<Word, Value>>,
    query_count: Cell<u64>,
}

/// The (Q ∪ QΣ) × T block of F, plus the ε-row and the finals column.
#[derive(Clone, Debug)]
pub struct SubHankel {
    pub q: Vec<Word>,
    pub t: Vec<Word>,
    /// base[i][j] = f(q_i t_j)
    pub base: Vec<Vec<Value>>,
    /// extensions[a][i][j] = f(q_i a t_j)
    pub extensions: BTreeMap<Letter, Vec<Vec<Value>>>,
    /// eps_row[j] = f(t_j)
    pub eps_row: Vec<Value>,
    /// finals[i] = f(q_i)
    pub finals: Vec<Value>,
}

impl MembershipOracle {
    pub fn from_wfa(a: Wfa) -> MembershipOracle {
        MembershipOracle {
            semiring: a.semiring.clone(),
            alphabet: a.alphabet.clone(),
            source: OracleSource::Wfa(a),
            cache: RefCell::new(HashMap::new()),
            query_count: Cell::new(0),
        }
    }

    pub fn from_closed_form(
        name: &str,
        semiring: Semiring,
        alphabet: Vec<Letter>,
        f: ClosedForm,
    ) -> MembershipOracle {
        MembershipOracle {
            semiring,
            alphabet,
            source: OracleSource::ClosedForm {
                name: name.to_string(),
                f,
            },
            cache: RefCell::new(HashMap::new()),
            query_count: Cell::new(0),
        }
    }

    pub fn query_count(&self) -> u64 {
        self.query_count.get()
    }

    /// f(w), cached.
    pub fn value(&self, w: &str) -> Result<Value> {
        if let Some(v) = self.cache.borrow().get(w) {
            return Ok(v.clone());
        }
        let v = match &self.source {
            OracleSource::Wfa(a) => a.evaluate(w)?,
            OracleSource::ClosedForm { f, .. } => f(w),
        };
        self.cache.borrow_mut().insert(w.to_string(), v.clone());
        self.query_count.set(self.query_count.get() + 1);
        Ok(v)
    }

    /// F_{u,v} = f(uv).
    pub fn entry(&self, u: &str, v: &str) -> Result<Value> {
        self.value(&format!("{u}{v}"))
    }

    /// ⟨u⟩_T as a finite vector in column order.
    pub fn row(&self, u: &str, t: &[Word]) -> Result<Vec<Value>> {
        t.iter().map(|c| self.entry(u, c)).collect()
    }

    /// [v]_Q as a finite vector in row order.
    pub fn column(&self, v: &str, q: &[Word]) -> Result<Vec<Value>> {
        q.iter().map(|r| self.entry(r, v)).collect()
    }

    /// (⟨v⟩·u)_T = ⟨vu⟩_T.
    pub fn shift_row(&self, v: &str, u: &str, t: &[Word]) -> Result<Vec<Value>> {
        self.row(&format!("{v}{u}"), t)
    }

    pub fn assemble(&self, q: &[Word], t: &[Word]) -> Result<SubHankel> {
        let base = q
            .iter()
            .map(|r| self.row(r, t))
            .collect::<Result<Vec<_>>>()?;
        let mut extensions = BTreeMap::new();
        for &a in &self.alphabet {
            let m = q
                .iter()
                .map(|r| self.row(&format!("{r}{a}"), t))
                .collect::<Result<Vec<_>>>()?;
            extensions.insert(a, m);
        }
        let eps_row = self.row("", t)?;
        let finals = q
            .iter()
            .map(|r| self.value(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubHankel {
            q: q.to_vec(),
            t: t.to_vec(),
            base,
            extensions,
            eps_row,
            finals,
        })
    }
}
