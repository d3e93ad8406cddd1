//! Per-semiring closedness strategies: decide whether a target vector is a
//! left (or right) linear combination of generator vectors, produce one
//! witness, and enumerate finite solution sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::semiring::{Semiring, Tag, Value};
use crate::words::{shortlex_cmp, Word};

pub const ENUM_CAP: usize = 10_000;
pub const FINLANG_POOL_CAP: usize = 1_000;

#[derive(Clone, Debug)]
pub struct LinSystem {
    pub semiring: Semiring,
    pub generators: Vec<Vec<Value>>,
    pub target: Vec<Value>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Solved,
    NoSolution,
    BoundExceeded,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub status: Status,
    pub witness: Option<Vec<Value>>,
    pub method: &'static str,
    pub bound_note: Option<String>,
}

impl SolveOutcome {
    fn solved(witness: Vec<Value>, method: &'static str) -> SolveOutcome {
        SolveOutcome {
            status: Status::Solved,
            witness: Some(witness),
            method,
            bound_note: None,
        }
    }

    fn none(method: &'static str) -> SolveOutcome {
        SolveOutcome {
            status: Status::NoSolution,
            witness: None,
            method,
            bound_note: None,
        }
    }

    fn bound(method: &'static str, note: String) -> SolveOutcome {
        SolveOutcome {
            status: Status::BoundExceeded,
            witness: None,
            method,
            bound_note: Some(note),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub solutions: Vec<Vec<Value>>,
    pub capped: bool,
}

impl LinSystem {
    pub fn new(semiring: Semiring, generators: Vec<Vec<Value>>, target: Vec<Value>) -> Result<LinSystem> {
        let m = target.len();
        for g in &generators {
            if g.len() != m {
                return Err(Error::BadInput("generator/target length mismatch".into()));
            }
            for v in g {
                semiring.check(v)?;
            }
        }
        for v in &target {
            semiring.check(v)?;
        }
        Ok(LinSystem {
            semiring,
            generators,
            target,
        })
    }
}

/// b = ⊕_p λ_p ⊗ g_p (coefficients on the left).
pub fn combine_left(s: &Semiring, generators: &[Vec<Value>], coeffs: &[Value]) -> Result<Vec<Value>> {
    let m = generators.first().map_or(0, |g| g.len());
    let mut out = vec![s.zero(); m];
    for (lam, g) in coeffs.iter().zip(generators.iter()) {
        for (o, gi) in out.iter_mut().zip(g.iter()) {
            let prod = s.mul(lam, gi)?;
            *o = s.add(o, &prod)?;
        }
    }
    Ok(out)
}

/// b = ⊕_t g_t ⊗ γ_t (coefficients on the right).
pub fn combine_right(s: &Semiring, generators: &[Vec<Value>], coeffs: &[Value]) -> Result<Vec<Value>> {
    let m = generators.first().map_or(0, |g| g.len());
    let mut out = vec![s.zero(); m];
    for (gam, g) in coeffs.iter().zip(generators.iter()) {
        for (o, gi) in out.iter_mut().zip(g.iter()) {
            let prod = s.mul(gi, gam)?;
            *o = s.add(o, &prod)?;
        }
    }
    Ok(out)
}

pub fn verify_left(sys: &LinSystem, coeffs: &[Value]) -> bool {
    matches!(combine_left(&sys.semiring, &sys.generators, coeffs), Ok(v) if v == sys.target)
}

pub fn verify_right(sys: &LinSystem, coeffs: &[Value]) -> bool {
    matches!(combine_right(&sys.semiring, &sys.generators, coeffs), Ok(v) if v == sys.target)
}

pub fn solve_left(sys: &LinSystem) -> SolveOutcome {
    let out = match sys.semiring.tag() {
        Tag::Rat => solve_field(sys),
        Tag::Int => solve_int(sys),
        Tag::Bool => solve_bool(sys),
        Tag::NatMax | Tag::IntMax | Tag::RatMax => solve_max_plus(sys),
        Tag::Nat => solve_nat(sys),
        Tag::NonNegRat => solve_nonneg_rat(sys),
        Tag::FinLang => solve_finlang_left(sys),
    };
    if out.status == Status::Solved {
        debug_assert!(verify_left(sys, out.witness.as_ref().unwrap()));
    }
    out
}

pub fn solve_right(sys: &LinSystem) -> SolveOutcome {
    if sys.semiring.commutative() {
        return solve_left(sys);
    }
    // FINLANG: (w·u) reversed is rev(u)·rev(w), so a right system is a left
    // system over reversed words.
    let rev_sys = LinSystem {
        semiring: sys.semiring.clone(),
        generators: sys.generators.iter().map(|g| g.iter().map(reverse_lang).collect()).collect(),
        target: sys.target.iter().map(reverse_lang).collect(),
    };
    let mut out = solve_finlang_left(&rev_sys);
    if let Some(w) = out.witness.as_mut() {
        for v in w.iter_mut() {
            *v = reverse_lang(v);
        }
    }
    if out.status == Status::Solved {
        debug_assert!(verify_right(sys, out.witness.as_ref().unwrap()));
    }
    out
}

fn reverse_lang(v: &Value) -> Value {
    match v {
        Value::Lang(ws) => {
            let rev: Vec<String> = ws.iter().map(|w| w.chars().rev().collect()).collect();
            Value::lang(&rev)
        }
        _ => unreachable!("reverse_lang on non-language value"),
    }
}

// ---------------------------------------------------------------- RAT (field)

fn as_rat(v: &Value) -> BigRational {
    match v {
        Value::Rat(r) => r.clone(),
        _ => unreachable!(),
    }
}

/// Gaussian elimination over exact rationals; free variables are set to 0.
fn solve_field(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "gaussian-elimination";
    let k = sys.generators.len();
    let m = sys.target.len();
    // a[i][p] = g_p[i], augmented with b.
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> =
                sys.generators.iter().map(|g| as_rat(&g[i])).collect();
            row.push(as_rat(&sys.target[i]));
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone();
        for x in a[row][col..].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    let sub = &f * &a[row][c];
                    a[r][c] = &a[r][c] - sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    for r in row..m {
        if !a[r][k].is_zero() {
            return SolveOutcome::none(METHOD);
        }
    }
    let mut x = vec![BigRational::zero(); k];
    for &(r, c) in &pivots {
        x[c] = a[r][k].clone();
    }
    SolveOutcome::solved(x.into_iter().map(Value::Rat).collect(), METHOD)
}

// ----------------------------------------------------------------------- INT

fn as_int(v: &Value) -> BigInt {
    match v {
        Value::Int(n) => n.clone(),
        _ => unreachable!(),
    }
}

/// Integer feasibility by unimodular column reduction (Hermite-style): column
/// operations triangularize A so each equation either determines one
/// transformed unknown up to a divisibility check or must vanish.
fn solve_int(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "hermite-elimination";
    let k = sys.generators.len();
    let m = sys.target.len();
    let mut c: Vec<Vec<BigInt>> = (0..m)
        .map(|i| sys.generators.iter().map(|g| as_int(&g[i])).collect())
        .collect();
    let b: Vec<BigInt> = sys.target.iter().map(as_int).collect();
    // u tracks the column operations: x = u · y.
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|r| (0..k).map(|cc| if r == cc { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut frozen = 0usize; // columns < frozen are pivot columns
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        loop {
            let active: Vec<usize> = (frozen..k).filter(|&j| !c[i][j].is_zero()).collect();
            if active.len() <= 1 {
                if let Some(&j) = active.first() {
                    for row in c.iter_mut() {
                        row.swap(frozen, j);
                    }
                    for row in u.iter_mut() {
                        row.swap(frozen, j);
                    }
                    pivot_of_row[i] = Some(frozen);
                    frozen += 1;
                }
                break;
            }
            let j1 = active[active.len() - 2];
            let j2 = active[active.len() - 1];
            let (c1, c2) = (c[i][j1].clone(), c[i][j2].clone());
            let ext = c1.extended_gcd(&c2);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let (q1, q2) = (&c1 / &g, &c2 / &g);
            for row in c.iter_mut() {
                let (v1, v2) = (row[j1].clone(), row[j2].clone());
                row[j1] = &x * &v1 + &y * &v2;
                row[j2] = &q2 * &v1 - &q1 * &v2;
            }
            for row in u.iter_mut() {
                let (v1, v2) = (row[j1].clone(), row[j2].clone());
                row[j1] = &x * &v1 + &y * &v2;
                row[j2] = &q2 * &v1 - &q1 * &v2;
            }
        }
    }
    let mut y = vec![BigInt::zero(); k];
    for i in 0..m {
        let mut residual = b[i].clone();
        for j in 0..frozen {
            residual -= &c[i][j] * &y[j];
        }
        match pivot_of_row[i] {
            Some(j) => {
                let (q, r) = residual.div_rem(&c[i][j]);
                if !r.is_zero() {
                    return SolveOutcome::none(METHOD);
                }
                y[j] = q;
            }
            None => {
                if !residual.is_zero() {
                    return SolveOutcome::none(METHOD);
                }
            }
        }
    }
    let x: Vec<BigInt> = (0..k)
        .map(|r| (0..k).map(|j| &u[r][j] * &y[j]).sum())
        .collect();
    SolveOutcome::solved(x.into_iter().map(Value::Int).collect(), METHOD)
}

// ---------------------------------------------------------------------- BOOL

fn as_bool(v: &Value) -> bool {
    match v {
        Value::Bool(b) => *b,
        _ => unreachable!(),
    }
}

fn solve_bool(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "residuation";
    let witness: Vec<Value> = sys
        .generators
        .iter()
        .map(|g| {
            let fits = g
                .iter()
                .zip(sys.target.iter())
                .all(|(gi, bi)| !as_bool(gi) || as_bool(bi));
            Value::Bool(fits)
        })
        .collect();
    if verify_left(sys, &witness) {
        SolveOutcome::solved(witness, METHOD)
    } else {
        SolveOutcome::none(METHOD)
    }
}

// ------------------------------------------------------------------ max-plus

fn as_mp(v: &Value) -> Option<BigRational> {
    match v {
        Value::MaxPlus(m) => m.clone(),
        _ => unreachable!(),
    }
}

/// Residuation: the principal (componentwise-greatest) candidate, verified.
fn solve_max_plus(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "residuation";
    let nat = sys.semiring.tag() == Tag::NatMax;
    let witness: Vec<Value> = sys
        .generators
        .iter()
        .map(|g| {
            // All-(−∞) generators admit any coefficient; canonical 0_S.
            let mut best: Option<Option<BigRational>> = None; // None = unconstrained
            for (gi, bi) in g.iter().zip(sys.target.iter()) {
                let Some(gv) = as_mp(gi) else { continue };
                let cand = as_mp(bi).map(|bv| bv - gv); // None = −∞ forced
                best = Some(match (best, cand) {
                    (None, c) => c,
                    (Some(None), _) | (_, None) => None,
                    (Some(Some(cur)), Some(c)) => Some(cur.min(c)),
                });
            }
            let lam = match best {
                None => None, // all-(−∞) generator
                Some(None) => None,
                Some(Some(r)) => {
                    if nat && r.is_negative() {
                        None
                    } else {
                        Some(r)
                    }
                }
            };
            Value::MaxPlus(lam)
        })
        .collect();
    if verify_left(sys, &witness) {
        SolveOutcome::solved(witness, METHOD)
    } else {
        SolveOutcome::none(METHOD)
    }
}

// ----------------------------------------------------------------------- NAT

pub const NAT_NODE_CAP: usize = 200_000;

/// Branch-and-bound over ℕ: each coefficient with a positive generator entry
/// at index i is bounded by ⌊b_i/(g_p)_i⌋; all-zero generators get the
/// canonical coefficient 0. Exhaustive within bounds, so NO_SOLUTION is
/// trustworthy; searches past the node cap give up with BOUND_EXCEEDED.
fn solve_nat(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "branch-and-bound";
    let k = sys.generators.len();
    let gens: Vec<Vec<BigInt>> = sys
        .generators
        .iter()
        .map(|g| g.iter().map(as_int).collect())
        .collect();
    let target: Vec<BigInt> = sys.target.iter().map(as_int).collect();
    let mut witness = vec![BigInt::zero(); k];
    let mut residual = target;
    fn bound(g: &[BigInt], residual: &[BigInt]) -> Option<BigInt> {
        let mut best: Option<BigInt> = None;
        for (gi, ri) in g.iter().zip(residual.iter()) {
            if gi.is_positive() {
                let q = ri / gi;
                best = Some(match best {
                    None => q,
                    Some(b) => b.min(q),
                });
            }
        }
        best
    }
    enum Search {
        Found,
        NotFound,
        Capped,
    }
    fn go(
        gens: &[Vec<BigInt>],
        p: usize,
        residual: &mut Vec<BigInt>,
        witness: &mut Vec<BigInt>,
        nodes: &mut usize,
    ) -> Search {
        *nodes += 1;
        if *nodes > NAT_NODE_CAP {
            return Search::Capped;
        }
        if p == gens.len() {
            return if residual.iter().all(|r| r.is_zero()) {
                Search::Found
            } else {
                Search::NotFound
            };
        }
        let g = &gens[p];
        let Some(hi) = bound(g, residual) else {
            // All-zero generator: canonical coefficient 0.
            witness[p] = BigInt::zero();
            return go(gens, p + 1, residual, witness, nodes);
        };
        let mut lam = BigInt::zero();
        while lam <= hi {
            // Monotone in λ: once some component overshoots, larger λ do too.
            let ok = residual
                .iter()
                .zip(g.iter())
                .all(|(r, gi)| r >= &(gi * &lam));
            if !ok {
                break;
            }
            for (r, gi) in residual.iter_mut().zip(g.iter()) {
                *r -= gi * &lam;
            }
            witness[p] = lam.clone();
            match go(gens, p + 1, residual, witness, nodes) {
                Search::Found => return Search::Found,
                Search::Capped => return Search::Capped,
                Search::NotFound => {}
            }
            for (r, gi) in residual.iter_mut().zip(g.iter()) {
                *r += gi * &lam;
            }
            lam += 1;
        }
        Search::NotFound
    }
    let mut nodes = 0;
    match go(&gens, 0, &mut residual, &mut witness, &mut nodes) {
        Search::Found => SolveOutcome::solved(witness.into_iter().map(Value::Int).collect(), METHOD),
        Search::NotFound => SolveOutcome::none(METHOD),
        Search::Capped => SolveOutcome::bound(
            METHOD,
            format!("search exceeded {NAT_NODE_CAP} nodes"),
        ),
    }
}

// ---------------------------------------------------------------- NONNEG_RAT

/// Gaussian elimination parameterizes the equality system's affine solution
/// set; Fourier–Motzkin then decides nonnegativity over the free parameters
/// and back-substitutes a witness.
fn solve_nonneg_rat(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "fourier-motzkin";
    let k = sys.generators.len();
    let m = sys.target.len();
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> =
                sys.generators.iter().map(|g| as_rat(&g[i])).collect();
            row.push(as_rat(&sys.target[i]));
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone();
        for x in a[row][col..].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    let sub = &f * &a[row][c];
                    a[r][c] = &a[r][c] - sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    for r in row..m {
        if !a[r][k].is_zero() {
            return SolveOutcome::none(METHOD);
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    let d = free_cols.len();
    // x_j = x0_j + Σ_l n[j][l] t_l over free parameters t.
    let mut x0 = vec![BigRational::zero(); k];
    let mut n = vec![vec![BigRational::zero(); d]; k];
    for (l, &c) in free_cols.iter().enumerate() {
        n[c][l] = BigRational::one();
    }
    for &(r, c) in &pivots {
        x0[c] = a[r][k].clone();
        for (l, &fc) in free_cols.iter().enumerate() {
            n[c][l] = -a[r][fc].clone();
        }
    }
    // Constraints x_j(t) ≥ 0 as (coeffs over t, constant).
    let mut systems: Vec<Vec<(Vec<BigRational>, BigRational)>> = Vec::with_capacity(d + 1);
    systems.push(
        (0..k)
            .map(|j| (n[j].clone(), x0[j].clone()))
            .collect(),
    );
    for level in 0..d {
        let cur = &systems[level];
        let mut lowers: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut uppers: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        let mut rest: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for (coeffs, cst) in cur {
            let a0 = coeffs[0].clone();
            let tail: Vec<BigRational> = coeffs[1..].to_vec();
            if a0.is_zero() {
                rest.push((tail, cst.clone()));
            } else {
                // a0·t + tail·t' + cst ≥ 0
                let scaled: Vec<BigRational> = tail.iter().map(|c| c / &a0).collect();
                let scst = cst / &a0;
                if a0.is_positive() {
                    // t ≥ −(scaled·t' + scst)
                    lowers.push((scaled.iter().map(|c| -c).collect(), -scst));
                } else {
                    // t ≤ −(scaled·t' + scst)
                    uppers.push((scaled.iter().map(|c| -c).collect(), -scst));
                }
            }
        }
        for (lc, lk) in &lowers {
            for (uc, uk) in &uppers {
                let coeffs: Vec<BigRational> =
                    uc.iter().zip(lc.iter()).map(|(u, l)| u - l).collect();
                rest.push((coeffs, uk - lk));
            }
        }
        systems.push(rest);
    }
    for (_, cst) in &systems[d] {
        if cst.is_negative() {
            return SolveOutcome::none(METHOD);
        }
    }
    // Back-substitute free parameters in reverse elimination order.
    let mut t = vec![BigRational::zero(); d];
    for level in (0..d).rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for (coeffs, cst) in &systems[level] {
            let a0 = coeffs[0].clone();
            if a0.is_zero() {
                continue;
            }
            let mut val = cst.clone();
            for (c, tv) in coeffs[1..].iter().zip(t[level + 1..].iter()) {
                val += c * tv;
            }
            let bnd = -(val / &a0);
            if a0.is_positive() {
                lo = Some(match lo {
                    None => bnd,
                    Some(b) => b.max(bnd),
                });
            } else {
                hi = Some(match hi {
                    None => bnd,
                    Some(b) => b.min(bnd),
                });
            }
        }
        t[level] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }
    let x: Vec<BigRational> = (0..k)
        .map(|j| {
            let mut v = x0[j].clone();
            for (c, tv) in n[j].iter().zip(t.iter()) {
                v += c * tv;
            }
            v
        })
        .collect();
    SolveOutcome::solved(x.into_iter().map(Value::Rat).collect(), METHOD)
}

// ------------------------------------------------------------------- FINLANG

fn as_lang(v: &Value) -> &Vec<Word> {
    match v {
        Value::Lang(ws) => ws,
        _ => unreachable!(),
    }
}

/// Admissible-word pool for one generator: every u with u·w ∈ b_i for all
/// words w of each nonempty g_i. The union of all admissible words is the
/// greatest admissible coefficient, and union is monotone, so the system is
/// solvable iff these maximal coefficients verify.
fn finlang_pool(g: &[Value], b: &[Value]) -> Option<Vec<Word>> {
    let (i0, g0) = g
        .iter()
        .enumerate()
        .find(|(_, gi)| !as_lang(gi).is_empty())?;
    let w0 = &as_lang(g0)[0];
    let mut cands: Vec<Word> = as_lang(&b[i0])
        .iter()
        .filter_map(|v| v.strip_suffix(w0.as_str()).map(|p| p.to_string()))
        .collect();
    cands.sort_by(|x, y| shortlex_cmp(x, y));
    cands.dedup();
    cands.retain(|u| {
        g.iter().zip(b.iter()).all(|(gi, bi)| {
            as_lang(gi)
                .iter()
                .all(|w| as_lang(bi).binary_search_by(|v| shortlex_cmp(v, &format!("{u}{w}"))).is_ok())
        })
    });
    Some(cands)
}

fn solve_finlang_left(sys: &LinSystem) -> SolveOutcome {
    const METHOD: &str = "quotient-residuation";
    let mut witness = Vec::with_capacity(sys.generators.len());
    for g in &sys.generators {
        match finlang_pool(g, &sys.target) {
            None => witness.push(Value::Lang(vec![])), // all-∅ generator: canonical 0_S
            Some(pool) => {
                if pool.len() > FINLANG_POOL_CAP {
                    return SolveOutcome::bound(
                        METHOD,
                        format!("candidate pool size {} exceeds cap {FINLANG_POOL_CAP}", pool.len()),
                    );
                }
                witness.push(Value::Lang(pool));
            }
        }
    }
    if verify_left(sys, &witness) {
        SolveOutcome::solved(witness, METHOD)
    } else {
        SolveOutcome::none(METHOD)
    }
}

// ----------------------------------------------------------------- enumerate

/// All solutions (each exactly verified) for the finite-solution-set
/// semirings. Errors out when an all-zero generator makes the set infinite.
pub fn enumerate_left(sys: &LinSystem, cap: usize) -> Result<Enumeration> {
    let zero_vec = |g: &Vec<Value>| g.iter().all(|v| sys.semiring.is_zero(v));
    if sys.generators.iter().any(zero_vec) {
        return Err(Error::InfiniteSetRisk);
    }
    let domains: Vec<Vec<Value>> = match sys.semiring.tag() {
        Tag::Bool => sys
            .generators
            .iter()
            .map(|_| vec![Value::Bool(false), Value::Bool(true)])
            .collect(),
        Tag::Nat => sys
            .generators
            .iter()
            .map(|g| {
                let mut hi: Option<BigInt> = None;
                for (gi, bi) in g.iter().zip(sys.target.iter()) {
                    let gv = as_int(gi);
                    if gv.is_positive() {
                        let q = as_int(bi) / gv;
                        hi = Some(match hi {
                            None => q,
                            Some(b) => b.min(q),
                        });
                    }
                }
                let hi = hi.expect("all-zero generators were rejected");
                let mut dom = Vec::new();
                let mut v = BigInt::zero();
                while v <= hi {
                    dom.push(Value::Int(v.clone()));
                    v += 1;
                }
                dom
            })
            .collect(),
        Tag::NatMax => sys
            .generators
            .iter()
            .map(|g| {
                // λ_p ≤ the principal residual; candidates are −∞, 0, …, r.
                let mut r: Option<BigRational> = None;
                let mut forced_neg_inf = false;
                for (gi, bi) in g.iter().zip(sys.target.iter()) {
                    if let Some(gv) = as_mp(gi) {
                        match as_mp(bi) {
                            None => forced_neg_inf = true,
                            Some(bv) => {
                                let c = bv - gv;
                                r = Some(match r {
                                    None => c,
                                    Some(b) => b.min(c),
                                });
                            }
                        }
                    }
                }
                let mut dom = vec![Value::neg_inf()];
                if !forced_neg_inf {
                    if let Some(r) = r {
                        let mut v = BigInt::zero();
                        while BigRational::from(v.clone()) <= r {
                            dom.push(Value::MaxPlus(Some(BigRational::from(v.clone()))));
                            v += 1;
                        }
                    }
                }
                dom
            })
            .collect(),
        Tag::FinLang => sys
            .generators
            .iter()
            .map(|g| {
                let pool = finlang_pool(g, &sys.target).expect("all-zero generators were rejected");
                if pool.len() > 20 {
                    return Err(Error::BoundExceeded(format!(
                        "FINLANG enumeration pool of {} words is too large",
                        pool.len()
                    )));
                }
                // Subsets of the pool, smallest first.
                let mut dom = Vec::with_capacity(1 << pool.len());
                for mask in 0u32..(1 << pool.len()) {
                    let ws: Vec<Word> = pool
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, w)| w.clone())
                        .collect();
                    dom.push(Value::Lang(ws));
                }
                Ok(dom)
            })
            .collect::<Result<_>>()?,
        other => {
            return Err(Error::BadInput(format!(
                "enumeration is not available over {}",
                other.name()
            )))
        }
    };
    let mut solutions = Vec::new();
    let mut capped = false;
    let mut idx = vec![0usize; domains.len()];
    'outer: loop {
        let coeffs: Vec<Value> = idx.iter().zip(domains.iter()).map(|(&i, d)| d[i].clone()).collect();
        if verify_left(sys, &coeffs) {
            if solutions.len() == cap {
                capped = true;
                break;
            }
            solutions.push(coeffs);
        }
        for p in (0..domains.len()).rev() {
            idx[p] += 1;
            if idx[p] < domains[p].len() {
                continue 'outer;
            }
            idx[p] = 0;
        }
        break;
    }
    if domains.is_empty() {
        // No generators: solvable iff the target is all-zero; the empty
        // coefficient vector is the only candidate and was checked above.
    }
    Ok(Enumeration { solutions, capped })
}
