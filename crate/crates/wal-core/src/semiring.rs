//! The semiring catalog: nine concrete instances with exact arithmetic.
//!
//! Numeric instances use arbitrary-precision integers/rationals; the max-plus
//! family represents −∞ as a distinguished token (`None`), never as a sentinel
//! number; FINLANG values are canonical shortlex-sorted word sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{shortlex_cmp, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Tag {
    Bool,
    Nat,
    Int,
    Rat,
    NonNegRat,
    NatMax,
    IntMax,
    RatMax,
    FinLang,
}

impl Tag {
    pub fn name(self) -> &'static str {
        match self {
            Tag::Bool => "BOOL",
            Tag::Nat => "NAT",
            Tag::Int => "INT",
            Tag::Rat => "RAT",
            Tag::NonNegRat => "NONNEG_RAT",
            Tag::NatMax => "NAT_MAX",
            Tag::IntMax => "INT_MAX",
            Tag::RatMax => "RAT_MAX",
            Tag::FinLang => "FINLANG",
        }
    }

    pub fn from_name(s: &str) -> Result<Tag> {
        Ok(match s {
            "BOOL" => Tag::Bool,
            "NAT" => Tag::Nat,
            "INT" => Tag::Int,
            "RAT" => Tag::Rat,
            "NONNEG_RAT" => Tag::NonNegRat,
            "NAT_MAX" => Tag::NatMax,
            "INT_MAX" => Tag::IntMax,
            "RAT_MAX" => Tag::RatMax,
            "FINLANG" => Tag::FinLang,
            _ => return Err(Error::BadInput(format!("unknown semiring tag '{s}'"))),
        })
    }

    pub fn is_max_plus(self) -> bool {
        matches!(self, Tag::NatMax | Tag::IntMax | Tag::RatMax)
    }
}

/// Identifies a semiring instance. Only FINLANG carries an alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemiringId {
    pub tag: Tag,
    pub alphabet: Option<Vec<Letter>>,
}

/// An exact value of one of the nine instances. The derived ordering is only
/// used to make enumeration output deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    Bool(bool),
    /// NAT (≥ 0) and INT.
    Int(BigInt),
    /// RAT and NONNEG_RAT (≥ 0); lowest terms, positive denominator.
    Rat(BigRational),
    /// Max-plus family; `None` is −∞. NAT_MAX keeps integers ≥ 0, INT_MAX
    /// integers, RAT_MAX rationals.
    MaxPlus(Option<BigRational>),
    /// FINLANG: finite word set, shortlex-sorted and duplicate-free.
    Lang(Vec<Word>),
}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn rat(p: i64, q: i64) -> Value {
        Value::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn mp(n: i64) -> Value {
        Value::MaxPlus(Some(BigRational::from(BigInt::from(n))))
    }

    pub fn neg_inf() -> Value {
        Value::MaxPlus(None)
    }

    pub fn lang<S: AsRef<str>>(words: &[S]) -> Value {
        let mut ws: Vec<Word> = words.iter().map(|w| w.as_ref().to_string()).collect();
        ws.sort_by(|a, b| shortlex_cmp(a, b));
        ws.dedup();
        Value::Lang(ws)
    }
}

/// A semiring descriptor: the id plus the operations. Immutable; cheap to
/// clone and safe to share.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Semiring {
    pub id: SemiringId,
}

impl Semiring {
    pub fn new(tag: Tag) -> Semiring {
        assert!(tag != Tag::FinLang, "FINLANG requires an alphabet");
        Semiring {
            id: SemiringId { tag, alphabet: None },
        }
    }

    pub fn finlang(alphabet: &[Letter]) -> Semiring {
        assert!(!alphabet.is_empty(), "FINLANG alphabet must be nonempty");
        Semiring {
            id: SemiringId {
                tag: Tag::FinLang,
                alphabet: Some(alphabet.to_vec()),
            },
        }
    }

    pub fn tag(&self) -> Tag {
        self.id.tag
    }

    pub fn commutative(&self) -> bool {
        self.id.tag != Tag::FinLang
    }

    pub fn zero(&self) -> Value {
        match self.id.tag {
            Tag::Bool => Value::Bool(false),
            Tag::Nat | Tag::Int => Value::Int(BigInt::zero()),
            Tag::Rat | Tag::NonNegRat => Value::Rat(BigRational::zero()),
            Tag::NatMax | Tag::IntMax | Tag::RatMax => Value::MaxPlus(None),
            Tag::FinLang => Value::Lang(vec![]),
        }
    }

    pub fn one(&self) -> Value {
        match self.id.tag {
            Tag::Bool => Value::Bool(true),
            Tag::Nat | Tag::Int => Value::Int(BigInt::one()),
            Tag::Rat | Tag::NonNegRat => Value::Rat(BigRational::one()),
            Tag::NatMax | Tag::IntMax | Tag::RatMax => {
                Value::MaxPlus(Some(BigRational::zero()))
            }
            Tag::FinLang => Value::Lang(vec![String::new()]),
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    /// Checks that `v` lies in this instance's value domain.
    pub fn check(&self, v: &Value) -> Result<()> {
        let bad = |msg: &str| Err(Error::DomainMismatch(format!("{}: {msg}", self.id.tag.name())));
        match (self.id.tag, v) {
            (Tag::Bool, Value::Bool(_)) => Ok(()),
            (Tag::Nat, Value::Int(n)) => {
                if n.is_negative() {
                    bad("NAT values must be ≥ 0")
                } else {
                    Ok(())
                }
            }
            (Tag::Int, Value::Int(_)) => Ok(()),
            (Tag::Rat, Value::Rat(_)) => Ok(()),
            (Tag::NonNegRat, Value::Rat(r)) => {
                if r.is_negative() {
                    bad("NONNEG_RAT values must be ≥ 0")
                } else {
                    Ok(())
                }
            }
            (Tag::NatMax, Value::MaxPlus(m)) => match m {
                None => Ok(()),
                Some(r) => {
                    if !r.is_integer() || r.is_negative() {
                        bad("NAT_MAX values are naturals or -inf")
                    } else {
                        Ok(())
                    }
                }
            },
            (Tag::IntMax, Value::MaxPlus(m)) => match m {
                None => Ok(()),
                Some(r) => {
                    if !r.is_integer() {
                        bad("INT_MAX values are integers or -inf")
                    } else {
                        Ok(())
                    }
                }
            },
            (Tag::RatMax, Value::MaxPlus(_)) => Ok(()),
            (Tag::FinLang, Value::Lang(ws)) => {
                let alphabet = self.id.alphabet.as_ref().unwrap();
                for w in ws {
                    for c in w.chars() {
                        if !alphabet.contains(&c) {
                            return Err(Error::UnknownLetter(c));
                        }
                    }
                }
                for pair in ws.windows(2) {
                    if shortlex_cmp(&pair[0], &pair[1]) != std::cmp::Ordering::Less {
                        return bad("FINLANG sets must be shortlex-sorted and duplicate-free");
                    }
                }
                Ok(())
            }
            _ => bad("value variant does not belong to this instance"),
        }
    }

    pub fn add(&self, x: &Value, y: &Value) -> Result<Value> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a || *b),
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => Value::MaxPlus(match (a, b) {
                (None, m) | (m, None) => m.clone(),
                (Some(a), Some(b)) => Some(a.max(b).clone()),
            }),
            (Value::Lang(a), Value::Lang(b)) => {
                let mut ws: Vec<Word> = a.iter().chain(b.iter()).cloned().collect();
                ws.sort_by(|u, v| shortlex_cmp(u, v));
                ws.dedup();
                Value::Lang(ws)
            }
            _ => unreachable!("check accepted mismatched variants"),
        })
    }

    pub fn mul(&self, x: &Value, y: &Value) -> Result<Value> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => Value::MaxPlus(match (a, b) {
                (None, _) | (_, None) => None,
                (Some(a), Some(b)) => Some(a + b),
            }),
            // Concatenation: x's words on the left.
            (Value::Lang(a), Value::Lang(b)) => {
                let mut ws: Vec<Word> = Vec::with_capacity(a.len() * b.len());
                for u in a {
                    for v in b {
                        ws.push(format!("{u}{v}"));
                    }
                }
                ws.sort_by(|u, v| shortlex_cmp(u, v));
                ws.dedup();
                Value::Lang(ws)
            }
            _ => unreachable!("check accepted mismatched variants"),
        })
    }

    /// ⊕ over a sequence; empty sum is 0_S.
    pub fn sum<'a, I: IntoIterator<Item = &'a Value>>(&self, it: I) -> Result<Value> {
        let mut acc = self.zero();
        for v in it {
            acc = self.add(&acc, v)?;
        }
        Ok(acc)
    }

    pub fn parse(&self, text: &str) -> Result<Value> {
        let v = self.parse_inner(text)?;
        self.check(&v)
            .map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?;
        Ok(v)
    }

    fn parse_inner(&self, text: &str) -> Result<Value> {
        let t = text.trim();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        match self.id.tag {
            Tag::Bool => match t {
                "0" => Ok(Value::Bool(false)),
                "1" => Ok(Value::Bool(true)),
                _ => Err(err(0, "expected '0' or '1'")),
            },
            Tag::Nat | Tag::Int => parse_bigint(t).map(Value::Int),
            Tag::Rat | Tag::NonNegRat => parse_rational(t).map(Value::Rat),
            Tag::NatMax | Tag::IntMax | Tag::RatMax => {
                if t == "-inf" {
                    Ok(Value::MaxPlus(None))
                } else {
                    parse_rational(t).map(|r| Value::MaxPlus(Some(r)))
                }
            }
            Tag::FinLang => {
                let inner = t
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| err(0, "expected '{...}'"))?;
                let mut ws = Vec::new();
                if !inner.trim().is_empty() {
                    for part in inner.split(',') {
                        let p = part.trim();
                        if p == "eps" {
                            ws.push(String::new());
                        } else if p.is_empty() {
                            return Err(err(0, "empty list entry"));
                        } else {
                            ws.push(p.to_string());
                        }
                    }
                }
                ws.sort_by(|u, v| shortlex_cmp(u, v));
                ws.dedup();
                Ok(Value::Lang(ws))
            }
        }
    }

    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Bool(b) => if *b { "1" } else { "0" }.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Rat(r) => render_rational(r),
            Value::MaxPlus(None) => "-inf".to_string(),
            Value::MaxPlus(Some(r)) => render_rational(r),
            Value::Lang(ws) => {
                let parts: Vec<&str> = ws
                    .iter()
                    .map(|w| if w.is_empty() { "eps" } else { w.as_str() })
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

fn parse_bigint(t: &str) -> Result<BigInt> {
    t.parse::<BigInt>().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("expected an integer, got '{t}'"),
    })
}

fn parse_rational(t: &str) -> Result<BigRational> {
    if let Some((p, q)) = t.split_once('/') {
        let num = parse_bigint(p.trim())?;
        let den = parse_bigint(q.trim())?;
        if den.is_zero() {
            return Err(Error::Parse {
                pos: 0,
                msg: "zero denominator".to_string(),
            });
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from(parse_bigint(t)?))
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_max_basics() {
        let s = Semiring::new(Tag::NatMax);
        assert_eq!(s.add(&Value::mp(3), &Value::neg_inf()).unwrap(), Value::mp(3));
        assert_eq!(s.mul(&Value::mp(2), &Value::mp(3)).unwrap(), Value::mp(5));
        assert_eq!(s.mul(&s.zero(), &Value::mp(7)).unwrap(), s.zero());
    }

    #[test]
    fn finlang_union_and_concat() {
        let s = Semiring::finlang(&['a', 'b']);
        let x = Value::lang(&["a"]);
        let y = Value::lang(&["b"]);
        assert_eq!(s.add(&x, &y).unwrap(), Value::lang(&["a", "b"]));
        let e = Value::lang(&["b", ""]);
        assert_eq!(s.mul(&x, &e).unwrap(), Value::lang(&["ab", "a"]));
        // Noncommutativity witness.
        assert_ne!(s.mul(&x, &y).unwrap(), s.mul(&y, &x).unwrap());
    }

    #[test]
    fn rational_addition() {
        let s = Semiring::new(Tag::Rat);
        assert_eq!(
            s.add(&Value::rat(1, 2), &Value::rat(1, 3)).unwrap(),
            Value::rat(5, 6)
        );
    }

    #[test]
    fn parse_render_round_trip() {
        let cases: Vec<(Semiring, &str)> = vec![
            (Semiring::new(Tag::Bool), "1"),
            (Semiring::new(Tag::Int), "-17"),
            (Semiring::new(Tag::Rat), "-3/4"),
            (Semiring::new(Tag::NatMax), "-inf"),
            (Semiring::new(Tag::IntMax), "-4"),
            (Semiring::finlang(&['a', 'b']), "{eps,ab}"),
            (Semiring::finlang(&['a', 'b']), "{}"),
        ];
        for (s, text) in cases {
            let v = s.parse(text).unwrap();
            assert_eq!(s.render(&v), text);
        }
    }

    #[test]
    fn domain_checks() {
        let nat = Semiring::new(Tag::Nat);
        assert!(nat.check(&Value::int(-1)).is_err());
        assert!(nat.add(&Value::int(1), &Value::mp(1)).is_err());
        let nmax = Semiring::new(Tag::NatMax);
        assert!(nmax.check(&Value::MaxPlus(Some(BigRational::new(
            BigInt::from(1),
            BigInt::from(2)
        )))).is_err());
    }
}
