//! Words over a finite alphabet, always ordered shortlex (length first, then
//! lexicographic in alphabet order).

use std::cmp::Ordering;

pub type Letter = char;
pub type Word = String;

/// Shortlex comparison assuming both words are over the same ordered alphabet
/// whose letters compare like their `char` values. Fixture alphabets use
/// consecutive letters ('a', 'b', ...) so `char` order is alphabet order.
pub fn shortlex_cmp(a: &str, b: &str) -> Ordering {
    a.chars()
        .count()
        .cmp(&b.chars().count())
        .then_with(|| a.cmp(b))
}

pub fn sort_shortlex(ws: &mut Vec<Word>) {
    ws.sort_by(|a, b| shortlex_cmp(a, b));
    ws.dedup();
}

/// All words of length ≤ `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![String::new()];
    let mut layer: Vec<Word> = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &a in alphabet {
                let mut w2 = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All suffixes of `w`, including ε and `w` itself, shortlex-sorted.
pub fn suffixes(w: &str) -> Vec<Word> {
    let chars: Vec<char> = w.chars().collect();
    let mut out: Vec<Word> = (0..=chars.len())
        .map(|i| chars[i..].iter().collect())
        .collect();
    sort_shortlex(&mut out);
    out
}

/// Prefix closure of a word set, shortlex-sorted and deduplicated.
pub fn prefix_closure(ws: &[Word]) -> Vec<Word> {
    let mut out = Vec::new();
    for w in ws {
        let chars: Vec<char> = w.chars().collect();
        for i in 0..=chars.len() {
            out.push(chars[..i].iter().collect());
        }
    }
    sort_shortlex(&mut out);
    out
}

pub fn reverse(w: &str) -> Word {
    w.chars().rev().collect()
}

/// Rendering for tables and transcripts: the empty word prints as "eps".
pub fn display(w: &str) -> &str {
    if w.is_empty() {
        "eps"
    } else {
        w
    }
}
