//! The adjacency-pair conditions Φ and Ψ and a machine check of the lemma
//! that Φ holds between any square-free words of lengths 4 and 6.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{canonicalize, is_square_free, Letter, Word};

/// Some adjacent pairs `a1a2` in `x` and `b1b2` in `y` have
/// `a1 ∉ {b1, b2}` and `b2 ∉ {a1, a2}`.
pub fn phi(x: &[Letter], y: &[Letter]) -> bool {
    phi_by(x, y, |a1, a2, b1, b2| a1 != b1 && a1 != b2 && b2 != a2)
}

/// Φ with a caller-supplied condition on `(a1, a2, b1, b2)`.
pub fn phi_by(x: &[Letter], y: &[Letter], cond: impl Fn(Letter, Letter, Letter, Letter) -> bool) -> bool {
    x.windows(2).any(|u| y.windows(2).any(|v| cond(u[0], u[1], v[0], v[1])))
}

/// Φ between the first and last two letters; vacuously true below length 4.
pub fn psi(s: &[Letter]) -> bool {
    let n = s.len();
    n <= 3 || phi(&s[..2], &s[n - 2..])
}

/// `x` matches `y` when Φ(x, yᴿ).
pub fn matches(x: &[Letter], y: &[Letter]) -> bool {
    let rev: Vec<Letter> = y.iter().rev().copied().collect();
    phi(x, &rev)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XyReport {
    pub x_len: usize,
    pub y_len: usize,
    pub pairs: u64,
    pub counterexamples: u64,
    pub first_counterexample: Option<(Word, Word)>,
    /// Canonical forms of the `X` halves seen, sorted.
    pub x_types: Vec<Word>,
}

impl XyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "x_len": self.x_len,
            "y_len": self.y_len,
            "pairs": self.pairs,
            "counterexamples": self.counterexamples,
            "passed": self.passed(),
            "first_counterexample": self.first_counterexample.as_ref().map(|(x, y)| [x.render(), y.render()]),
            "x_types": self.x_types.iter().map(Word::render).collect::<Vec<_>>(),
        })
    }
}

/// Checks Φ(X, Y) for every square-free `X` of length 4 and `Y` of length 6,
/// up to renaming of the letters of the pair `X·Y`.
pub fn verify_xy_lemma() -> XyReport {
    verify_xy_lemma_with(4, 6, phi)
}

/// Enumerates words `X·Y` whose letters are numbered by first occurrence
/// across the whole pair, keeps those with both halves square-free, and
/// checks `pred(X, Y)`.
pub fn verify_xy_lemma_with(
    x_len: usize,
    y_len: usize,
    mut pred: impl FnMut(&[Letter], &[Letter]) -> bool,
) -> XyReport {
    let mut report = XyReport {
        x_len,
        y_len,
        pairs: 0,
        counterexamples: 0,
        first_counterexample: None,
        x_types: Vec::new(),
    };
    let mut types = BTreeSet::new();
    let mut buf = Vec::with_capacity(x_len + y_len);
    enumerate(&mut buf, 0, x_len, x_len + y_len, &mut |w| {
        let (x, y) = w.split_at(x_len);
        report.pairs += 1;
        types.insert(canonicalize(x));
        if !pred(x, y) {
            report.counterexamples += 1;
            if report.first_counterexample.is_none() {
                report.first_counterexample = Some((Word::from(x), Word::from(y)));
            }
        }
    });
    report.x_types = types.into_iter().collect();
    report
}

/// Canonical words of length `total` whose factors `[0, x_len)` and
/// `[x_len, total)` are square-free; squares are cut as soon as they end at
/// the newest letter of either half.
fn enumerate(buf: &mut Vec<Letter>, used: u32, x_len: usize, total: usize, visit: &mut dyn FnMut(&[Letter])) {
    if buf.len() == total {
        visit(buf);
        return;
    }
    for c in 0..=used {
        buf.push(Letter::new(c));
        let half = if buf.len() <= x_len { &buf[..] } else { &buf[x_len..] };
        if !crate::word::has_square_suffix(half) {
            enumerate(buf, used.max(c + 1), x_len, total, visit);
        }
        buf.pop();
    }
}

/// A factor `W[start..end)` with `end - start ≥ |W| - 6` and Ψ, found as in
/// the cutting argument: pick the Φ pairs inside the length-4 prefix and the
/// length-6 suffix and cut just outside them.
pub fn find_psi_factor(w: &[Letter]) -> Result<(usize, usize)> {
    if !is_square_free(w) {
        return Err(Error::Input("word is not square-free".into()));
    }
    let n = w.len();
    if n < 10 {
        return Ok((0, n.min(3)));
    }
    let (x, y) = (&w[..4], &w[n - 6..]);
    let mut best: Option<(usize, usize)> = None;
    for i in 0..3 {
        for j in 0..5 {
            let (a1, a2, b1, b2) = (x[i], x[i + 1], y[j], y[j + 1]);
            let ok = a1 != b1 && a1 != b2 && b2 != a2;
            // prefer the longest cut, then the leftmost
            if ok && best.is_none_or(|(bi, bj)| j as isize - i as isize > bj as isize - bi as isize) {
                best = Some((i, j));
            }
        }
    }
    let (i, j) = best.ok_or_else(|| {
        Error::Precondition(format!(
            "no pair satisfies the condition between {} and {}",
            Word::from(x),
            Word::from(y)
        ))
    })?;
    Ok((i, n - 6 + j + 2))
}
