//! Exact evaluation of the known bounds on `γ(k)`.

use num_bigint::BigUint;
use serde::Serialize;

use super::gamma::big_to_json;
use crate::error::{Error, Result};
use crate::search::known_gamma;

pub const BOUNDS_K_MAX: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub k: usize,
    pub known: Option<usize>,
    /// Exact `γ(k)` below 4, `5·2^{k-2} - 1` from 4 on.
    pub lower: BigUint,
    /// `(2k+2)(U(k-1)+1) - 1`, with `U` the exact value where known and this
    /// same bound otherwise.
    pub preliminary_upper: BigUint,
    /// `Δ(4) = 19`, `Δ(k) = (2k-2)·Δ(k-1) + 6`.
    pub delta: Option<BigUint>,
    /// `P(4) = 19`, `P(k) = 2k·P(k-1)`.
    pub conference: Option<BigUint>,
    /// `2^{k-1}·k!`.
    pub factorial_bound: BigUint,
    /// `γ'(1) = 1`, `γ'(k+1) = 2γ'(k) + k`.
    pub conjecture: BigUint,
}

impl BoundsRow {
    pub fn to_json(&self) -> serde_json::Value {
        let opt = |v: &Option<BigUint>| v.as_ref().map(big_to_json).unwrap_or(serde_json::Value::Null);
        serde_json::json!({
            "k": self.k,
            "known": self.known,
            "lower": big_to_json(&self.lower),
            "preliminary_upper": big_to_json(&self.preliminary_upper),
            "delta": opt(&self.delta),
            "conference": opt(&self.conference),
            "factorial_bound": big_to_json(&self.factorial_bound),
            "conjecture": big_to_json(&self.conjecture),
        })
    }
}

pub fn bounds_table(k_max: usize) -> Result<Vec<BoundsRow>> {
    if !(1..=BOUNDS_K_MAX).contains(&k_max) {
        return Err(Error::Input(format!(
            "k_max must be in 1..={BOUNDS_K_MAX}, got {k_max}"
        )));
    }
    let one = BigUint::from(1u32);
    let mut rows: Vec<BoundsRow> = Vec::with_capacity(k_max);
    let mut factorial = BigUint::from(1u32);
    let mut conjecture = BigUint::from(1u32);
    for k in 1..=k_max {
        let kb = BigUint::from(k);
        factorial *= &kb;
        if k > 1 {
            conjecture = conjecture * 2u32 + (k - 1);
        }
        let known = known_gamma(k);
        let lower = match known {
            Some(g) if k < 4 => BigUint::from(g),
            _ => (BigUint::from(5u32) << (k - 2)) - &one,
        };
        let preliminary_upper = match rows.last() {
            None => one.clone(),
            Some(prev) => {
                let base = prev
                    .known
                    .map(BigUint::from)
                    .unwrap_or_else(|| prev.preliminary_upper.clone());
                BigUint::from(2 * k + 2) * (base + &one) - &one
            }
        };
        let prev = rows.last();
        let (delta, conference) = match k {
            ..=3 => (None, None),
            4 => (Some(BigUint::from(19u32)), Some(BigUint::from(19u32))),
            _ => {
                let p = prev.expect("k > 4 has a predecessor");
                (
                    p.delta.as_ref().map(|d| d * (2 * k - 2) + 6u32),
                    p.conference.as_ref().map(|c| c * (2 * k)),
                )
            }
        };
        rows.push(BoundsRow {
            k,
            known,
            lower,
            preliminary_upper,
            delta,
            conference,
            factorial_bound: (BigUint::from(1u32) << (k - 1)) * &factorial,
            conjecture: conjecture.clone(),
        });
    }
    Ok(rows)
}

pub fn render_bounds_table(rows: &[BoundsRow]) -> String {
    let show = |v: &Option<BigUint>| v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    let mut cells = vec![[
        "k",
        "gamma(k)",
        "lower",
        "preliminary",
        "delta",
        "conference",
        "2^(k-1)k!",
        "conjecture",
    ]
    .map(String::from)];
    for r in rows {
        cells.push([
            r.k.to_string(),
            r.known.map(|g| g.to_string()).unwrap_or_else(|| "?".into()),
            r.lower.to_string(),
            r.preliminary_upper.to_string(),
            show(&r.delta),
            show(&r.conference),
            r.factorial_bound.to_string(),
            r.conjecture.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..8)
        .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
