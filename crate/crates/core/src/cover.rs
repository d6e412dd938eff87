//! Linear-time s-cover testing.
//!
//! A word `C` is an s-cover of `S` when every position of `S` lies on some
//! occurrence of `C` as a subsequence. The test builds the leftmost and
//! rightmost embeddings of `C` in `S` and, for every position `i`, the largest
//! index `j` of `C` whose leftmost-embedding position is `<= i` and carries the
//! letter `S[i]`. Position `i` is covered iff such a `j` exists and the
//! rightmost embedding of `C[j+1..]` starts after `i`.
//!
//! Two independent oracles live here as well: a quadratic prefix/suffix DP
//! ([`oracle_split`]) and an exponential enumeration of every occurrence
//! ([`oracle_enumerate`]). Neither uses the embedding tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{id_bound, Letter, Word};

/// Leftmost and rightmost embeddings of `C` in `S` together with the `pref`
/// table. `last_occ` carries the sentinel `n` as its final entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceTables {
    pub first_occ: Vec<usize>,
    pub last_occ: Vec<usize>,
    pub pref: Vec<isize>,
}

impl OccurrenceTables {
    /// Whether position `i` can be covered by an occurrence of `C`.
    #[inline]
    pub fn covers(&self, i: usize) -> bool {
        let j = self.pref[i];
        j >= 0 && self.last_occ[j as usize + 1] > i
    }

    /// The canonical witness for position `i`: the leftmost embedding of
    /// `C[..j]`, then `i`, then the rightmost embedding of `C[j+1..]`, with
    /// `j = pref[i]`.
    pub fn witness(&self, i: usize) -> Option<Vec<usize>> {
        if !self.covers(i) {
            return None;
        }
        let j = self.pref[i] as usize;
        let m = self.first_occ.len();
        let mut occ = Vec::with_capacity(m);
        occ.extend_from_slice(&self.first_occ[..j]);
        occ.push(i);
        occ.extend_from_slice(&self.last_occ[j + 1..m]);
        Some(occ)
    }
}

/// Leftmost embedding of `pattern` in `text`, or `None`.
pub fn leftmost_embedding(pattern: &[Letter], text: &[Letter]) -> Option<Vec<usize>> {
    let mut occ = Vec::with_capacity(pattern.len());
    let mut pos = 0;
    for &c in pattern {
        while pos < text.len() && text[pos] != c {
            pos += 1;
        }
        if pos == text.len() {
            return None;
        }
        occ.push(pos);
        pos += 1;
    }
    Some(occ)
}

/// Rightmost embedding of `pattern` in `text`, or `None`.
pub fn rightmost_embedding(pattern: &[Letter], text: &[Letter]) -> Option<Vec<usize>> {
    let mut occ = vec![0; pattern.len()];
    let mut end = text.len();
    for (k, &c) in pattern.iter().enumerate().rev() {
        loop {
            if end == 0 {
                return None;
            }
            end -= 1;
            if text[end] == c {
                break;
            }
        }
        occ[k] = end;
    }
    Some(occ)
}

pub fn is_subsequence(pattern: &[Letter], text: &[Letter]) -> bool {
    let mut it = text.iter();
    pattern.iter().all(|c| it.any(|t| t == c))
}

/// Tables for any `C` that occurs in `S` as a subsequence, without requiring
/// the occurrences to touch both ends of `S`. The covering condition holds
/// for them as well, which is what coverage needs.
pub fn embedding_tables(c: &[Letter], s: &[Letter]) -> Option<OccurrenceTables> {
    let (m, n) = (c.len(), s.len());
    if m == 0 || n == 0 {
        return None;
    }
    let first_occ = leftmost_embedding(c, s)?;
    let mut last_occ = rightmost_embedding(c, s)?;
    last_occ.push(n);

    let mut pred = vec![-1isize; id_bound(s)];
    let mut pref = Vec::with_capacity(n);
    let mut k = 0;
    for (i, &letter) in s.iter().enumerate() {
        if i == first_occ[k] {
            pred[letter.index()] = k as isize;
            if k < m - 1 {
                k += 1;
            }
        }
        pref.push(pred[letter.index()]);
    }
    Some(OccurrenceTables {
        first_occ,
        last_occ,
        pref,
    })
}

/// Builds the occurrence tables, or `None` when `C` has no occurrence in `S`
/// starting at position 0 and ending at position `n - 1`; in that case `C`
/// is not an s-cover of `S`.
pub fn build_tables(c: &[Letter], s: &[Letter]) -> Option<OccurrenceTables> {
    let t = embedding_tables(c, s)?;
    let m = c.len();
    (t.first_occ[0] == 0 && t.last_occ[m - 1] == s.len() - 1).then_some(t)
}

/// `true` iff `c` is an s-cover of `s`, in `O(|S| + k)` time.
pub fn is_s_cover(c: &[Letter], s: &[Letter]) -> bool {
    match build_tables(c, s) {
        Some(t) => (0..s.len()).all(|i| t.covers(i)),
        None => false,
    }
}

/// Result of checking one candidate against a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub is_cover: bool,
    pub coverage: usize,
    pub covered: Vec<bool>,
    /// Per position: an occurrence through it, or `None` when uncovered.
    pub witnesses: Vec<Option<Vec<usize>>>,
    pub tables: Option<OccurrenceTables>,
}

impl CoverReport {
    fn from_covered(covered: Vec<bool>, witnesses: Vec<Option<Vec<usize>>>, tables: Option<OccurrenceTables>) -> Self {
        let coverage = covered.iter().filter(|&&c| c).count();
        CoverReport {
            is_cover: coverage == covered.len() && !covered.is_empty(),
            coverage,
            covered,
            witnesses,
            tables,
        }
    }

    fn uncovered(n: usize) -> Self {
        CoverReport::from_covered(vec![false; n], vec![None; n], None)
    }

    /// JSON view in the stable report schema. Witnesses are included only
    /// when asked for; uncovered positions get an empty list.
    pub fn to_json(&self, with_witnesses: bool) -> serde_json::Value {
        let witnesses = with_witnesses.then(|| {
            self.witnesses
                .iter()
                .map(|w| w.clone().unwrap_or_default())
                .collect::<Vec<_>>()
        });
        serde_json::json!({
            "is_cover": self.is_cover,
            "coverage": self.coverage,
            "covered": self.covered,
            "witnesses": witnesses,
            "first_occ": self.tables.as_ref().map(|t| &t.first_occ),
            "last_occ": self.tables.as_ref().map(|t| &t.last_occ),
            "pref": self.tables.as_ref().map(|t| &t.pref),
        })
    }
}

/// Coverage, covered mask and canonical witnesses of `c` in `s`.
pub fn cover_report(c: &[Letter], s: &[Letter]) -> CoverReport {
    let n = s.len();
    let Some(tables) = embedding_tables(c, s) else {
        return CoverReport::uncovered(n);
    };
    let covered: Vec<bool> = (0..n).map(|i| tables.covers(i)).collect();
    let witnesses = (0..n).map(|i| tables.witness(i)).collect();
    CoverReport::from_covered(covered, witnesses, Some(tables))
}

/// Size guard for [`oracle_split`]: `|C|·|S|` at most this.
pub const SPLIT_ORACLE_MAX_CELLS: usize = 10_000_000;

/// Size guard for [`oracle_enumerate`].
pub const ENUMERATE_ORACLE_MAX_LEN: usize = 18;

/// Position `i` is coverable iff some `j` has `C[j] = S[i]`, `C[..j]` a
/// subsequence of `S[..i]` and `C[j+1..]` a subsequence of `S[i+1..]`. Both
/// subsequence relations are tabulated by dynamic programming.
pub fn oracle_split(c: &[Letter], s: &[Letter]) -> Result<CoverReport> {
    let (m, n) = (c.len(), s.len());
    if m.saturating_mul(n) > SPLIT_ORACLE_MAX_CELLS {
        return Err(Error::Input(format!(
            "split oracle limited to |C|·|S| <= {SPLIT_ORACLE_MAX_CELLS}"
        )));
    }
    if m == 0 || n == 0 {
        return Ok(CoverReport::uncovered(n));
    }
    let w = m + 1;
    // pre[i*w + j]: C[..j] is a subsequence of S[..i]
    let mut pre = vec![false; (n + 1) * w];
    for i in 0..=n {
        pre[i * w] = true;
        if i > 0 {
            for j in 1..=m {
                pre[i * w + j] = pre[(i - 1) * w + j] || (pre[(i - 1) * w + j - 1] && s[i - 1] == c[j - 1]);
            }
        }
    }
    // suf[i*w + t]: the last t letters of C form a subsequence of S[i..]
    let mut suf = vec![false; (n + 1) * w];
    for i in (0..=n).rev() {
        suf[i * w] = true;
        if i < n {
            for t in 1..=m {
                suf[i * w + t] = suf[(i + 1) * w + t] || (suf[(i + 1) * w + t - 1] && s[i] == c[m - t]);
            }
        }
    }
    let mut covered = vec![false; n];
    let mut witnesses = vec![None; n];
    for i in 0..n {
        let hit = (0..m).find(|&j| c[j] == s[i] && pre[i * w + j] && suf[(i + 1) * w + (m - 1 - j)]);
        if let Some(j) = hit {
            covered[i] = true;
            let mut occ = leftmost_embedding(&c[..j], &s[..i]).expect("DP says prefix embeds");
            occ.push(i);
            let tail = rightmost_embedding(&c[j + 1..], &s[i + 1..]).expect("DP says suffix embeds");
            occ.extend(tail.into_iter().map(|p| p + i + 1));
            witnesses[i] = Some(occ);
        }
    }
    Ok(CoverReport::from_covered(covered, witnesses, None))
}

/// Enumerates every occurrence of `C` in `S` and unions their positions.
pub fn oracle_enumerate(c: &[Letter], s: &[Letter]) -> Result<CoverReport> {
    let n = s.len();
    if n > ENUMERATE_ORACLE_MAX_LEN {
        return Err(Error::Input(format!(
            "enumeration oracle limited to |S| <= {ENUMERATE_ORACLE_MAX_LEN}"
        )));
    }
    let mut witnesses: Vec<Option<Vec<usize>>> = vec![None; n];
    if !c.is_empty() {
        let mut stack = Vec::with_capacity(c.len());
        enumerate_occurrences(c, s, 0, &mut stack, &mut |occ| {
            for &p in occ {
                if witnesses[p].is_none() {
                    witnesses[p] = Some(occ.to_vec());
                }
            }
        });
    }
    let covered = witnesses.iter().map(Option::is_some).collect();
    Ok(CoverReport::from_covered(covered, witnesses, None))
}

fn enumerate_occurrences(
    c: &[Letter],
    s: &[Letter],
    from: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let k = stack.len();
    if k == c.len() {
        visit(stack);
        return;
    }
    let remaining = c.len() - k;
    for p in from..s.len() {
        if s.len() - p < remaining {
            break;
        }
        if s[p] == c[k] {
            stack.push(p);
            enumerate_occurrences(c, s, p + 1, stack, visit);
            stack.pop();
        }
    }
}

/// A word `S' = S[0]^{r_0} … S[n-1]^{r_{n-1}}` split into disjoint
/// occurrences of `C`, i.e. a shuffle power of `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleExpansion {
    pub multiplicities: Vec<usize>,
    pub expanded: Word,
    /// Increasing position lists in `expanded`; pairwise disjoint and
    /// exhaustive, each spelling `C`.
    pub parts: Vec<Vec<usize>>,
}

/// Turns the canonical witnesses of an s-cover into a shuffle power of `C`:
/// each position `i` is repeated once per distinct witness through it, and
/// every witness receives its own copy.
pub fn shuffle_expand(c: &[Letter], s: &[Letter]) -> Result<ShuffleExpansion> {
    let report = cover_report(c, s);
    if !report.is_cover {
        return Err(Error::Precondition("candidate is not an s-cover of the word".into()));
    }
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    for w in report.witnesses.into_iter().flatten() {
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    let n = s.len();
    let mut multiplicities = vec![0usize; n];
    for w in &witnesses {
        for &p in w {
            multiplicities[p] += 1;
        }
    }
    let mut offset = Vec::with_capacity(n);
    let mut expanded = Vec::new();
    for (i, &r) in multiplicities.iter().enumerate() {
        offset.push(expanded.len());
        expanded.extend(std::iter::repeat_n(s[i], r));
    }
    let mut used = vec![0usize; n];
    let parts = witnesses
        .iter()
        .map(|w| {
            w.iter()
                .map(|&p| {
                    let slot = offset[p] + used[p];
                    used[p] += 1;
                    slot
                })
                .collect()
        })
        .collect();
    Ok(ShuffleExpansion {
        multiplicities,
        expanded: Word::new(expanded),
        parts,
    })
}
