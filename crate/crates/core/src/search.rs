//! Shortest s-covers, s-primitivity, bounded-length reduction and counting.
//!
//! Candidates are explored depth first, length by length, in lexicographic
//! order of letter ids. A candidate must start with `S[0]`, end with
//! `S[n-1]` and never repeat a letter twice in a row (shortest s-covers are
//! s-primitive). Optional pruning:
//!
//! * square-free: drop prefixes ending in a square;
//! * subsequence: drop prefixes that do not embed in `S`;
//! * coverage: with `f` the leftmost embedding of the prefix `P`, every
//!   position `i <= f[|P|-1]` can only be covered through some `j < |P|`, so
//!   the suffix `P[j+1..]` must embed after `i`. Taking for every such `i` the
//!   smallest end of that embedding and then the maximum `M` over all `i`,
//!   the rest of the candidate must embed after `M`.
//!
//! None of the prunings changes the result, only the number of nodes visited.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::is_s_cover;
use crate::error::{Error, Result};
use crate::word::{alphabet_size, canonicalize, has_square_suffix, id_bound, Letter, Word};

/// `γ(k)` for the alphabet sizes where it is known exactly.
pub fn known_gamma(k: usize) -> Option<usize> {
    [0, 1, 3, 8, 19].get(k).copied()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub prune_square_free: bool,
    pub prune_subsequence: bool,
    pub prune_coverage: bool,
    /// Do not consider candidates longer than this.
    pub max_candidate_len: Option<usize>,
    /// Collect every s-cover of the minimal length.
    pub enumerate_all: bool,
    /// Count s-covers of the minimal length without storing them.
    pub count_only: bool,
    /// Abort with [`Error::Resource`] after visiting this many nodes.
    pub node_budget: Option<u64>,
    /// Split the candidate tree by its second letter across rayon workers.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            prune_square_free: true,
            prune_subsequence: true,
            prune_coverage: true,
            max_candidate_len: None,
            enumerate_all: false,
            count_only: false,
            node_budget: None,
            parallel: false,
        }
    }
}

impl SearchConfig {
    pub fn no_pruning() -> Self {
        SearchConfig {
            prune_square_free: false,
            prune_subsequence: false,
            prune_coverage: false,
            ..Default::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortestResult {
    pub length: usize,
    /// Lexicographically smallest s-cover of minimal length.
    pub witness: Word,
    pub all: Option<Vec<Word>>,
    pub count: Option<u64>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Candidates of exactly this length; stop at the first hit unless
    /// collecting.
    Exact(usize),
    /// Any candidate up to this length; stop at the first hit.
    UpTo(usize),
}

struct Searcher<'a> {
    s: &'a [Letter],
    n: usize,
    sigma: usize,
    /// `next[pos * sigma + c]`: smallest `p >= pos` with `s[p] == c`, else `n`.
    next: Vec<usize>,
    letters: Vec<Letter>,
    cfg: &'a SearchConfig,
    nodes: &'a AtomicU64,
    collect: bool,
}

enum Visit {
    Continue,
    Stop,
}

impl<'a> Searcher<'a> {
    fn new(s: &'a [Letter], cfg: &'a SearchConfig, nodes: &'a AtomicU64, collect: bool) -> Self {
        let n = s.len();
        let sigma = id_bound(s);
        let mut next = vec![n; (n + 1) * sigma];
        for pos in (0..n).rev() {
            let (cur, after) = next.split_at_mut((pos + 1) * sigma);
            cur[pos * sigma..].copy_from_slice(&after[..sigma]);
            cur[pos * sigma + s[pos].index()] = pos;
        }
        let mut present = vec![false; sigma];
        for l in s {
            present[l.index()] = true;
        }
        let letters = (0..sigma as u32)
            .filter(|&c| present[c as usize])
            .map(Letter::new)
            .collect();
        Searcher {
            s,
            n,
            sigma,
            next,
            letters,
            cfg,
            nodes,
            collect,
        }
    }

    #[inline]
    fn next_at(&self, pos: usize, c: Letter) -> usize {
        if pos >= self.n {
            self.n
        } else {
            self.next[pos * self.sigma + c.index()]
        }
    }

    fn tick(&self) -> Result<()> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.cfg.node_budget {
            Some(b) if seen > b => Err(Error::Resource(format!("node budget of {b} exhausted"))),
            _ => Ok(()),
        }
    }

    /// Largest over `i <= emb[p-1]` of the smallest end position of a
    /// completion through `i`; `None` if some such `i` cannot be covered.
    fn coverage_frontier(&self, prefix: &[Letter], emb: &[usize]) -> Option<usize> {
        let p = prefix.len();
        let last = emb[p - 1];
        let mut frontier = last;
        for i in 0..=last {
            let si = self.s[i];
            let mut best = usize::MAX;
            for j in 0..p {
                if j > 0 && emb[j - 1] >= i {
                    break;
                }
                if prefix[j] != si {
                    continue;
                }
                let mut pos = i;
                for &c in &prefix[j + 1..] {
                    pos = self.next_at(pos + 1, c);
                    if pos >= best || pos == self.n {
                        break;
                    }
                }
                if pos < best && pos < self.n {
                    best = pos;
                }
            }
            if best == usize::MAX {
                return None;
            }
            frontier = frontier.max(best);
        }
        Some(frontier)
    }

    fn missing_letters(&self, prefix: &[Letter]) -> usize {
        self.letters.iter().filter(|l| !prefix.contains(l)).count()
    }

    /// Visits `prefix` (already extended) and its descendants.
    fn dfs(&self, prefix: &mut Vec<Letter>, emb: &mut Vec<usize>, goal: Goal, found: &mut Vec<Word>) -> Result<Visit> {
        self.tick()?;
        let p = prefix.len();
        let cfg = self.cfg;
        let embeds = emb.len() == p;
        if (cfg.prune_subsequence || cfg.prune_coverage) && !embeds {
            return Ok(Visit::Continue);
        }
        if cfg.prune_square_free && has_square_suffix(prefix) {
            return Ok(Visit::Continue);
        }
        let max_len = match goal {
            Goal::Exact(l) | Goal::UpTo(l) => l,
        };
        let mut frontier = None;
        if cfg.prune_coverage {
            if p + self.missing_letters(prefix) > max_len {
                return Ok(Visit::Continue);
            }
            match self.coverage_frontier(prefix, emb) {
                None => return Ok(Visit::Continue),
                Some(f) => frontier = Some(f),
            }
        }
        let last = self.s[self.n - 1];
        let is_leaf = match goal {
            Goal::Exact(l) => p == l,
            Goal::UpTo(_) => prefix[p - 1] == last,
        };
        if is_leaf && prefix[p - 1] == last && is_s_cover(prefix, self.s) {
            found.push(Word::from(&prefix[..]));
            if !self.collect {
                return Ok(Visit::Stop);
            }
        }
        if p >= max_len {
            return Ok(Visit::Continue);
        }
        let remaining = max_len - p;
        if let Some(f) = frontier {
            // the rest needs at least one letter after f, and exactly
            // `remaining` of them when the length is fixed
            let room = self.n - 1 - f;
            let needed = match goal {
                Goal::Exact(_) => remaining,
                Goal::UpTo(_) => 1,
            };
            if room < needed {
                return Ok(Visit::Continue);
            }
        }
        let only_last = matches!(goal, Goal::Exact(l) if p + 1 == l);
        for idx in 0..self.letters.len() {
            let c = self.letters[idx];
            if c == prefix[p - 1] || (only_last && c != last) {
                continue;
            }
            if let Visit::Stop = self.step(prefix, emb, c, goal, found)? {
                return Ok(Visit::Stop);
            }
        }
        Ok(Visit::Continue)
    }

    fn step(
        &self,
        prefix: &mut Vec<Letter>,
        emb: &mut Vec<usize>,
        c: Letter,
        goal: Goal,
        found: &mut Vec<Word>,
    ) -> Result<Visit> {
        let p = prefix.len();
        let pushed_emb = if emb.len() == p {
            let start = emb.last().map_or(0, |&e| e + 1);
            let pos = self.next_at(start, c);
            if pos < self.n {
                emb.push(pos);
                true
            } else {
                false
            }
        } else {
            false
        };
        prefix.push(c);
        let r = self.dfs(prefix, emb, goal, found);
        prefix.pop();
        if pushed_emb {
            emb.pop();
        }
        r
    }

    fn run(&self, goal: Goal) -> Result<Vec<Word>> {
        let mut found = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        let mut emb = Vec::with_capacity(self.n);
        self.step(&mut prefix, &mut emb, self.s[0], goal, &mut found)?;
        Ok(found)
    }

    /// Same as [`run`](Self::run) but the subtrees below each second letter
    /// are searched on the rayon pool; results are merged in letter order.
    fn run_parallel(&self, goal: Goal) -> Result<Vec<Word>> {
        let (first, last) = (self.s[0], self.s[self.n - 1]);
        let max_len = match goal {
            Goal::Exact(l) | Goal::UpTo(l) => l,
        };
        if max_len < 2 {
            return self.run(goal);
        }
        let mut out = Vec::new();
        if matches!(goal, Goal::UpTo(_)) && first == last && is_s_cover(&[first], self.s) {
            out.push(Word::new(vec![first]));
            if !self.collect {
                return Ok(out);
            }
        }
        let seconds: Vec<Letter> = self
            .letters
            .iter()
            .copied()
            .filter(|&c| c != first && !(goal == Goal::Exact(2) && c != last))
            .collect();
        let per_branch: Vec<Result<Vec<Word>>> = seconds
            .par_iter()
            .map(|&c| {
                let mut found = Vec::new();
                let mut prefix = vec![first];
                let mut emb = vec![0];
                self.step(&mut prefix, &mut emb, c, goal, &mut found)?;
                Ok(found)
            })
            .collect();
        for r in per_branch {
            let mut found = r?;
            if !found.is_empty() && !self.collect {
                found.truncate(1);
                return Ok(found);
            }
            out.append(&mut found);
        }
        Ok(out)
    }
}

fn search(s: &[Letter], cfg: &SearchConfig, goal: Goal, collect: bool, nodes: &AtomicU64) -> Result<Vec<Word>> {
    let searcher = Searcher::new(s, cfg, nodes, collect);
    if cfg.parallel {
        searcher.run_parallel(goal)
    } else {
        searcher.run(goal)
    }
}

/// Shortest s-cover of `s` (length first, then lexicographic on ids).
pub fn shortest_s_cover(s: &[Letter], cfg: &SearchConfig) -> Result<ShortestResult> {
    if s.is_empty() {
        return Err(Error::Input("the empty word has no s-cover".into()));
    }
    let n = s.len();
    let lo = alphabet_size(s);
    let hi = cfg.max_candidate_len.map_or(n, |m| m.min(n));
    let collect = cfg.enumerate_all || cfg.count_only;
    let nodes = AtomicU64::new(0);
    for len in lo..=hi {
        let found = if len == n {
            // the only length-n subsequence of s is s itself
            vec![Word::from(s)]
        } else {
            search(s, cfg, Goal::Exact(len), collect, &nodes)?
        };
        if let Some(first) = found.first() {
            return Ok(ShortestResult {
                length: len,
                witness: first.clone(),
                count: collect.then_some(found.len() as u64),
                all: cfg.enumerate_all.then_some(found.clone()),
                nodes: nodes.load(Ordering::Relaxed),
            });
        }
    }
    Err(Error::Resource(format!(
        "no s-cover of length <= {hi} (max_candidate_len)"
    )))
}

/// Some s-cover of `s` shorter than `s`, if one exists: the first hit in a
/// depth-first, lexicographic walk.
pub fn find_nontrivial_cover(s: &[Letter], cfg: &SearchConfig) -> Result<Option<Word>> {
    if s.is_empty() {
        return Err(Error::Input("the empty word has no s-cover".into()));
    }
    if s.len() == 1 {
        return Ok(None);
    }
    let nodes = AtomicU64::new(0);
    let found = search(s, cfg, Goal::UpTo(s.len() - 1), false, &nodes)?;
    Ok(found.into_iter().next())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// A non-trivial s-cover when the word is not s-primitive.
    pub witness: Option<Word>,
}

/// Decides s-primitivity. Words over `k <= 4` letters longer than `γ(k)` are
/// answered by reducing the prefix of length `γ(k) + 1` to its shortest
/// s-cover; everything else is decided by search.
pub fn is_s_primitive(s: &[Letter], cfg: &SearchConfig) -> Result<Primitivity> {
    if s.is_empty() {
        return Err(Error::Input("s-primitivity of the empty word is undefined".into()));
    }
    let k = alphabet_size(s);
    if let Some(g) = known_gamma(k) {
        if s.len() > g {
            let head = shortest_s_cover(&s[..g + 1], cfg)?;
            return Ok(Primitivity {
                primitive: false,
                witness: Some(head.witness.concat(&s[g + 1..])),
            });
        }
    }
    match find_nontrivial_cover(s, cfg)? {
        None => Ok(Primitivity {
            primitive: true,
            witness: None,
        }),
        Some(_) => {
            let shortest = shortest_s_cover(s, cfg)?;
            Ok(Primitivity {
                primitive: false,
                witness: Some(shortest.witness),
            })
        }
    }
}

/// An s-cover of `s` of length at most `γ(k)`, `k = |Alph(s)| <= 4`. The
/// head of length `γ(k) + 1` is repeatedly replaced by its shortest s-cover;
/// the final word is replaced by its own shortest s-cover.
pub fn reduce_to_bounded_cover(s: &[Letter], cfg: &SearchConfig) -> Result<Word> {
    if s.is_empty() {
        return Err(Error::Input("the empty word has no s-cover".into()));
    }
    let k = alphabet_size(s);
    let g =
        known_gamma(k).ok_or_else(|| Error::Unsupported(format!("gamma({k}) is not known; reduction needs k <= 4")))?;
    let mut current: Vec<Letter> = s.to_vec();
    while current.len() > g {
        let head = shortest_s_cover(&current[..g + 1], cfg)?.witness;
        debug_assert!(head.len() <= g);
        let mut next = head.into_letters();
        next.extend_from_slice(&current[g + 1..]);
        current = next;
    }
    Ok(shortest_s_cover(&current, cfg)?.witness)
}

/// `S = S' a S''` with `a` occurring once in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueLetterDecomposition {
    pub position: usize,
    pub letter: Letter,
    pub left: Word,
    pub right: Word,
}

/// Splits at the leftmost position whose letter occurs exactly once.
pub fn decompose_unique_letter(s: &[Letter]) -> Option<UniqueLetterDecomposition> {
    let mut counts = vec![0usize; id_bound(s)];
    for l in s {
        counts[l.index()] += 1;
    }
    let position = s.iter().position(|l| counts[l.index()] == 1)?;
    Some(UniqueLetterDecomposition {
        position,
        letter: s[position],
        left: Word::from(&s[..position]),
        right: Word::from(&s[position + 1..]),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCount {
    pub length: usize,
    pub count: BigUint,
}

/// Number of distinct shortest s-covers. Words are split at unique letters
/// (lengths add, counts multiply); blocks without a unique letter are
/// enumerated directly, memoised up to renaming.
pub fn count_shortest_s_covers(s: &[Letter], cfg: &SearchConfig) -> Result<CoverCount> {
    if s.is_empty() {
        return Err(Error::Input("the empty word has no s-cover".into()));
    }
    let mut memo = HashMap::new();
    let (length, count) = count_rec(s, cfg, &mut memo)?;
    Ok(CoverCount { length, count })
}

fn count_rec(s: &[Letter], cfg: &SearchConfig, memo: &mut HashMap<Word, (usize, BigUint)>) -> Result<(usize, BigUint)> {
    if s.is_empty() {
        return Ok((0, BigUint::one()));
    }
    if let Some(d) = decompose_unique_letter(s) {
        let (ll, lc) = count_rec(&d.left, cfg, memo)?;
        let (rl, rc) = count_rec(&d.right, cfg, memo)?;
        return Ok((ll + 1 + rl, lc * rc));
    }
    let key = canonicalize(s);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let leaf_cfg = SearchConfig {
        count_only: true,
        enumerate_all: false,
        ..cfg.clone()
    };
    let r = shortest_s_cover(&key, &leaf_cfg)?;
    let value = (r.length, BigUint::from(r.count.unwrap_or(1)));
    memo.insert(key, value.clone());
    Ok(value)
}
