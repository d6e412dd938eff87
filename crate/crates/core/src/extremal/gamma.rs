//! Exhaustive search for `γ(k)`, the length of the longest s-primitive word
//! over `k` letters.
//!
//! The search walks canonical words (letters introduced in order `0, 1, …`)
//! depth first and only extends s-primitive words: a word with a
//! non-primitive factor is never primitive, so a failing node closes its
//! whole subtree. Each child is screened by cheap necessary conditions on
//! its new suffix before the full primitivity search runs.
//!
//! The tree is cut at `split_depth`; subtrees below the cut are independent
//! jobs that can run on several workers and be checkpointed as they finish.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::{find_nontrivial_cover, SearchConfig};
use crate::word::{ab_x_bc_suffix, gapped_repeat_suffix, has_square_suffix, render_letters, Letter, Word};

pub const CHECKPOINT_VERSION: u32 = 1;

/// Necessary conditions checked on the suffix of each new node before the
/// full s-primitivity search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub square: bool,
    pub gapped_repeat: bool,
    /// `abXbc` factors; only applied while the word uses exactly 3 letters.
    pub ab_x_bc: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            square: true,
            gapped_repeat: true,
            ab_x_bc: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaConfig {
    pub k: usize,
    pub max_len: Option<usize>,
    pub workers: usize,
    /// Depth at which the tree is split into independent jobs.
    pub split_depth: usize,
    pub filters: FilterConfig,
    /// Keep the canonical words of maximal length.
    pub collect_words: bool,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many subtrees; the rest stay pending in the
    /// checkpoint.
    pub job_limit: Option<usize>,
}

impl GammaConfig {
    pub fn new(k: usize) -> Self {
        GammaConfig {
            k,
            max_len: None,
            workers: 1,
            split_depth: 6,
            filters: FilterConfig::default(),
            collect_words: true,
            checkpoint: None,
            job_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReport {
    pub k: usize,
    pub gamma: usize,
    pub canonical_count: u64,
    /// `canonical_count · k!`.
    pub total_count: BigUint,
    pub canonical_words: Option<Vec<Word>>,
    pub nodes_explored: u64,
    /// Some s-primitive word reached `max_len`, so `gamma` is only a lower
    /// bound.
    pub truncated: bool,
    /// Subtrees left unexplored because of `job_limit`; nonzero means the
    /// report is partial.
    pub pending_jobs: usize,
}

impl GammaReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "gamma": self.gamma,
            "canonical_count": self.canonical_count,
            "total_count": big_to_json(&self.total_count),
            "canonical_words": self.canonical_words.as_ref().map(|ws| ws.iter().map(Word::render).collect::<Vec<_>>()),
            "nodes_explored": self.nodes_explored,
            "truncated": self.truncated,
            "pending_jobs": self.pending_jobs,
        })
    }
}

pub(crate) fn big_to_json(v: &BigUint) -> serde_json::Value {
    // arbitrary_precision keeps the digits exact
    serde_json::Value::Number(v.to_string().parse().expect("decimal digits form a JSON number"))
}

/// Per-subtree statistics; merging is associative and commutative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub max_depth: usize,
    pub count_at_max: u64,
    pub words_at_max: Vec<String>,
    pub nodes: u64,
    pub truncated: bool,
}

impl SearchStats {
    fn record(&mut self, word: &[Letter], keep: bool) {
        let d = word.len();
        if d > self.max_depth {
            self.max_depth = d;
            self.count_at_max = 0;
            self.words_at_max.clear();
        }
        if d == self.max_depth {
            self.count_at_max += 1;
            if keep {
                self.words_at_max.push(render_letters(word));
            }
        }
    }

    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.truncated |= other.truncated;
        if other.max_depth > self.max_depth {
            self.max_depth = other.max_depth;
            self.count_at_max = other.count_at_max;
            self.words_at_max = other.words_at_max;
        } else if other.max_depth == self.max_depth {
            self.count_at_max += other.count_at_max;
            self.words_at_max.extend(other.words_at_max);
        }
        self.words_at_max.sort();
    }
}

/// Serialized search state: the subtrees still to explore and the merged
/// statistics of everything already explored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub k: usize,
    pub max_len: Option<usize>,
    pub split_depth: usize,
    pub filters: FilterConfig,
    pub collect_words: bool,
    pub pending: Vec<String>,
    pub completed: usize,
    pub partial: SearchStats,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cp: Checkpoint = serde_json::from_str(&text)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(Error::Input(format!(
                "checkpoint version {} is not supported (expected {CHECKPOINT_VERSION})",
                cp.version
            )));
        }
        Ok(cp)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn matches(&self, cfg: &GammaConfig) -> bool {
        self.k == cfg.k
            && self.max_len == cfg.max_len
            && self.split_depth == cfg.split_depth
            && self.filters == cfg.filters
            && self.collect_words == cfg.collect_words
    }
}

struct Explorer<'a> {
    k: usize,
    max_len: usize,
    filters: FilterConfig,
    keep: bool,
    search: &'a SearchConfig,
}

impl Explorer<'_> {
    /// Cheap rejections, all sound: each finds a non-primitive factor
    /// ending at the last position.
    fn rejected_by_filters(&self, word: &[Letter], used: usize) -> bool {
        let f = self.filters;
        (f.square && has_square_suffix(word))
            || (f.gapped_repeat && gapped_repeat_suffix(word).is_some())
            || (f.ab_x_bc && used == 3 && ab_x_bc_suffix(word))
    }

    fn is_primitive(&self, word: &[Letter]) -> Result<bool> {
        Ok(find_nontrivial_cover(word, self.search)?.is_none())
    }

    /// Explores the children of `word` (which is s-primitive and already
    /// recorded) down to `stop_depth`; words at `stop_depth` are handed to
    /// `at_stop` instead of being expanded.
    fn expand(
        &self,
        word: &mut Vec<Letter>,
        used: usize,
        stop_depth: usize,
        stats: &mut SearchStats,
        at_stop: &mut dyn FnMut(&[Letter]),
    ) -> Result<()> {
        if word.len() >= self.max_len {
            stats.truncated = true;
            return Ok(());
        }
        let last = *word.last().expect("nonempty");
        let limit = (used + 1).min(self.k);
        for c in 0..limit as u32 {
            let c = Letter::new(c);
            if c == last {
                continue;
            }
            let new_used = used.max(c.index() + 1);
            word.push(c);
            stats.nodes += 1;
            if !self.rejected_by_filters(word, new_used) && self.is_primitive(word)? {
                stats.record(word, self.keep);
                if word.len() == stop_depth {
                    at_stop(word);
                } else {
                    self.expand(word, new_used, stop_depth, stats, at_stop)?;
                }
            }
            word.pop();
        }
        Ok(())
    }

    fn root(&self, stop_depth: usize, at_stop: &mut dyn FnMut(&[Letter])) -> Result<SearchStats> {
        let mut stats = SearchStats::default();
        let mut word = vec![Letter::new(0)];
        stats.nodes += 1;
        stats.record(&word, self.keep);
        if stop_depth <= 1 {
            at_stop(&word);
            return Ok(stats);
        }
        self.expand(&mut word, 1, stop_depth, &mut stats, at_stop)?;
        Ok(stats)
    }

    /// Everything strictly below `prefix`.
    fn subtree(&self, prefix: &[Letter]) -> Result<SearchStats> {
        let mut stats = SearchStats::default();
        let mut word = prefix.to_vec();
        let used = prefix.iter().map(|l| l.index() + 1).max().unwrap_or(0);
        self.expand(&mut word, used, usize::MAX, &mut stats, &mut |_| {})?;
        Ok(stats)
    }
}

/// Runs (or resumes) the exhaustive search.
pub fn gamma_search(cfg: &GammaConfig) -> Result<GammaReport> {
    gamma_search_with(cfg, &SearchConfig::default())
}

pub fn gamma_search_with(cfg: &GammaConfig, search: &SearchConfig) -> Result<GammaReport> {
    let k = cfg.k;
    if k == 0 {
        return Err(Error::Input("alphabet size must be at least 1".into()));
    }
    if k > 4 && cfg.max_len.is_none() {
        return Err(Error::Resource(format!(
            "gamma({k}) is not known to be within reach; pass a maximum length"
        )));
    }
    if cfg.max_len == Some(0) {
        return Err(Error::Input("maximum length must be at least 1".into()));
    }
    let explorer = Explorer {
        k,
        max_len: cfg.max_len.unwrap_or(usize::MAX),
        filters: cfg.filters,
        keep: cfg.collect_words,
        search,
    };

    let resumed = match &cfg.checkpoint {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            if !cp.matches(cfg) {
                return Err(Error::Input(format!(
                    "checkpoint {} was written for a different configuration",
                    path.display()
                )));
            }
            Some(cp)
        }
        _ => None,
    };
    let state = match resumed {
        Some(cp) => cp,
        None => {
            let mut frontier = Vec::new();
            let split = cfg.split_depth.max(1);
            let stats = explorer.root(split, &mut |w| frontier.push(render_letters(w)))?;
            Checkpoint {
                version: CHECKPOINT_VERSION,
                k,
                max_len: cfg.max_len,
                split_depth: cfg.split_depth,
                filters: cfg.filters,
                collect_words: cfg.collect_words,
                pending: frontier,
                completed: 0,
                partial: stats,
            }
        }
    };
    if let Some(path) = &cfg.checkpoint {
        state.save(path)?;
    }

    let jobs: Vec<(String, Word)> = state
        .pending
        .iter()
        .map(|p| Ok((p.clone(), decode_prefix(p)?)))
        .take(cfg.job_limit.unwrap_or(usize::MAX))
        .collect::<Result<_>>()?;
    let state = Mutex::new(state);
    let run_job = |(key, prefix): &(String, Word)| -> Result<()> {
        let stats = explorer.subtree(prefix)?;
        let mut st = state.lock().expect("checkpoint state poisoned");
        st.partial.merge(stats);
        st.pending.retain(|p| p != key);
        st.completed += 1;
        if let Some(path) = &cfg.checkpoint {
            st.save(path)?;
        }
        Ok(())
    };
    if cfg.workers <= 1 {
        jobs.iter().try_for_each(run_job)?;
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
        pool.install(|| jobs.par_iter().try_for_each(run_job))?;
    }

    let st = state.into_inner().expect("checkpoint state poisoned");
    let pending_jobs = st.pending.len();
    let mut stats = st.partial;
    stats.words_at_max.sort();
    let canonical_words = cfg
        .collect_words
        .then(|| {
            stats
                .words_at_max
                .iter()
                .map(|w| decode_prefix(w))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let factorial: BigUint = (1..=k as u64).product();
    Ok(GammaReport {
        k,
        gamma: stats.max_depth,
        canonical_count: stats.count_at_max,
        total_count: factorial * stats.count_at_max,
        canonical_words,
        nodes_explored: stats.nodes,
        truncated: stats.truncated,
        pending_jobs,
    })
}

fn decode_prefix(p: &str) -> Result<Word> {
    let bad = || Error::Input(format!("bad checkpoint prefix {p:?}"));
    if p.contains(',') {
        p.split(',')
            .map(|t| t.trim().parse::<u32>().map(Letter::new).map_err(|_| bad()))
            .collect()
    } else {
        p.bytes()
            .map(|b| {
                b.is_ascii_lowercase()
                    .then(|| Letter::new((b - b'a') as u32))
                    .ok_or_else(bad)
            })
            .collect()
    }
}

/// Table rows in the shape of "k | γ(k) | example".
pub fn render_table(reports: &[GammaReport]) -> String {
    let mut rows = vec![(
        "k".to_string(),
        "gamma(k)".to_string(),
        "example of a longest s-primitive word".to_string(),
    )];
    for r in reports {
        let example = r
            .canonical_words
            .as_ref()
            .and_then(|ws| ws.first())
            .map(Word::render)
            .unwrap_or_default();
        let g = if r.truncated {
            format!(">= {}", r.gamma)
        } else {
            r.gamma.to_string()
        };
        rows.push((r.k.to_string(), g, example));
    }
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (i, (a, b, c)) in rows.iter().enumerate() {
        out.push_str(&format!("{a:>w0$} | {b:>w1$} | {c}\n"));
        if i == 0 {
            out.push_str(&format!(
                "{}-+-{}-+-{}\n",
                "-".repeat(w0),
                "-".repeat(w1),
                "-".repeat(c.len().max(7))
            ));
        }
    }
    out
}
