//! Python bindings. Words can be passed as `str` (one letter per
//! character), as a list of `str` tokens, as a list of `int` ids, or as a
//! `Word`.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use scover::{AlphabetMap, Letter, ParseMode, SearchConfig};

create_exception!(scover_py, ScoverError, PyException, "Base class for scover errors.");
create_exception!(
    scover_py,
    InputError,
    ScoverError,
    "Malformed input or violated precondition."
);
create_exception!(
    scover_py,
    ResourceError,
    ScoverError,
    "A node budget, length cap or size guard was hit."
);

fn to_py(e: scover::Error) -> PyErr {
    match e {
        scover::Error::Resource(m) => ResourceError::new_err(m),
        other => InputError::new_err(other.to_string()),
    }
}

/// Python `int` from a big unsigned integer.
fn py_int<'py>(py: Python<'py>, v: &impl std::fmt::Display) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((v.to_string(),))
}

/// A word with the alphabet it was read from.
#[pyclass(name = "Word", module = "scover_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyWord {
    word: scover::Word,
    map: Option<AlphabetMap>,
}

impl PyWord {
    fn render(&self, w: &[Letter]) -> String {
        match &self.map {
            Some(m) => m.render(w),
            None => scover::word::render_letters(w),
        }
    }
}

#[pymethods]
impl PyWord {
    /// `tokens=True` splits on commas and whitespace instead of characters.
    #[new]
    #[pyo3(signature = (text, tokens = false))]
    fn new(text: &str, tokens: bool) -> PyResult<Self> {
        let mode = if tokens { ParseMode::Tokens } else { ParseMode::Chars };
        let (word, map) = scover::parse_word(text, mode).map_err(to_py)?;
        Ok(PyWord { word, map: Some(map) })
    }

    #[staticmethod]
    fn from_ids(ids: Vec<u32>) -> Self {
        PyWord {
            word: scover::Word::from_ids(ids),
            map: None,
        }
    }

    fn ids(&self) -> Vec<u32> {
        self.word.ids()
    }

    fn alphabet_size(&self) -> usize {
        self.word.alphabet_size()
    }

    /// Letters renamed in order of first appearance.
    fn canonical(&self) -> PyWord {
        PyWord::from_ids(scover::canonicalize(&self.word).ids())
    }

    fn __len__(&self) -> usize {
        self.word.len()
    }

    fn __str__(&self) -> String {
        self.render(&self.word)
    }

    fn __repr__(&self) -> String {
        format!("Word({:?})", self.__str__())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.word == other.word
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.word.hash(&mut h);
        h.finish()
    }
}

#[derive(FromPyObject)]
enum WordArg {
    Word(PyWord),
    Text(String),
    Ids(Vec<u32>),
    Tokens(Vec<String>),
}

impl WordArg {
    /// Resolves into `map` (extended for text input) or keeps raw ids.
    fn resolve(self, map: &mut Option<AlphabetMap>) -> PyResult<scover::Word> {
        let parse = |map: &mut Option<AlphabetMap>, text: &str, mode: ParseMode| {
            let m = map.get_or_insert_with(|| AlphabetMap::new(mode));
            if m.mode() != mode {
                return Err(PyValueError::new_err("cannot mix character and token words"));
            }
            m.parse(text).map_err(to_py)
        };
        match self {
            WordArg::Word(w) => {
                if map.is_none() {
                    *map = w.map.clone();
                }
                Ok(w.word)
            }
            WordArg::Text(t) => parse(map, &t, ParseMode::Chars),
            WordArg::Tokens(ts) => {
                if ts.iter().any(|t| t.is_empty() || t.contains([',', ' ', '\t', '\n'])) {
                    return Err(InputError::new_err("tokens must be nonempty and free of separators"));
                }
                parse(map, &ts.join(","), ParseMode::Tokens)
            }
            WordArg::Ids(ids) if ids.is_empty() => Err(InputError::new_err("empty word")),
            WordArg::Ids(ids) => Ok(scover::Word::from_ids(ids)),
        }
    }
}

fn one(arg: WordArg) -> PyResult<PyWord> {
    let mut map = None;
    let word = arg.resolve(&mut map)?;
    Ok(PyWord { word, map })
}

/// `S` is read before `C` so that text letters are numbered along `S`.
fn pair(cover: WordArg, word: WordArg) -> PyResult<(PyWord, scover::Word)> {
    let mut map = None;
    let s = word.resolve(&mut map)?;
    let c = cover.resolve(&mut map)?;
    Ok((PyWord { word: s, map }, c))
}

fn config(budget: Option<u64>, pruning: bool) -> SearchConfig {
    let cfg = if pruning {
        SearchConfig::default()
    } else {
        SearchConfig::no_pruning()
    };
    SearchConfig {
        node_budget: budget,
        ..cfg
    }
}

#[pyclass(name = "OccurrenceTables", module = "scover_py", frozen, get_all)]
struct PyTables {
    first_occ: Vec<usize>,
    last_occ: Vec<usize>,
    pref: Vec<isize>,
}

impl From<scover::OccurrenceTables> for PyTables {
    fn from(t: scover::OccurrenceTables) -> Self {
        PyTables {
            first_occ: t.first_occ,
            last_occ: t.last_occ,
            pref: t.pref,
        }
    }
}

#[pyclass(name = "CoverReport", module = "scover_py", frozen)]
struct PyCoverReport(scover::CoverReport);

#[pymethods]
impl PyCoverReport {
    #[getter]
    fn is_cover(&self) -> bool {
        self.0.is_cover
    }

    #[getter]
    fn coverage(&self) -> usize {
        self.0.coverage
    }

    #[getter]
    fn covered(&self) -> Vec<bool> {
        self.0.covered.clone()
    }

    /// Per position, the positions of an occurrence through it, or `None`.
    #[getter]
    fn witnesses(&self) -> Vec<Option<Vec<usize>>> {
        self.0.witnesses.clone()
    }

    #[getter]
    fn tables(&self) -> Option<PyTables> {
        self.0.tables.clone().map(PyTables::from)
    }

    #[pyo3(signature = (witnesses = false))]
    fn to_json(&self, witnesses: bool) -> String {
        self.0.to_json(witnesses).to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "CoverReport(is_cover={}, coverage={})",
            self.0.is_cover, self.0.coverage
        )
    }
}

#[pyclass(name = "ShortestResult", module = "scover_py", frozen, get_all)]
struct PyShortest {
    length: usize,
    witness: String,
    all: Option<Vec<String>>,
    nodes: u64,
}

#[pyclass(name = "GammaReport", module = "scover_py", frozen, get_all)]
struct PyGammaReport {
    k: usize,
    gamma: usize,
    canonical_count: u64,
    total_count: Py<PyAny>,
    canonical_words: Option<Vec<String>>,
    nodes_explored: u64,
    truncated: bool,
    pending_jobs: usize,
}

#[pymethods]
impl PyGammaReport {
    fn __repr__(&self) -> String {
        format!(
            "GammaReport(k={}, gamma={}, canonical_count={})",
            self.k, self.gamma, self.canonical_count
        )
    }
}

#[pyclass(name = "XyReport", module = "scover_py", frozen, get_all)]
struct PyXyReport {
    pairs: u64,
    counterexamples: u64,
    passed: bool,
    first_counterexample: Option<(String, String)>,
    x_types: Vec<String>,
}

#[pyfunction]
fn is_s_cover(cover: WordArg, word: WordArg) -> PyResult<bool> {
    let (s, c) = pair(cover, word)?;
    Ok(scover::is_s_cover(&c, &s.word))
}

#[pyfunction]
fn cover_report(cover: WordArg, word: WordArg) -> PyResult<PyCoverReport> {
    let (s, c) = pair(cover, word)?;
    Ok(PyCoverReport(scover::cover_report(&c, &s.word)))
}

/// `None` unless `cover` is a subsequence starting at 0 and ending at the
/// last position of `word`.
#[pyfunction]
fn build_tables(cover: WordArg, word: WordArg) -> PyResult<Option<PyTables>> {
    let (s, c) = pair(cover, word)?;
    Ok(scover::build_tables(&c, &s.word).map(PyTables::from))
}

#[pyfunction]
#[pyo3(signature = (word, all = false, max_len = None, budget = None, pruning = true))]
fn shortest_s_cover(
    py: Python<'_>,
    word: WordArg,
    all: bool,
    max_len: Option<usize>,
    budget: Option<u64>,
    pruning: bool,
) -> PyResult<PyShortest> {
    let s = one(word)?;
    let cfg = SearchConfig {
        enumerate_all: all,
        max_candidate_len: max_len,
        ..config(budget, pruning)
    };
    let r = py.detach(|| scover::shortest_s_cover(&s.word, &cfg)).map_err(to_py)?;
    Ok(PyShortest {
        length: r.length,
        witness: s.render(&r.witness),
        all: r.all.map(|ws| ws.iter().map(|w| s.render(w)).collect()),
        nodes: r.nodes,
    })
}

/// `(primitive, witness)`; the witness is a shortest non-trivial s-cover.
#[pyfunction]
#[pyo3(signature = (word, budget = None))]
fn is_s_primitive(py: Python<'_>, word: WordArg, budget: Option<u64>) -> PyResult<(bool, Option<String>)> {
    let s = one(word)?;
    let p = py
        .detach(|| scover::is_s_primitive(&s.word, &config(budget, true)))
        .map_err(to_py)?;
    Ok((p.primitive, p.witness.map(|w| s.render(&w))))
}

#[pyfunction]
#[pyo3(signature = (word, budget = None))]
fn reduce_to_bounded_cover(py: Python<'_>, word: WordArg, budget: Option<u64>) -> PyResult<String> {
    let s = one(word)?;
    let c = py
        .detach(|| scover::reduce_to_bounded_cover(&s.word, &config(budget, true)))
        .map_err(to_py)?;
    Ok(s.render(&c))
}

/// `(length, count)` of the shortest s-covers.
#[pyfunction]
#[pyo3(signature = (word, budget = None))]
fn count_shortest_s_covers<'py>(
    py: Python<'py>,
    word: WordArg,
    budget: Option<u64>,
) -> PyResult<(usize, Bound<'py, PyAny>)> {
    let s = one(word)?;
    let r = py
        .detach(|| scover::count_shortest_s_covers(&s.word, &config(budget, true)))
        .map_err(to_py)?;
    Ok((r.length, py_int(py, &r.count)?))
}

#[pyfunction]
#[pyo3(signature = (k, max_len = None, workers = 1, split_depth = 6, checkpoint = None, job_limit = None))]
fn gamma_search(
    py: Python<'_>,
    k: usize,
    max_len: Option<usize>,
    workers: usize,
    split_depth: usize,
    checkpoint: Option<PathBuf>,
    job_limit: Option<usize>,
) -> PyResult<PyGammaReport> {
    let cfg = scover::GammaConfig {
        max_len,
        workers,
        split_depth,
        checkpoint,
        job_limit,
        ..scover::GammaConfig::new(k)
    };
    let r = py.detach(|| scover::gamma_search(&cfg)).map_err(to_py)?;
    Ok(PyGammaReport {
        k: r.k,
        gamma: r.gamma,
        canonical_count: r.canonical_count,
        total_count: py_int(py, &r.total_count)?.unbind(),
        canonical_words: r
            .canonical_words
            .map(|ws| ws.iter().map(scover::Word::render).collect()),
        nodes_explored: r.nodes_explored,
        truncated: r.truncated,
        pending_jobs: r.pending_jobs,
    })
}

#[pyfunction]
fn lower_bound_word(k: usize) -> PyResult<PyWord> {
    Ok(PyWord::from_ids(scover::lower_bound_word(k).map_err(to_py)?.ids()))
}

#[pyfunction]
fn multicover_word(n: usize) -> PyResult<PyWord> {
    Ok(PyWord::from_ids(scover::multicover_word(n).map_err(to_py)?.ids()))
}

#[pyfunction]
fn zimin(k: usize) -> PyResult<PyWord> {
    Ok(PyWord::from_ids(scover::zimin(k).map_err(to_py)?.ids()))
}

/// One dict per k; absent recurrences are `None`.
#[pyfunction]
fn bounds_table<'py>(py: Python<'py>, k_max: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = scover::bounds_table(k_max).map_err(to_py)?;
    rows.iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("k", r.k)?;
            d.set_item("known", r.known)?;
            d.set_item("lower", py_int(py, &r.lower)?)?;
            d.set_item("preliminary_upper", py_int(py, &r.preliminary_upper)?)?;
            d.set_item("delta", r.delta.as_ref().map(|v| py_int(py, v)).transpose()?)?;
            d.set_item("conference", r.conference.as_ref().map(|v| py_int(py, v)).transpose()?)?;
            d.set_item("factorial_bound", py_int(py, &r.factorial_bound)?)?;
            d.set_item("conjecture", py_int(py, &r.conjecture)?)?;
            Ok(d)
        })
        .collect()
}

fn at_least_two(w: &scover::Word) -> PyResult<()> {
    if w.len() < 2 {
        return Err(InputError::new_err("words must have at least two letters"));
    }
    Ok(())
}

#[pyfunction]
fn phi(x: WordArg, y: WordArg) -> PyResult<bool> {
    let (y, x) = pair(x, y)?;
    at_least_two(&x)?;
    at_least_two(&y.word)?;
    Ok(scover::phi(&x, &y.word))
}

#[pyfunction]
fn matches(x: WordArg, y: WordArg) -> PyResult<bool> {
    let (y, x) = pair(x, y)?;
    at_least_two(&x)?;
    at_least_two(&y.word)?;
    Ok(scover::matches(&x, &y.word))
}

#[pyfunction]
fn psi(word: WordArg) -> PyResult<bool> {
    Ok(scover::psi(&one(word)?.word))
}

/// Half-open bounds of a factor of length at least `len(word) - 6`
/// satisfying psi.
#[pyfunction]
fn find_psi_factor(word: WordArg) -> PyResult<(usize, usize)> {
    scover::find_psi_factor(&one(word)?.word).map_err(to_py)
}

#[pyfunction]
fn verify_xy_lemma(py: Python<'_>) -> PyXyReport {
    let r = py.detach(scover::verify_xy_lemma);
    PyXyReport {
        pairs: r.pairs,
        counterexamples: r.counterexamples,
        passed: r.passed(),
        first_counterexample: r.first_counterexample.map(|(x, y)| (x.render(), y.render())),
        x_types: r.x_types.iter().map(scover::Word::render).collect(),
    }
}

#[pymodule]
fn scover_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ScoverError", py.get_type::<ScoverError>())?;
    m.add("InputError", py.get_type::<InputError>())?;
    m.add("ResourceError", py.get_type::<ResourceError>())?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyTables>()?;
    m.add_class::<PyCoverReport>()?;
    m.add_class::<PyShortest>()?;
    m.add_class::<PyGammaReport>()?;
    m.add_class::<PyXyReport>()?;
    m.add_function(wrap_pyfunction!(is_s_cover, m)?)?;
    m.add_function(wrap_pyfunction!(cover_report, m)?)?;
    m.add_function(wrap_pyfunction!(build_tables, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_s_cover, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_primitive, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_to_bounded_cover, m)?)?;
    m.add_function(wrap_pyfunction!(count_shortest_s_covers, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_search, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_word, m)?)?;
    m.add_function(wrap_pyfunction!(multicover_word, m)?)?;
    m.add_function(wrap_pyfunction!(zimin, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_table, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(matches, m)?)?;
    m.add_function(wrap_pyfunction!(find_psi_factor, m)?)?;
    m.add_function(wrap_pyfunction!(verify_xy_lemma, m)?)?;
    Ok(())
}
