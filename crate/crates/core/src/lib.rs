//! Subsequence covers (s-covers) of words.
//!
//! A word `C` is an s-cover of `S` when every position of `S` belongs to some
//! occurrence of `C` as a subsequence of `S`. A word without an s-cover
//! shorter than itself is s-primitive.
//!
//! * [`word`]: words, alphabet maps, square and gapped-repeat predicates,
//!   Zimin words.
//! * [`cover`]: linear-time testing, coverage, witnesses, shuffle
//!   expansion, brute-force oracles.
//! * [`search`]: shortest s-covers, s-primitivity, bounded reduction,
//!   counting shortest s-covers.
//! * [`extremal`]: the exhaustive search for `γ(k)`, word constructions,
//!   bound recurrences and the `Φ`/`Ψ` machinery.

pub mod cover;
pub mod error;
pub mod extremal;
pub mod search;
pub mod word;

pub use cover::{
    build_tables, cover_report, is_s_cover, oracle_enumerate, oracle_split, shuffle_expand, CoverReport,
    OccurrenceTables, ShuffleExpansion,
};
pub use error::{Error, Result};
pub use extremal::{
    bounds_table, find_psi_factor, gamma_search, lower_bound_word, matches, multicover_word, phi, psi, verify_xy_lemma,
    BoundsRow, GammaConfig, GammaReport, XyReport,
};
pub use search::{
    count_shortest_s_covers, decompose_unique_letter, find_nontrivial_cover, is_s_primitive, known_gamma,
    reduce_to_bounded_cover, shortest_s_cover, CoverCount, Primitivity, SearchConfig, ShortestResult,
    UniqueLetterDecomposition,
};
pub use word::{canonicalize, first_word, last_word, parse_word, zimin, AlphabetMap, Letter, ParseMode, Word};
