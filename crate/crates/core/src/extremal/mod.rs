//! Extremal questions: the longest s-primitive words, explicit
//! constructions and the bounds derived from them.

pub mod bounds;
pub mod constructions;
pub mod gamma;
pub mod xy;

pub use bounds::{bounds_table, render_bounds_table, BoundsRow, BOUNDS_K_MAX};
pub use constructions::{lower_bound_word, multicover_word, LOWER_BOUND_K_MAX, MULTICOVER_MAX_LEN};
pub use gamma::{
    gamma_search, gamma_search_with, render_table, Checkpoint, FilterConfig, GammaConfig, GammaReport, SearchStats,
};
pub use xy::{find_psi_factor, matches, phi, phi_by, psi, verify_xy_lemma, verify_xy_lemma_with, XyReport};
