//! Exact computations around the Magnus embedding of free groups: words and
//! presentations, truncated non-commutative power series, lower central
//! series certificates and quotients, parafree comparisons and Whitehead
//! minimization.

pub mod cli;
pub mod error;
pub mod freewords;
pub mod lcs;
pub mod magnus_map;
pub mod series;
pub mod whitehead;

pub use error::{Error, Result};
pub use freewords::{
    commutator, left_normed_commutator, parse_exp_word, parse_word, Alphabet, ExpWord,
    GroupWord, Presentation,
};
pub use magnus_map::{
    expand, expand_rational_word, gamma_weight, residual_witness, GammaCertificate,
    WeightOutcome,
};
pub use series::{Monomial, Series, Valuation};
pub use whitehead::{enumerate_autos, is_primitive, minimize, CyclicWord, WhiteheadAuto};
