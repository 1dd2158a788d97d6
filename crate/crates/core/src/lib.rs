//! shiftlab — a workbench for symbolic dynamics at desk scale.
//!
//! The crate constructs three families of shift spaces — beta-shifts,
//! S-gap shifts, and coded systems given by generating word lists —
//! and provides machinery to interrogate them:
//!
//! * exact language enumeration and automaton-backed word counting
//!   ([`lang`]),
//! * prefix/good-core/suffix decompositions of their languages with
//!   checkable gluing, growth-comparison, and extension conditions
//!   ([`decomp`]),
//! * periodic-orbit censuses, empirical and stationary Markov measures,
//!   and uniform cylinder-ratio (Gibbs-type) diagnostics ([`measure`]),
//! * sliding block codes with decomposition transport to factor systems
//!   ([`factor`]).
//!
//! All combinatorics use exact integer/rational arithmetic; floating
//! point appears only in final rate and measure readouts.

pub mod beta;
pub mod coded;
pub mod decomp;
pub mod exact;
pub mod factor;
pub mod lang;
pub mod measure;
pub mod report;
pub mod sgap;
pub mod word;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] word::WordError),
    #[error("enumeration budget exceeded at layer {layer} (limit {limit} words)")]
    BudgetExceeded { layer: usize, limit: usize },
    #[error("verification budget exceeded after {checks} membership checks (limit {limit})")]
    VerifyBudget { checks: u64, limit: u64 },
    #[error("depth {requested} exceeds the exactly supported maximum {max}")]
    DepthUnsupported { requested: usize, max: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("working precision insufficient: {0}")]
    Precision(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
