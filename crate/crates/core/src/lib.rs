//! Performance ratings from game results and opponent Elo ratings.
//!
//! Three ratings are computed for a score of `m` points in `n` games against
//! opponents averaging `R_a`:
//!
//! - **TPR**, the tournament performance rating: the rating whose expected
//!   score is exactly `m/n`. Undefined for zero and perfect scores.
//! - **FPR**, FIDE's performance rating: `R_a` plus a tabulated rating
//!   difference indexed by percentage score, capped at ±800.
//! - **PR^e**, the estimated performance rating: the rating whose win
//!   probability maximises the chance of the exact score, subject to that
//!   chance not exceeding a threshold (0.75 by default). It equals TPR
//!   whenever TPR exists and stays finite for perfect and zero scores.
//!
//! ```
//! use perfrating::{estimated_performance_rating, PerformanceQuery, ScoreLine};
//!
//! let five_wins = PerformanceQuery::new(2700.0, ScoreLine::new(5.0, 5)?);
//! let report = estimated_performance_rating(&five_wins)?;
//! assert_eq!(report.pre.round(), 3191.0);
//! assert_eq!(report.fpr, 3500.0);
//! assert!(report.tpr.is_none());
//! # Ok::<(), perfrating::Error>(())
//! ```
//!
//! The `book/` directory of the repository walks through the model in more
//! detail; its code samples are compiled as doctests of this crate.

pub mod elo;
mod error;
pub mod figures;
pub mod ingest;
pub mod report;
pub mod score;
pub mod solver;
pub mod systems;
pub mod tables;

pub use error::{Error, Result};
pub use score::ScoreLine;
pub use systems::{
    estimated_performance_rating, fpr, tpr, Objective, PerformanceQuery, PerformanceReport, RootSide,
};

// `cargo test --doc` compiles every Rust snippet in the book and README through these.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/elo.md")]
    mod elo {}
    #[doc = include_str!("../../../book/src/score-model.md")]
    mod score_model {}
    #[doc = include_str!("../../../book/src/ratings.md")]
    mod ratings {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    mod equivalence {}
    #[doc = include_str!("../../../book/src/data.md")]
    mod data {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
