use thiserror::Error;

/// Violated preconditions of the rating engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("win probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("win probability {0} maps to an unbounded rating; use a constrained w*")]
    UnboundedRating(f64),

    #[error("cannot average an empty list of opponent ratings")]
    NoOpponents,

    #[error("invalid score {points}/{games}: {reason}")]
    InvalidScore {
        points: f64,
        games: u32,
        reason: &'static str,
    },

    #[error("threshold must lie in the open interval (0, 1), got {0}")]
    ThresholdOutOfRange(f64),

    #[error("tournament performance rating is undefined for {points}/{games}")]
    UndefinedTpr { points: f64, games: u32 },

    #[error("percentage score must lie in [0, 1], got {0}")]
    PercentageOutOfRange(f64),

    #[error(
        "constraint binds on both sides of the peak for {m}/{n} (peak {peak:.4} > t = {threshold}); \
         choose a root side"
    )]
    AmbiguousArgmax {
        m: u32,
        n: u32,
        peak: f64,
        threshold: f64,
    },

    #[error("at-least objective is infeasible for {m}/{n}: S̄ is identically 1 > t")]
    Infeasible { m: u32, n: u32 },

    #[error("target {target} is not bracketed by f(lo) = {f_lo} and f(hi) = {f_hi}")]
    NoRoot { target: f64, f_lo: f64, f_hi: f64 },

    #[error("query slice is empty")]
    EmptySlice,

    #[error("query slice mixes players {0:?} and {1:?}")]
    MixedPlayers(String, String),

    #[error("records are not sorted by (player, sequence) at index {index}")]
    Unsorted { index: usize },

    #[error("minimum streak length must be at least 1")]
    ZeroStreakLength,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}
