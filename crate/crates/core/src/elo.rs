//! Elo win probabilities and their inverse.
//!
//! Ratings are plain `f64` rating points throughout the crate. They are kept
//! unrounded; rounding happens only when a [`ReportRow`](crate::report::ReportRow)
//! is built.

use crate::error::{finite, Error, Result};

/// Rating points per factor of ten in the odds.
pub const ELO_SCALE: f64 = 400.0;

/// Expected score of a player rated `a` against a player rated `b`.
///
/// ```
/// let w = perfrating::elo::win_probability(2700.0, 2700.0).unwrap();
/// assert_eq!(w, 0.5);
/// ```
pub fn win_probability(a: f64, b: f64) -> Result<f64> {
    let a = finite("rating", a)?;
    let b = finite("rating", b)?;
    Ok(1.0 / (1.0 + 10f64.powf((b - a) / ELO_SCALE)))
}

/// The rating whose win probability against `ra` is exactly `w`.
///
/// Fails with [`Error::UnboundedRating`] at `w = 0` and `w = 1`, where the
/// rating diverges.
pub fn rating_for_win_probability(w: f64, ra: f64) -> Result<f64> {
    let ra = finite("opponent rating", ra)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::ProbabilityOutOfRange(w));
    }
    if w == 0.0 || w == 1.0 {
        return Err(Error::UnboundedRating(w));
    }
    Ok(ra - ELO_SCALE * ((1.0 - w) / w).log10())
}

/// Arithmetic mean of the opponents' ratings.
pub fn average_rating(opponents: &[f64]) -> Result<f64> {
    if opponents.is_empty() {
        return Err(Error::NoOpponents);
    }
    let mut sum = 0.0;
    for &r in opponents {
        sum += finite("opponent rating", r)?;
    }
    Ok(sum / opponents.len() as f64)
}
