//! Score lines and the binomial scoring model.
//!
//! A score line of `m` points in `n` games is modelled as `n` independent
//! games won with a common probability `w`. Chess draws are worth half a
//! point, so a fractional score is first doubled into an integer score with
//! the same ratio (see [`ScoreLine::normalize`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this many games the binomial mass is evaluated in log space.
pub const LOG_DOMAIN_GAMES: u32 = 50;

/// `m` points in `n` games, with `m` a multiple of one half.
///
/// Stored as integer half-points so that sums of results never drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoreLine {
    half_points: u32,
    games: u32,
}

impl ScoreLine {
    pub fn new(points: f64, games: u32) -> Result<Self> {
        let invalid = |reason| Error::InvalidScore {
            points,
            games,
            reason,
        };
        if !points.is_finite() || points < 0.0 {
            return Err(invalid("points must be a non-negative number"));
        }
        let doubled = points * 2.0;
        if doubled.fract() != 0.0 || doubled > f64::from(u32::MAX) {
            return Err(invalid("points must be a multiple of 0.5"));
        }
        Self::from_half_points(doubled as u32, games)
    }

    pub fn from_half_points(half_points: u32, games: u32) -> Result<Self> {
        let points = f64::from(half_points) / 2.0;
        if games == 0 {
            return Err(Error::InvalidScore {
                points,
                games,
                reason: "at least one game is required",
            });
        }
        if u64::from(half_points) > 2 * u64::from(games) {
            return Err(Error::InvalidScore {
                points,
                games,
                reason: "points exceed games played",
            });
        }
        Ok(Self { half_points, games })
    }

    pub fn points(&self) -> f64 {
        f64::from(self.half_points) / 2.0
    }

    pub fn half_points(&self) -> u32 {
        self.half_points
    }

    pub fn games(&self) -> u32 {
        self.games
    }

    /// Fraction of available points scored.
    pub fn ratio(&self) -> f64 {
        f64::from(self.half_points) / (2.0 * f64::from(self.games))
    }

    pub fn is_zero(&self) -> bool {
        self.half_points == 0
    }

    pub fn is_perfect(&self) -> bool {
        self.half_points == 2 * self.games
    }

    /// Integer form of the score. Whole-point scores are returned unchanged;
    /// a score with a half point has both sides doubled, exactly once.
    ///
    /// ```
    /// use perfrating::score::ScoreLine;
    ///
    /// let whole = ScoreLine::new(1.0, 1).unwrap().normalize();
    /// assert_eq!((whole.points(), whole.games()), (1, 1));
    ///
    /// let half = ScoreLine::new(8.5, 10).unwrap().normalize();
    /// assert_eq!((half.points(), half.games()), (17, 20));
    /// ```
    pub fn normalize(&self) -> NormalizedScore {
        if self.half_points.is_multiple_of(2) {
            NormalizedScore {
                points: self.half_points / 2,
                games: self.games,
            }
        } else {
            NormalizedScore {
                points: self.half_points,
                games: 2 * self.games,
            }
        }
    }
}

impl fmt::Display for ScoreLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.points(), self.games)
    }
}

/// A score line with integer points, ready for the binomial model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizedScore {
    points: u32,
    games: u32,
}

impl NormalizedScore {
    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn games(&self) -> u32 {
        self.games
    }
}

/// Equivalent to [`ScoreLine::normalize`].
pub fn normalize_score(score: &ScoreLine) -> NormalizedScore {
    score.normalize()
}

fn check_args(w: f64, m: u32, n: u32) -> Result<()> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::ProbabilityOutOfRange(w));
    }
    check_counts(m, n)
}

fn check_counts(m: u32, n: u32) -> Result<()> {
    if n == 0 || m > n {
        return Err(Error::InvalidScore {
            points: f64::from(m),
            games: n,
            reason: "require 0 <= m <= n and n >= 1",
        });
    }
    Ok(())
}

/// `C(n, k)` as a float. Exact for every `n <= LOG_DOMAIN_GAMES`.
fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 1..=k {
        c = c * f64::from(n - k + i) / f64::from(i);
    }
    c
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (1..=k)
        .map(|i| f64::from(n - k + i).ln() - f64::from(i).ln())
        .sum()
}

fn mass(w: f64, m: u32, n: u32) -> f64 {
    // 0^0 = 1 at both boundaries
    if w == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if w == 1.0 {
        return if m == n { 1.0 } else { 0.0 };
    }
    if n <= LOG_DOMAIN_GAMES {
        binomial(n, m) * w.powi(m as i32) * (1.0 - w).powi((n - m) as i32)
    } else {
        let log = ln_binomial(n, m)
            + f64::from(m) * w.ln()
            + f64::from(n - m) * (-w).ln_1p();
        log.exp()
    }
}

/// Probability of scoring exactly `m` points in `n` games when each game is
/// won with probability `w`.
pub fn score_probability(w: f64, m: u32, n: u32) -> Result<f64> {
    check_args(w, m, n)?;
    Ok(mass(w, m, n))
}

/// Probability of scoring `m` points or more in `n` games.
pub fn at_least_probability(w: f64, m: u32, n: u32) -> Result<f64> {
    check_args(w, m, n)?;
    if m == 0 {
        return Ok(1.0);
    }
    let tail: f64 = (m..=n).map(|k| mass(w, k, n)).sum();
    Ok(tail.min(1.0))
}

/// `S(m/n, m, n)`: the exact-score probability at its unconstrained maximum.
pub fn peak_score_probability(m: u32, n: u32) -> Result<f64> {
    check_counts(m, n)?;
    Ok(mass(f64::from(m) / f64::from(n), m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_examples() {
        let cases = [((1.0, 1), (1, 1)), ((1.5, 2), (3, 4)), ((8.5, 10), (17, 20))];
        for ((p, g), (m, n)) in cases {
            let ns = ScoreLine::new(p, g).unwrap().normalize();
            assert_eq!((ns.points(), ns.games()), (m, n), "{p}/{g}");
        }
    }

    #[test]
    fn invalid_score_lines() {
        assert!(ScoreLine::new(0.25, 2).is_err());
        assert!(ScoreLine::new(3.0, 2).is_err());
        assert!(ScoreLine::new(-1.0, 2).is_err());
        assert!(ScoreLine::new(f64::NAN, 2).is_err());
        assert!(ScoreLine::new(0.0, 0).is_err());
        assert!(ScoreLine::new(2.5, 2).is_err());
        assert!(ScoreLine::new(2.0, 2).unwrap().is_perfect());
        assert!(ScoreLine::new(0.0, 2).unwrap().is_zero());
    }

    #[test]
    fn exact_score_examples() {
        assert!((score_probability(0.5, 1, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((score_probability(0.75, 3, 4).unwrap() - 0.421875).abs() < 1e-12);
        assert!((score_probability(0.866, 2, 2).unwrap() - 0.75).abs() < 1e-3);
    }

    #[test]
    fn at_least_examples() {
        for w in [0.0, 0.3, 1.0] {
            assert_eq!(at_least_probability(w, 0, 5).unwrap(), 1.0);
        }
        // outcomes WW, WL, LW out of four equally likely
        assert!((at_least_probability(0.5, 1, 2).unwrap() - 0.75).abs() < 1e-15);
        let w = 0.75f64.sqrt();
        assert!((at_least_probability(w, 2, 2).unwrap() - 0.75).abs() < 1e-12);
        assert!((at_least_probability(0.8660, 2, 2).unwrap() - 0.75).abs() < 1e-3);
    }

    #[test]
    fn peak_examples() {
        assert!((peak_score_probability(1, 2).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(peak_score_probability(2, 2).unwrap(), 1.0);
        assert_eq!(peak_score_probability(0, 2).unwrap(), 1.0);
        // C(20,17) 0.85^17 0.15^3, frozen from exact-integer binomial evaluation
        let p = peak_score_probability(17, 20).unwrap();
        assert!((p - 0.242_828_896_149_267_5).abs() < 1e-12, "{p}");
    }

    #[test]
    fn boundary_conventions() {
        assert_eq!(score_probability(0.0, 0, 7).unwrap(), 1.0);
        assert_eq!(score_probability(1.0, 7, 7).unwrap(), 1.0);
        assert_eq!(score_probability(0.0, 3, 7).unwrap(), 0.0);
        assert_eq!(score_probability(1.0, 3, 7).unwrap(), 0.0);
        assert_eq!(score_probability(0.0, 0, 80).unwrap(), 1.0);
        assert_eq!(score_probability(1.0, 80, 80).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(score_probability(0.5, 3, 2).is_err());
        assert!(score_probability(0.5, 0, 0).is_err());
        assert!(score_probability(-0.1, 0, 2).is_err());
        assert!(score_probability(f64::NAN, 0, 2).is_err());
        assert!(at_least_probability(1.1, 0, 2).is_err());
        assert!(peak_score_probability(3, 2).is_err());
    }

    #[test]
    fn log_domain_agrees_with_direct_products() {
        // at n = 50 the direct path is used; compare against the log path
        for m in 0..=50 {
            for w in [0.05, 0.3, 0.5, 0.77, 0.99] {
                let direct = mass(w, m, 50);
                let log = (ln_binomial(50, m)
                    + f64::from(m) * f64::ln(w)
                    + f64::from(50 - m) * f64::ln(1.0 - w))
                .exp();
                assert!((direct - log).abs() <= 1e-12 * direct.max(1e-300) + 1e-300);
            }
        }
    }

    #[test]
    fn large_n_does_not_overflow() {
        let p = score_probability(0.5, 500, 1000).unwrap();
        assert!(p.is_finite() && p > 0.02 && p < 0.03, "{p}");
        assert!(at_least_probability(0.5, 0, 1000).unwrap() == 1.0);
    }

    #[test]
    fn normalization_sums_to_one() {
        for n in 1..=60 {
            for i in 0..=10 {
                let w = f64::from(i) / 10.0;
                let total: f64 = (0..=n).map(|m| score_probability(w, m, n).unwrap()).sum();
                assert!((total - 1.0).abs() < 1e-10, "w={w} n={n} total={total}");
            }
        }
    }

    #[test]
    fn tail_matches_sum_of_masses() {
        for n in 1..=60 {
            for m in 0..=n {
                for w in [0.1, 0.45, 0.9] {
                    let tail: f64 = (m..=n).map(|k| score_probability(w, k, n).unwrap()).sum();
                    let s = at_least_probability(w, m, n).unwrap();
                    assert!((tail - s).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn peak_is_a_strict_local_maximum() {
        let eps = 1e-4;
        for n in 2..=30u32 {
            for m in 1..n {
                let c = f64::from(m) / f64::from(n);
                let s = |w| score_probability(w, m, n).unwrap();
                assert!(s(c - eps) < s(c), "{m}/{n} left");
                assert!(s(c + eps) < s(c), "{m}/{n} right");
                // second central difference
                assert!(s(c - eps) - 2.0 * s(c) + s(c + eps) < 0.0, "{m}/{n} concavity");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn normalize_preserves_ratio(half in 0u32..400, games in 1u32..200) {
            proptest::prop_assume!(half <= 2 * games);
            let s = ScoreLine::from_half_points(half, games).unwrap();
            let ns = s.normalize();
            proptest::prop_assert_eq!(
                u64::from(ns.points()) * u64::from(s.games()) * 2,
                u64::from(half) * u64::from(ns.games())
            );
            proptest::prop_assert!(ns.points() <= ns.games());
        }
    }
}
