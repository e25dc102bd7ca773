//! The three performance ratings: TPR, FPR, and the estimated performance
//! rating PR^e.
//!
//! PR^e picks the win probability `w*` that makes the achieved score as
//! likely as possible while keeping that likelihood at or below a threshold
//! `t`, then converts `w*` back into a rating against the opponents' average.
//! For interior scores the cap never binds (the peak mass is at most one half
//! once `n >= 2`) and `w* = m/n`, which is exactly the TPR. For perfect and
//! zero scores the cap always binds and gives a finite rating.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elo::rating_for_win_probability;
use crate::error::{finite, Error, Result};
use crate::score::{at_least_probability, peak_score_probability, score_probability, ScoreLine};
use crate::solver::bisection_root;

pub const DEFAULT_THRESHOLD: f64 = 0.75;

/// FIDE rating differences `dp`, indexed by percentage score in hundredths
/// (index 0 is a 0% score, index 100 a perfect score).
pub const DP_TABLE: [i32; 101] = [
    -800, -677, -589, -538, -501, -470, -444, -422, -401, -383, // .00 - .09
    -366, -351, -336, -322, -309, -296, -284, -273, -262, -251, // .10 - .19
    -240, -230, -220, -211, -202, -193, -184, -175, -166, -158, // .20 - .29
    -149, -141, -133, -125, -117, -110, -102, -95, -87, -80, // .30 - .39
    -72, -65, -57, -50, -43, -36, -29, -21, -14, -7, // .40 - .49
    0, 7, 14, 21, 29, 36, 43, 50, 57, 65, // .50 - .59
    72, 80, 87, 95, 102, 110, 117, 125, 133, 141, // .60 - .69
    149, 158, 166, 175, 184, 193, 202, 211, 220, 230, // .70 - .79
    240, 251, 262, 273, 284, 296, 309, 322, 336, 351, // .80 - .89
    366, 383, 401, 422, 444, 470, 501, 538, 589, 677, // .90 - .99
    800,
];

/// Which probability the optimiser maximises.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// Probability of scoring exactly `m` points.
    #[default]
    ExactScore,
    /// Probability of scoring at least `m` points.
    AtLeast,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::ExactScore => "exact",
            Objective::AtLeast => "at-least",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" | "exact-score" => Ok(Objective::ExactScore),
            "at-least" => Ok(Objective::AtLeast),
            other => Err(format!("unknown objective {other:?}, expected exact or at-least")),
        }
    }
}

/// Which root to take when the cap binds on both sides of an interior peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSide {
    Lower,
    Upper,
}

/// Solution of the capped maximisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub w: f64,
    /// Whether the probability cap is active at `w`.
    pub binding: bool,
}

fn check_threshold(t: f64) -> Result<f64> {
    if t.is_finite() && t > 0.0 && t < 1.0 {
        Ok(t)
    } else {
        Err(Error::ThresholdOutOfRange(t))
    }
}

/// Tournament performance rating: the rating whose expected score against
/// `ra` equals the achieved fraction `m/n`.
///
/// ```
/// use perfrating::{score::ScoreLine, systems::tpr};
///
/// let caruana = tpr(2802.0, ScoreLine::new(8.5, 10).unwrap()).unwrap();
/// assert_eq!(caruana.round(), 3103.0);
/// assert!(tpr(2700.0, ScoreLine::new(2.0, 2).unwrap()).is_err());
/// ```
pub fn tpr(ra: f64, score: ScoreLine) -> Result<f64> {
    let ra = finite("opponent rating", ra)?;
    if score.is_zero() || score.is_perfect() {
        return Err(Error::UndefinedTpr {
            points: score.points(),
            games: score.games(),
        });
    }
    let m = f64::from(score.half_points());
    let n = 2.0 * f64::from(score.games());
    Ok(ra - 400.0 * (n / m - 1.0).log10())
}

/// Looks up `dp` for a percentage score `ps` in `[0, 1]`, rounded to the
/// nearest hundredth.
pub fn dp_lookup(ps: f64) -> Result<i32> {
    if !(0.0..=1.0).contains(&ps) {
        return Err(Error::PercentageOutOfRange(ps));
    }
    Ok(DP_TABLE[(ps * 100.0).round() as usize])
}

/// Percentage score in hundredths, rounded half away from zero on the exact
/// fraction.
pub fn percentage_hundredths(score: ScoreLine) -> u32 {
    let half = u64::from(score.half_points());
    let games = u64::from(score.games());
    // round(100 * half / (2 * games))
    ((100 * half + games) / (2 * games)) as u32
}

/// FIDE performance rating `ra + dp(ps)`.
pub fn fpr(ra: f64, score: ScoreLine) -> Result<f64> {
    let ra = finite("opponent rating", ra)?;
    Ok(ra + f64::from(DP_TABLE[percentage_hundredths(score) as usize]))
}

/// Maximises the objective over `w` in `[0, 1]` subject to the objective not
/// exceeding `t`. `m` and `n` must already be integer-normalized.
///
/// The exact-score closed forms:
///
/// | score        | `w*`           | cap binds |
/// |--------------|----------------|-----------|
/// | `m = n`      | `t^(1/n)`      | yes       |
/// | `m = 0`      | `1 - t^(1/n)`  | yes       |
/// | `0 < m < n`  | `m / n`        | no, when `S(m/n) <= t` |
///
/// An interior score whose peak mass exceeds `t` has two roots flanking the
/// peak; that case needs `side` and otherwise fails with
/// [`Error::AmbiguousArgmax`]. The at-least objective is nondecreasing in `w`
/// and is solved by bisection.
pub fn optimal_win_probability(
    m: u32,
    n: u32,
    t: f64,
    objective: Objective,
    side: Option<RootSide>,
) -> Result<Optimum> {
    let t = check_threshold(t)?;
    let peak = peak_score_probability(m, n)?;
    let inv_n = 1.0 / f64::from(n);

    match objective {
        Objective::ExactScore if m == n => Ok(Optimum {
            w: t.powf(inv_n),
            binding: true,
        }),
        Objective::ExactScore if m == 0 => Ok(Optimum {
            w: 1.0 - t.powf(inv_n),
            binding: true,
        }),
        Objective::ExactScore if peak <= t => Ok(Optimum {
            w: f64::from(m) / f64::from(n),
            binding: false,
        }),
        Objective::ExactScore => {
            let centre = f64::from(m) / f64::from(n);
            let f = |w| score_probability(w, m, n).unwrap_or(f64::NAN);
            let w = match side {
                Some(RootSide::Lower) => bisection_root(f, t, 0.0, centre)?,
                Some(RootSide::Upper) => bisection_root(f, t, centre, 1.0)?,
                None => {
                    return Err(Error::AmbiguousArgmax {
                        m,
                        n,
                        peak,
                        threshold: t,
                    })
                }
            };
            Ok(Optimum { w, binding: true })
        }
        Objective::AtLeast if m == 0 => Err(Error::Infeasible { m, n }),
        Objective::AtLeast => {
            let f = |w| at_least_probability(w, m, n).unwrap_or(f64::NAN);
            let w = bisection_root(f, t, 0.0, 1.0)?;
            Ok(Optimum { w, binding: true })
        }
    }
}

/// Input to [`estimated_performance_rating`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerformanceQuery {
    /// Average opponent rating.
    pub ra: f64,
    pub score: ScoreLine,
    pub threshold: f64,
    pub objective: Objective,
    pub side: Option<RootSide>,
}

impl PerformanceQuery {
    /// Query with the default threshold of 0.75 and the exact-score objective.
    pub fn new(ra: f64, score: ScoreLine) -> Self {
        Self {
            ra,
            score,
            threshold: DEFAULT_THRESHOLD,
            objective: Objective::ExactScore,
            side: None,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_objective(mut self, objective: Objective) -> Self {
        self.objective = objective;
        self
    }

    pub fn with_side(mut self, side: RootSide) -> Self {
        self.side = Some(side);
        self
    }

    pub fn validate(&self) -> Result<()> {
        finite("opponent rating", self.ra)?;
        check_threshold(self.threshold)?;
        Ok(())
    }
}

/// All three ratings for one query, unrounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceReport {
    pub query: PerformanceQuery,
    /// Integer-normalized points and games the optimiser worked on.
    pub normalized: (u32, u32),
    pub w_star: f64,
    /// Objective value at `w_star` on the normalized score: `S` for the
    /// exact-score objective, `S̄` for at-least.
    pub s_at_w_star: f64,
    /// `None` for zero and perfect scores.
    pub tpr: Option<f64>,
    pub fpr: f64,
    pub pre: f64,
    pub constraint_binding: bool,
}

/// Computes PR^e together with TPR and FPR.
///
/// ```
/// use perfrating::{score::ScoreLine, systems::{estimated_performance_rating, PerformanceQuery}};
///
/// let q = PerformanceQuery::new(2593.0, ScoreLine::new(11.0, 11).unwrap());
/// let report = estimated_performance_rating(&q).unwrap();
/// assert_eq!(report.pre.round(), 3224.0);
/// assert_eq!(report.tpr, None);
/// assert_eq!(report.fpr, 3393.0);
/// ```
pub fn estimated_performance_rating(q: &PerformanceQuery) -> Result<PerformanceReport> {
    q.validate()?;
    let ns = q.score.normalize();
    let (m, n) = (ns.points(), ns.games());
    let opt = optimal_win_probability(m, n, q.threshold, q.objective, q.side)?;
    let s_at_w_star = match q.objective {
        Objective::ExactScore => score_probability(opt.w, m, n)?,
        Objective::AtLeast => at_least_probability(opt.w, m, n)?,
    };
    let tpr = match tpr(q.ra, q.score) {
        Ok(r) => Some(r),
        Err(Error::UndefinedTpr { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PerformanceReport {
        query: *q,
        normalized: (m, n),
        w_star: opt.w,
        s_at_w_star,
        tpr,
        fpr: fpr(q.ra, q.score)?,
        pre: rating_for_win_probability(opt.w, q.ra)?,
        constraint_binding: opt.binding,
    })
}
