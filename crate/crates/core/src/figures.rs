//! Plot data: TPR against PR^e on the interior grid, and the peak
//! exact-score probability `f(m/n)` on the full grid.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::error::Result;
use crate::score::{peak_score_probability, ScoreLine};
use crate::systems::{estimated_performance_rating, tpr, PerformanceQuery};

pub const DEFAULT_RA: f64 = 2700.0;
pub const DEFAULT_NMAX: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalencePoint {
    pub m: u32,
    pub n: u32,
    pub tpr: f64,
    pub pre: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPoint {
    pub m: u32,
    pub n: u32,
    pub ratio: f64,
    pub f: f64,
}

/// TPR and PR^e for every `0 < m < n <= nmax`, ordered by `n` then `m`.
pub fn equivalence_grid(ra: f64, nmax: u32) -> Result<Vec<EquivalencePoint>> {
    let mut out = Vec::new();
    for n in 2..=nmax {
        for m in 1..n {
            let score = ScoreLine::new(f64::from(m), n)?;
            let report = estimated_performance_rating(&PerformanceQuery::new(ra, score))?;
            out.push(EquivalencePoint {
                m,
                n,
                tpr: tpr(ra, score)?,
                pre: report.pre,
            });
        }
    }
    Ok(out)
}

/// `f(m/n)` for every `0 <= m <= n <= nmax`.
pub fn peak_grid(nmax: u32) -> Result<Vec<PeakPoint>> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for m in 0..=n {
            out.push(PeakPoint {
                m,
                n,
                ratio: f64::from(m) / f64::from(n),
                f: peak_score_probability(m, n)?,
            });
        }
    }
    Ok(out)
}

pub fn equivalence_csv(points: &[EquivalencePoint]) -> String {
    let mut s = String::from("m,n,tpr,pre\n");
    for p in points {
        let _ = writeln!(s, "{},{},{},{}", p.m, p.n, p.tpr, p.pre);
    }
    s
}

pub fn peak_csv(points: &[PeakPoint]) -> String {
    let mut s = String::from("m,n,ratio,f\n");
    for p in points {
        let _ = writeln!(s, "{},{},{},{}", p.m, p.n, p.ratio, p.f);
    }
    s
}

/// Writes `fig1.csv` and `fig2.csv` into `dir`, creating it if needed.
pub fn write_figures(dir: &Path, ra: f64, nmax: u32) -> io::Result<()> {
    let invalid = |e: crate::Error| io::Error::new(io::ErrorKind::InvalidInput, e);
    let fig1 = equivalence_grid(ra, nmax).map_err(invalid)?;
    let fig2 = peak_grid(nmax).map_err(invalid)?;
    fs::create_dir_all(dir)?;
    fs::write(dir.join("fig1.csv"), equivalence_csv(&fig1))?;
    fs::write(dir.join("fig2.csv"), peak_csv(&fig2))?;
    Ok(())
}
