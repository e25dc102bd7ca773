//! Report rows and their JSON, CSV, and plain-table renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Result;
use crate::ingest::{build_query, QuerySlice};
use crate::systems::{estimated_performance_rating, Objective, PerformanceReport};

/// One output line. Ratings are rounded half away from zero; `ra` is kept
/// exact next to its rounded form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub player: Option<String>,
    pub event: Option<String>,
    pub ra: f64,
    #[serde(skip)]
    pub ra_rounded: i64,
    pub m: f64,
    pub n: u32,
    pub t: f64,
    /// Rounded to four decimals.
    pub w_star: f64,
    /// Rounded to two decimals.
    pub s_at_w_star: f64,
    pub tpr: Option<i64>,
    pub fpr: i64,
    pub pre: i64,
}

fn round_to(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}

impl ReportRow {
    pub fn new(player: Option<String>, event: Option<String>, report: &PerformanceReport) -> Self {
        let q = &report.query;
        Self {
            player,
            event,
            ra: q.ra,
            ra_rounded: q.ra.round() as i64,
            m: q.score.points(),
            n: q.score.games(),
            t: q.threshold,
            w_star: round_to(report.w_star, 4),
            s_at_w_star: round_to(report.s_at_w_star, 2),
            tpr: report.tpr.map(|r| r.round() as i64),
            fpr: report.fpr.round() as i64,
            pre: report.pre.round() as i64,
        }
    }

    fn cells(&self) -> [String; 12] {
        [
            self.player.clone().unwrap_or_default(),
            self.event.clone().unwrap_or_default(),
            self.ra.to_string(),
            self.ra_rounded.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.t.to_string(),
            format!("{:.4}", self.w_star),
            format!("{:.2}", self.s_at_w_star),
            self.tpr.map(|r| r.to_string()).unwrap_or_default(),
            self.fpr.to_string(),
            self.pre.to_string(),
        ]
    }
}

pub const HEADERS: [&str; 12] = [
    "player",
    "event",
    "ra",
    "ra_rounded",
    "m",
    "n",
    "t",
    "w_star",
    "s_at_w_star",
    "tpr",
    "fpr",
    "pre",
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format {other:?}, expected json, csv or table")),
        }
    }
}

/// Renders a single row; JSON yields one object rather than an array.
pub fn render_row(row: &ReportRow, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(row).expect("rows always serialize");
            s.push('\n');
            s
        }
        _ => render_rows(std::slice::from_ref(row), format),
    }
}

pub fn render_rows(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADERS).expect("in-memory write");
            for row in rows {
                w.write_record(row.cells()).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        Format::Table => {
            let body: Vec<[String; 12]> = rows
                .iter()
                .map(|r| {
                    let mut c = r.cells();
                    if r.tpr.is_none() {
                        c[9] = "N/A".into();
                    }
                    c
                })
                .collect();
            let header = HEADERS.map(String::from);
            let widths: Vec<usize> = (0..12)
                .map(|i| {
                    body.iter()
                        .chain(std::iter::once(&header))
                        .map(|c| c[i].chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut out = String::new();
            for line in std::iter::once(&header).chain(&body) {
                let cells: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .enumerate()
                    .map(|(i, (c, &w))| {
                        // text columns left aligned, numbers right aligned
                        if i < 2 {
                            format!("{c:<w$}")
                        } else {
                            format!("{c:>w$}")
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
            out
        }
    }
}

/// Evaluates every slice and returns rows ordered by PR^e, best first. Ties
/// keep input order.
pub fn rank_slices(slices: &[QuerySlice], threshold: f64, objective: Objective) -> Result<Vec<ReportRow>> {
    let mut reports = Vec::with_capacity(slices.len());
    for slice in slices {
        let q = build_query(slice, threshold, objective)?;
        reports.push((slice, estimated_performance_rating(&q)?));
    }
    reports.sort_by(|a, b| b.1.pre.total_cmp(&a.1.pre));
    Ok(reports
        .iter()
        .map(|(slice, r)| ReportRow::new(Some(slice.player().to_owned()), Some(slice.event_label()), r))
        .collect())
}
