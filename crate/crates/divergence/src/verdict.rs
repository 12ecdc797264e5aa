use std::io::Write;

use schottky::SchottkyGroup;
use serde::Serialize;
use symbolic::SequenceSpec;

use crate::criterion::{criterion_table, CriterionTable};
use crate::error::DivergenceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DivergingOnAverage,
    Not,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::DivergingOnAverage => "diverging-on-average",
            Verdict::Not => "not",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Thresholds for reading finite tables. These are heuristics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoaConfig {
    /// Slopes of ln(ratio) against ln(q) at or below -s_min count as decay.
    pub s_min: f64,
    /// A tail staying at or above r_min counts as bounded below.
    pub r_min: f64,
    /// Fraction of the rows, from the end, forming the tail.
    pub tail: f64,
    /// Number of log-spaced q values per table.
    pub grid: usize,
}

impl Default for DoaConfig {
    fn default() -> Self {
        Self { s_min: 0.1, r_min: 0.5, tail: 0.25, grid: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffResult {
    pub n: u64,
    pub verdict: Verdict,
    /// Least-squares slope of ln(ratio) against ln(q) over the tail.
    pub slope: f64,
    pub tail_min: f64,
    pub tail_decreasing: bool,
    /// Set when the code has no parabolic block reaching the cut-off.
    pub note: Option<String>,
    pub table: CriterionTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoaReport {
    pub spec: String,
    pub verdict: Verdict,
    pub q_max: usize,
    pub config: DoaConfig,
    pub cutoffs: Vec<CutoffResult>,
}

/// Log-spaced integers from 1 to `q_max`.
pub fn q_grid(q_max: usize, points: usize) -> Vec<usize> {
    let q_max = q_max.max(1);
    let points = points.max(2);
    let mut out: Vec<usize> =
        (0..points).map(|j| ((q_max as f64).powf(j as f64 / (points - 1) as f64)).round() as usize).collect();
    out.dedup();
    if out.last() != Some(&q_max) {
        out.push(q_max);
    }
    out
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// Read one table against the thresholds.
pub fn judge(table: CriterionTable, config: &DoaConfig) -> CutoffResult {
    let rows = &table.rows;
    let take = ((rows.len() as f64 * config.tail).ceil() as usize).clamp(2.min(rows.len()), rows.len());
    let tail = &rows[rows.len() - take..];
    let finite = tail.iter().all(|r| r.ratio.is_finite());
    let (s, tail_min, decreasing) = if finite && !tail.is_empty() {
        let xs: Vec<f64> = tail.iter().map(|r| (r.q as f64).ln()).collect();
        let ys: Vec<f64> = tail.iter().map(|r| r.ratio.ln()).collect();
        (
            slope(&xs, &ys),
            tail.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min),
            tail.windows(2).all(|w| w[1].ratio < w[0].ratio),
        )
    } else {
        (f64::NAN, tail.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min), false)
    };
    let verdict = if s <= -config.s_min && decreasing {
        Verdict::DivergingOnAverage
    } else if tail_min >= config.r_min {
        Verdict::Not
    } else {
        Verdict::Inconclusive
    };
    CutoffResult { n: table.n, verdict, slope: s, tail_min, tail_decreasing: decreasing, note: None, table }
}

/// Heuristic reading of the criterion for each cut-off in `ns`.
///
/// A code whose parabolic exponents never reach N has no A3 coding at that
/// cut-off: the omegas swallow everything and the point is bounded radial,
/// which is recorded as "not" for that N.
pub fn doa_test(
    spec: &SequenceSpec,
    ns: &[u64],
    q_max: usize,
    group: &SchottkyGroup,
    config: &DoaConfig,
) -> Result<DoaReport, DivergenceError> {
    let grid = q_grid(q_max, config.grid);
    let mut cutoffs = Vec::with_capacity(ns.len());
    for &n in ns {
        let result = match criterion_table(spec, n, &grid, group) {
            Ok(t) => judge(t, config),
            Err(DivergenceError::InsufficientBlocks { achievable: 0, .. }) => CutoffResult {
                n,
                verdict: Verdict::Not,
                slope: f64::NAN,
                tail_min: f64::INFINITY,
                tail_decreasing: false,
                note: Some(format!("no parabolic block with |r| >= {n}")),
                table: CriterionTable { n, rows: Vec::new() },
            },
            Err(e) => return Err(e),
        };
        cutoffs.push(result);
    }
    let verdict = if cutoffs.iter().any(|c| c.verdict == Verdict::Not) {
        Verdict::Not
    } else if !cutoffs.is_empty() && cutoffs.iter().all(|c| c.verdict == Verdict::DivergingOnAverage) {
        Verdict::DivergingOnAverage
    } else {
        Verdict::Inconclusive
    };
    Ok(DoaReport { spec: spec.to_string(), verdict, q_max, config: *config, cutoffs })
}

/// Tables as CSV with columns N, q, num, den, ratio.
pub fn write_tables_csv<W: Write>(tables: &[&CriterionTable], out: W) -> Result<(), DivergenceError> {
    let err = |e: csv::Error| DivergenceError::Export(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "q", "num", "den", "ratio"]).map_err(err)?;
    for t in tables {
        for r in &t.rows {
            w.write_record([
                t.n.to_string(),
                r.q.to_string(),
                format!("{:.12}", r.num),
                format!("{:.12}", r.den),
                format!("{:.12}", r.ratio),
            ])
            .map_err(err)?;
        }
    }
    w.flush().map_err(|e| DivergenceError::Export(e.to_string()))
}

impl DoaReport {
    /// JSON with the verdicts and per-cut-off summaries; tables are left to CSV.
    pub fn to_json(&self) -> Result<String, DivergenceError> {
        let summary = serde_json::json!({
            "spec": self.spec,
            "verdict": self.verdict,
            "q_max": self.q_max,
            "config": self.config,
            "cutoffs": self.cutoffs.iter().map(|c| serde_json::json!({
                "N": c.n,
                "verdict": c.verdict,
                "slope": finite_or_null(c.slope),
                "tail_min": finite_or_null(c.tail_min),
                "tail_decreasing": c.tail_decreasing,
                "note": c.note,
            })).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&summary).map_err(|e| DivergenceError::Export(e.to_string()))
    }
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::Value::Null
    }
}
