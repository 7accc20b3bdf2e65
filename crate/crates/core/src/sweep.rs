//! Sweeps of a selection strategy over pin counts, with every bound per row.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bounds::{bound_report_with, BoundReport};
use crate::error::{Error, Result};
use crate::graph::{laplacian, Graph, PinSet};
use crate::rng;
use crate::spectra::{self, Spectrum};
use crate::strategies::{
    self, brute_force_with_budget, degree_mix_set, greedy_max_lambda1, select_betweenness,
    DEFAULT_BUDGET,
};

/// Graphs up to this size get a `brute_force_max` column by default.
pub const BRUTE_FORCE_COLUMN_MAX_N: usize = 16;

pub const COLUMNS: [&str; 8] = [
    "l",
    "q",
    "lambda1_mean",
    "lambda1_std",
    "upper_spectrum",
    "upper_kmin",
    "upper_avg_boundary",
    "lower_min_boundary",
];

#[derive(Debug, Clone, PartialEq)]
pub enum SweepStrategy {
    DegreeMix { qs: Vec<f64> },
    Betweenness,
    Greedy,
    BruteForce,
}

impl SweepStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            SweepStrategy::DegreeMix { .. } => "degree_mix",
            SweepStrategy::Betweenness => "betweenness",
            SweepStrategy::Greedy => "greedy",
            SweepStrategy::BruteForce => "brute_force",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub strategy: SweepStrategy,
    pub ls: Vec<usize>,
    pub runs: usize,
    pub seed: u64,
    /// Adds the exact `max lambda1` per row.
    pub brute_force_column: bool,
    /// Free-form description of the graph, copied into the metadata.
    pub graph_label: String,
}

/// Bound columns are means over the runs' pin sets; `lambda1_std` is the
/// population standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub l: usize,
    pub q: Option<f64>,
    pub lambda1_mean: f64,
    pub lambda1_std: f64,
    pub upper_spectrum: f64,
    pub upper_kmin: f64,
    pub upper_avg_boundary: f64,
    pub lower_min_boundary: f64,
    pub brute_force_max: Option<f64>,
}

impl SweepRow {
    /// `lower <= lambda1 <= every upper bound`, up to `tol`.
    pub fn obeys_bounds(&self, tol: f64) -> bool {
        let x = self.lambda1_mean;
        let mut ok = self.lower_min_boundary <= x + tol
            && x <= self.upper_spectrum + tol
            && x <= self.upper_kmin + tol
            && x <= self.upper_avg_boundary + tol;
        if let Some(best) = self.brute_force_max {
            ok &= x <= best + tol && best <= self.upper_spectrum + tol;
        }
        ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<SweepRow>,
}

/// `start, start + step, ...` up to and including `end`.
pub fn l_range(start: usize, end: usize, step: usize) -> Result<Vec<usize>> {
    if step == 0 {
        return Err(Error::param("step must be at least 1"));
    }
    if start == 0 {
        return Err(Error::param("pin counts start at 1"));
    }
    if start > end {
        return Err(Error::param(format!("empty l-range {start}..={end}")));
    }
    Ok((start..=end).step_by(step).collect())
}

fn population_std(values: &[f64]) -> f64 {
    let m = strategies::mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / values.len() as f64).sqrt()
}

fn row_from(l: usize, q: Option<f64>, reports: &[BoundReport]) -> SweepRow {
    let avg = |f: fn(&BoundReport) -> f64| {
        strategies::mean(&reports.iter().map(f).collect::<Vec<_>>())
    };
    let lambdas: Vec<f64> = reports.iter().map(|r| r.lambda1).collect();
    SweepRow {
        l,
        q,
        lambda1_mean: strategies::mean(&lambdas),
        lambda1_std: population_std(&lambdas),
        upper_spectrum: avg(|r| r.upper_spectrum),
        upper_kmin: avg(|r| r.upper_kmin),
        upper_avg_boundary: avg(|r| r.upper_avg_boundary),
        lower_min_boundary: avg(|r| r.lower_min_boundary),
        brute_force_max: None,
    }
}

/// Runs the sweep. Cells are evaluated in parallel; rows come back sorted
/// by `(l, q)`.
pub fn run_sweep(g: &Graph, cfg: &SweepConfig) -> Result<SweepResult> {
    let n = g.node_count();
    if cfg.ls.is_empty() {
        return Err(Error::param("empty l-range"));
    }
    if cfg.runs == 0 {
        return Err(Error::param("runs must be at least 1"));
    }
    for &l in &cfg.ls {
        strategies::check_pin_count(n, l)?;
    }
    let mut ls = cfg.ls.clone();
    ls.sort_unstable();
    ls.dedup();

    if matches!(cfg.strategy, SweepStrategy::BruteForce) || cfg.brute_force_column {
        for &l in &ls {
            let combinations = strategies::binomial(n, l);
            if combinations > DEFAULT_BUDGET {
                return Err(Error::BudgetExceeded {
                    n,
                    l,
                    combinations,
                    budget: DEFAULT_BUDGET,
                });
            }
        }
    }

    let lap_spectrum = spectra::eig_sym(&laplacian(g))?;
    let cells: Vec<(usize, Option<f64>)> = match &cfg.strategy {
        SweepStrategy::DegreeMix { qs } => {
            if qs.is_empty() {
                return Err(Error::param("empty q list"));
            }
            if let Some(q) = qs.iter().find(|q| !(0.0..=1.0).contains(*q)) {
                return Err(Error::param(format!("q = {q} outside [0, 1]")));
            }
            let mut qs = qs.clone();
            qs.sort_by(f64::total_cmp);
            qs.dedup();
            ls.iter().flat_map(|&l| qs.iter().map(move |&q| (l, Some(q)))).collect()
        }
        _ => ls.iter().map(|&l| (l, None)).collect(),
    };

    let mut rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(l, q)| evaluate_cell(g, cfg, &lap_spectrum, l, q))
        .collect::<Result<_>>()?;

    if cfg.brute_force_column {
        let best: Vec<(usize, f64)> = ls
            .par_iter()
            .map(|&l| brute_force_with_budget(g, l, DEFAULT_BUDGET).map(|r| (l, r.lambda1)))
            .collect::<Result<_>>()?;
        for row in &mut rows {
            row.brute_force_max = best.iter().find(|b| b.0 == row.l).map(|b| b.1);
        }
    }

    let metadata = vec![
        ("graph".to_string(), cfg.graph_label.clone()),
        ("nodes".to_string(), n.to_string()),
        ("edges".to_string(), g.edge_count().to_string()),
        ("strategy".to_string(), cfg.strategy.name().to_string()),
        ("seed".to_string(), cfg.seed.to_string()),
        ("runs".to_string(), cfg.runs.to_string()),
    ];
    Ok(SweepResult { metadata, rows })
}

fn evaluate_cell(
    g: &Graph,
    cfg: &SweepConfig,
    lap_spectrum: &Spectrum,
    l: usize,
    q: Option<f64>,
) -> Result<SweepRow> {
    let sets: Vec<PinSet> = match &cfg.strategy {
        SweepStrategy::DegreeMix { .. } => {
            let q = q.expect("degree mix cells carry q");
            (0..cfg.runs)
                .map(|run| degree_mix_set(g, l, q, &mut rng::stream(cfg.seed, run as u64)))
                .collect()
        }
        SweepStrategy::Betweenness => vec![select_betweenness(g, l)?.pin_set],
        SweepStrategy::Greedy => vec![greedy_max_lambda1(g, l)?.pin_set],
        SweepStrategy::BruteForce => vec![brute_force_with_budget(g, l, DEFAULT_BUDGET)?.pin_set],
    };
    let reports: Vec<BoundReport> = sets
        .iter()
        .map(|s| bound_report_with(g, s, lap_spectrum, None))
        .collect::<Result<_>>()?;
    Ok(row_from(l, q, &reports))
}

impl SweepResult {
    pub fn has_brute_force(&self) -> bool {
        self.rows.iter().any(|r| r.brute_force_max.is_some())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&COLUMNS.join(","));
        let brute = self.has_brute_force();
        if brute {
            out.push_str(",brute_force_max");
        }
        out.push('\n');
        for r in &self.rows {
            let q = r.q.map(|q| q.to_string()).unwrap_or_default();
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.l,
                q,
                r.lambda1_mean,
                r.lambda1_std,
                r.upper_spectrum,
                r.upper_kmin,
                r.upper_avg_boundary,
                r.lower_min_boundary
            );
            if brute {
                let _ = write!(out, ",{}", r.brute_force_max.map(|b| b.to_string()).unwrap_or_default());
            }
            out.push('\n');
        }
        out
    }
}

/// Reads back the output of [`SweepResult::to_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<SweepResult> {
    let mut metadata = Vec::new();
    let mut rows = Vec::new();
    let mut header: Option<bool> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        if let Some(meta) = raw.strip_prefix('#') {
            if let Some((k, v)) = meta.trim().split_once(':') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        let Some(brute) = header else {
            let expected = COLUMNS.join(",");
            header = Some(match raw.trim() {
                h if h == expected => false,
                h if h == format!("{expected},brute_force_max") => true,
                other => return Err(err(format!("unexpected header {other:?}"))),
            });
            continue;
        };
        let width = if brute { 9 } else { 8 };
        if fields.len() != width {
            return Err(err(format!("expected {width} fields, got {}", fields.len())));
        }
        let num = |i: usize| -> Result<f64> {
            fields[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| err(format!("column {}: {e}", i + 1)))
        };
        let opt = |i: usize| -> Result<Option<f64>> {
            if fields[i].trim().is_empty() {
                Ok(None)
            } else {
                num(i).map(Some)
            }
        };
        rows.push(SweepRow {
            l: fields[0]
                .trim()
                .parse()
                .map_err(|e| err(format!("column 1: {e}")))?,
            q: opt(1)?,
            lambda1_mean: num(2)?,
            lambda1_std: num(3)?,
            upper_spectrum: num(4)?,
            upper_kmin: num(5)?,
            upper_avg_boundary: num(6)?,
            lower_min_boundary: num(7)?,
            brute_force_max: if brute { opt(8)? } else { None },
        });
    }
    if header.is_none() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing header".into(),
        });
    }
    Ok(SweepResult { metadata, rows })
}
