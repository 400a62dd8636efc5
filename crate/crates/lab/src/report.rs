//! Report types produced by the experiments.

use std::path::{Path, PathBuf};

use crate::emit::{csv_table, fmt_g, svg_loglog, write_file, LogLogPlot};
use crate::error::Result;
use crate::fit::Fit;

pub trait Report: Send + std::fmt::Debug {
    fn experiment(&self) -> &'static str;

    fn csv(&self) -> String;

    fn plot(&self) -> Option<LogLogPlot> {
        None
    }

    /// Additional `(file name, contents)` pairs.
    fn extra_files(&self) -> Vec<(String, String)> {
        Vec::new()
    }

    /// False when a check failed.
    fn passed(&self) -> bool {
        true
    }

    fn summary(&self) -> String;
}

/// Writes `<experiment>.csv`, `<experiment>.svg` when there is a plot, and
/// any extra files into `dir`.
pub fn write_report(report: &dyn Report, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let csv = dir.join(format!("{}.csv", report.experiment()));
    write_file(&csv, &report.csv())?;
    written.push(csv);
    if let Some(plot) = report.plot() {
        let svg = dir.join(format!("{}.svg", report.experiment()));
        write_file(&svg, &svg_loglog(&plot))?;
        written.push(svg);
    }
    for (name, contents) in report.extra_files() {
        let path = dir.join(name);
        write_file(&path, &contents)?;
        written.push(path);
    }
    Ok(written)
}

fn fit_trailer(fit: Option<Fit>) -> Option<String> {
    fit.map(|f| format!("# slope={} r2={}", fmt_g(f.slope), fmt_g(f.r2)))
}

fn nums(values: &[f64]) -> Vec<String> {
    values.iter().map(|v| fmt_g(*v)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub s: f64,
    /// `[u - u_s]²` in the discrete seminorm.
    pub err_seminorm_sq: f64,
    pub err_l2: f64,
    /// `‖u - u_s‖²_{W^{s,2}}`.
    pub err_ws2_sq: f64,
    pub energy_gap: f64,
    /// `‖f - f_s‖_{L¹(Ω)}`.
    pub data_gap: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub rows: Vec<RateRow>,
    pub fit: Option<Fit>,
    /// `max err² / (1 - s + ‖f - f_s‖_{L¹})` over the rows.
    pub empirical_constant: f64,
}

impl RateReport {
    pub const HEADER: [&'static str; 6] = [
        "s",
        "one_minus_s",
        "err_ws2_sq",
        "err_l2",
        "energy_gap",
        "seconds",
    ];

    pub fn new(mut rows: Vec<RateRow>, min_s: f64) -> Self {
        rows.sort_by(|a, b| a.s.total_cmp(&b.s));
        let s: Vec<f64> = rows.iter().map(|r| r.s).collect();
        let e: Vec<f64> = rows.iter().map(|r| r.err_ws2_sq).collect();
        let fit = crate::fit::fit_rate(&s, &e, min_s);
        let empirical_constant = rows
            .iter()
            .map(|r| r.err_ws2_sq / (1.0 - r.s + r.data_gap))
            .fold(0.0, f64::max);
        Self {
            rows,
            fit,
            empirical_constant,
        }
    }

    pub fn slope(&self) -> f64 {
        self.fit.map_or(f64::NAN, |f| f.slope)
    }
}

impl Report for RateReport {
    fn experiment(&self) -> &'static str {
        "rates"
    }

    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                nums(&[
                    r.s,
                    1.0 - r.s,
                    r.err_ws2_sq,
                    r.err_l2,
                    r.energy_gap,
                    r.seconds,
                ])
            })
            .collect();
        let trailer = if self.rows.is_empty() {
            None
        } else {
            fit_trailer(self.fit)
        };
        csv_table(&Self::HEADER, &rows, trailer.as_deref())
    }

    fn plot(&self) -> Option<LogLogPlot> {
        Some(LogLogPlot {
            title: "squared W^{s,2} error".into(),
            x_label: "ln(1-s)".into(),
            y_label: "ln err^2".into(),
            points: self
                .rows
                .iter()
                .map(|r| ((1.0 - r.s).ln(), r.err_ws2_sq.ln()))
                .collect(),
            fit: self.fit,
        })
    }

    fn summary(&self) -> String {
        format!(
            "rates: {} points, slope {}, empirical constant {}",
            self.rows.len(),
            fmt_g(self.slope()),
            fmt_g(self.empirical_constant)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyRow {
    pub s: f64,
    pub max_residual: f64,
    pub error_bar: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub rows: Vec<ConsistencyRow>,
    pub fit: Option<Fit>,
}

impl ConsistencyReport {
    pub fn new(mut rows: Vec<ConsistencyRow>, min_s: f64) -> Self {
        rows.sort_by(|a, b| a.s.total_cmp(&b.s));
        let s: Vec<f64> = rows.iter().map(|r| r.s).collect();
        let e: Vec<f64> = rows.iter().map(|r| r.max_residual).collect();
        let fit = crate::fit::fit_rate(&s, &e, min_s);
        Self { rows, fit }
    }

    pub fn slope(&self) -> f64 {
        self.fit.map_or(f64::NAN, |f| f.slope)
    }
}

impl Report for ConsistencyReport {
    fn experiment(&self) -> &'static str {
        "consistency"
    }

    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| nums(&[r.s, 1.0 - r.s, r.max_residual, r.error_bar, r.seconds]))
            .collect();
        let trailer = if self.rows.is_empty() {
            None
        } else {
            fit_trailer(self.fit)
        };
        csv_table(
            &["s", "one_minus_s", "max_residual", "error_bar", "seconds"],
            &rows,
            trailer.as_deref(),
        )
    }

    fn plot(&self) -> Option<LogLogPlot> {
        Some(LogLogPlot {
            title: "pointwise residual".into(),
            x_label: "ln(1-s)".into(),
            y_label: "ln max residual".into(),
            points: self
                .rows
                .iter()
                .map(|r| ((1.0 - r.s).ln(), r.max_residual.ln()))
                .collect(),
            fit: self.fit,
        })
    }

    fn summary(&self) -> String {
        format!(
            "consistency: {} points, slope {}",
            self.rows.len(),
            fmt_g(self.slope())
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `value ≤ limit`.
    Upper,
    /// Passes when `value ≥ limit`.
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub bound: Bound,
    pub cases: usize,
}

impl CheckRow {
    pub fn upper(name: &str, value: f64, limit: f64, cases: usize) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            bound: Bound::Upper,
            cases,
        }
    }

    pub fn lower(name: &str, value: f64, limit: f64, cases: usize) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            bound: Bound::Lower,
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::Upper => self.value <= self.limit,
            Bound::Lower => self.value >= self.limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub experiment: &'static str,
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn row(&self, name: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

impl Report for CheckReport {
    fn experiment(&self) -> &'static str {
        self.experiment
    }

    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.name.clone(),
                    fmt_g(r.value),
                    match r.bound {
                        Bound::Upper => "<=".into(),
                        Bound::Lower => ">=".into(),
                    },
                    fmt_g(r.limit),
                    r.cases.to_string(),
                    if r.passed() {
                        "pass".into()
                    } else {
                        "FAIL".into()
                    },
                ]
            })
            .collect();
        csv_table(
            &["check", "value", "bound", "limit", "cases", "status"],
            &rows,
            None,
        )
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }

    fn summary(&self) -> String {
        let failed: Vec<&str> = self
            .rows
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.name.as_str())
            .collect();
        if failed.is_empty() {
            format!("{}: all {} checks pass", self.experiment, self.rows.len())
        } else {
            format!("{}: failed {}", self.experiment, failed.join(", "))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRow {
    pub s: f64,
    pub objective: f64,
    pub l2_norm: f64,
    /// Max-norm distance to the closed-form solution when it applies.
    pub linf_vs_exact: Option<f64>,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub rows: Vec<SolveRow>,
    pub nodes: Vec<f64>,
    /// One column of nodal values per row.
    pub solutions: Vec<Vec<f64>>,
}

impl Report for SolveReport {
    fn experiment(&self) -> &'static str {
        "solve"
    }

    fn csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                nums(&[
                    r.s,
                    r.objective,
                    r.l2_norm,
                    r.linf_vs_exact.unwrap_or(f64::NAN),
                    r.seconds,
                ])
            })
            .collect();
        csv_table(
            &["s", "objective", "l2_norm", "linf_vs_exact", "seconds"],
            &rows,
            None,
        )
    }

    fn extra_files(&self) -> Vec<(String, String)> {
        let mut header = vec!["x".to_string()];
        header.extend(self.rows.iter().map(|r| format!("u_s={}", fmt_g(r.s))));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut row = vec![fmt_g(*x)];
                row.extend(self.solutions.iter().map(|u| fmt_g(u[i])));
                row
            })
            .collect();
        vec![("solve_profiles.csv".into(), csv_table(&header, &rows, None))]
    }

    fn summary(&self) -> String {
        let worst = self
            .rows
            .iter()
            .filter_map(|r| r.linf_vs_exact)
            .fold(f64::NAN, f64::max);
        format!(
            "solve: {} values of s, max error vs closed form {}",
            self.rows.len(),
            fmt_g(worst)
        )
    }
}
