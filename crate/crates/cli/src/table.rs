//! Result tables in markdown or CSV, with the fixed cell formats used by the
//! experiment suite: evaluation counts as `N (d)` and errors as percentages
//! with two decimals.

use crate::config::OutputFormat;
use crate::noise::NoiseCell;
use crate::runner::MinEvalOutcome;

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<String>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let widths: Vec<usize> = self
            .headers
            .iter()
            .enumerate()
            .map(|(j, h)| {
                self.rows
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(h.len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let fmt_row = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{:w$}", c, w = w))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut out = fmt_row(&self.headers);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
        for row in &self.rows {
            out.push_str(&fmt_row(row));
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Markdown => self.to_markdown(),
        }
    }
}

/// `5 (4)` / `6` / `N. A.` / `not recovered`.
pub fn format_min_evals(outcome: &MinEvalOutcome) -> String {
    match outcome {
        MinEvalOutcome::Recovered {
            evaluations,
            degree: Some(d),
        } => format!("{} ({})", evaluations, d),
        MinEvalOutcome::Recovered {
            evaluations,
            degree: None,
        } => format!("{}", evaluations),
        MinEvalOutcome::NotApplicable => "N. A.".to_string(),
        MinEvalOutcome::NotRecovered => "not recovered".to_string(),
    }
}

/// `1.58% ± 0.32%` (mean with standard deviation) or `N. A.`.
pub fn format_noise_cell(cell: &NoiseCell) -> String {
    match cell {
        NoiseCell::Stats(s) => format!("{:.2}% ± {:.2}%", s.mean, s.std),
        NoiseCell::NotApplicable => "N. A.".to_string(),
    }
}
