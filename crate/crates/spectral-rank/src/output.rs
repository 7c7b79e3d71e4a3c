//! Ranked output assembly and rendering. One table shape serves every
//! method: a label column plus one or more named score columns, sorted by
//! the first score column descending with ties broken by label (byte
//! order), so ranks are contiguous and deterministic.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::Result;

#[derive(Debug, Clone)]
pub struct RankedRow {
    pub rank: usize,
    pub label: String,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RankedOutput {
    pub method: String,
    /// Parameter echo; re-running with these values reproduces the output
    /// bit for bit on deterministic methods.
    pub params: Map<String, Value>,
    pub n: usize,
    pub m: usize,
    pub iterations: Option<u64>,
    pub residual: Option<f64>,
    pub eigenvalue: Option<f64>,
    pub converged: Option<bool>,
    pub warnings: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<RankedRow>,
}

impl RankedOutput {
    /// Builds the ranked table from per-node score columns. Sorting is by
    /// the first column, descending, ties by label ascending; rank values
    /// are 1-based and contiguous.
    pub fn rank(
        method: &str,
        params: Map<String, Value>,
        labels: &[String],
        columns: Vec<&'static str>,
        score_columns: &[Vec<f64>],
        m: usize,
    ) -> Self {
        let n = labels.len();
        let mut rows: Vec<RankedRow> = (0..n)
            .map(|i| RankedRow {
                rank: 0,
                label: labels[i].clone(),
                scores: score_columns.iter().map(|c| c[i]).collect(),
            })
            .collect();
        rows.sort_by(|a, b| {
            b.scores[0]
                .total_cmp(&a.scores[0])
                .then_with(|| a.label.cmp(&b.label))
        });
        for (i, row) in rows.iter_mut().enumerate() {
            row.rank = i + 1;
        }
        RankedOutput {
            method: method.to_string(),
            params,
            n,
            m,
            iterations: None,
            residual: None,
            eigenvalue: None,
            converged: None,
            warnings: Vec::new(),
            columns,
            rows,
        }
    }

    pub fn with_report(mut self, report: &crate::solver::SolveReport) -> Self {
        self.iterations = Some(report.iterations as u64);
        self.residual = Some(report.residual);
        self.eigenvalue = Some(report.eigenvalue_estimate);
        self.converged = Some(report.converged);
        self
    }

    /// Multiplies displayed scores by 100 (display-only convention used by
    /// figure-style listings).
    pub fn scale_100(&mut self) {
        for row in &mut self.rows {
            for s in &mut row.scores {
                *s *= 100.0;
            }
        }
    }

    pub fn write_tsv<W: Write>(&self, out: &mut W) -> Result<()> {
        let w = |e: std::io::Error| crate::Error::InvalidInput(format!("write failed: {e}"));
        writeln!(out, "# method\t{}", self.method).map_err(w)?;
        for (k, v) in &self.params {
            let rendered = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            writeln!(out, "# {k}\t{rendered}").map_err(w)?;
        }
        writeln!(out, "# n\t{}", self.n).map_err(w)?;
        writeln!(out, "# m\t{}", self.m).map_err(w)?;
        if let Some(i) = self.iterations {
            writeln!(out, "# iterations\t{i}").map_err(w)?;
        }
        if let Some(r) = self.residual {
            writeln!(out, "# residual\t{}", fmt_score(r)).map_err(w)?;
        }
        if let Some(e) = self.eigenvalue {
            writeln!(out, "# eigenvalue\t{}", fmt_score(e)).map_err(w)?;
        }
        if let Some(c) = self.converged {
            writeln!(out, "# converged\t{c}").map_err(w)?;
        }
        for warning in &self.warnings {
            writeln!(out, "# warning\t{warning}").map_err(w)?;
        }
        writeln!(out, "# rank\tlabel\t{}", self.columns.join("\t")).map_err(w)?;
        for row in &self.rows {
            let scores: Vec<String> = row.scores.iter().map(|&s| fmt_score(s)).collect();
            writeln!(out, "{}\t{}\t{}", row.rank, row.label, scores.join("\t")).map_err(w)?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: &mut W) -> Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                obj.insert("rank".into(), json!(row.rank));
                obj.insert("label".into(), json!(row.label));
                for (name, score) in self.columns.iter().zip(&row.scores) {
                    obj.insert((*name).into(), json!(score));
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "method": self.method,
            "params": Value::Object(self.params.clone()),
            "n": self.n,
            "m": self.m,
            "iterations": self.iterations,
            "residual": self.residual,
            "eigenvalue": self.eigenvalue,
            "converged": self.converged,
            "warnings": self.warnings,
            "rows": rows,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)
            .map_err(|e| crate::Error::InvalidInput(format!("write failed: {e}")))?;
        writeln!(out).map_err(|e| crate::Error::InvalidInput(format!("write failed: {e}")))?;
        Ok(())
    }
}

/// 12 significant digits, scientific notation.
pub fn fmt_score(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.11e}")
    }
}
