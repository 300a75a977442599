//! Result tables for the experiment runner: fixed CSV columns
//! `level,lhs,rhs,residual,bound,seconds` and a JSON twin with metadata.

use serde::Serialize;
use std::io::Write;

#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub level: i64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub bound: Option<f64>,
    pub seconds: f64,
}

impl ResultRow {
    pub fn new(level: i64, lhs: f64, rhs: f64, bound: Option<f64>, seconds: f64) -> Self {
        ResultRow {
            level,
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
            bound,
            seconds,
        }
    }

    /// A row with a bound passes when the residual respects it.
    pub fn within_bound(&self) -> bool {
        match self.bound {
            Some(b) => self.residual <= b,
            None => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentTable {
    pub id: String,
    pub seed: u64,
    pub rows: Vec<ResultRow>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl ExperimentTable {
    pub fn new(id: &str, seed: u64) -> Self {
        ExperimentTable {
            id: id.to_string(),
            seed,
            rows: vec![],
            pass: true,
            notes: vec![],
        }
    }

    pub fn push(&mut self, row: ResultRow) {
        if !row.within_bound() {
            self.pass = false;
        }
        self.rows.push(row);
    }

    pub fn push_checked(&mut self, row: ResultRow, ok: bool) {
        if !ok {
            self.pass = false;
        }
        self.push(row);
    }

    pub fn require(&mut self, ok: bool, note: &str) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("FAIL: {}", note));
        }
    }

    pub fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "level,lhs,rhs,residual,bound,seconds")?;
        for r in &self.rows {
            let bound = r.bound.map(|b| b.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{:.3}",
                r.level, r.lhs, r.rhs, r.residual, bound, r.seconds
            )?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("table serializes");
        writeln!(out, "{}", text)
    }
}

/// Seconds since a start instant, for the wall-time column.
pub fn elapsed_secs(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_exact_columns() {
        let mut t = ExperimentTable::new("E0", 0);
        t.push(ResultRow::new(3, 1.0, 1.0, Some(0.5), 0.0));
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "level,lhs,rhs,residual,bound,seconds");
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[0], "3");
    }

    #[test]
    fn bound_violation_fails_table() {
        let mut t = ExperimentTable::new("E0", 0);
        t.push(ResultRow::new(0, 1.0, 0.0, Some(0.5), 0.0));
        assert!(!t.pass);
    }
}
