use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ScenarioConfig;
use crate::numeric::fmt17;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => fmt17(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Int(b as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// A CSV body; written as `<name>.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::render))?;
        }
        w.into_inner().map_err(|e| Error::Io(e.into_error()))
    }

    /// Float column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        self.rows
            .iter()
            .map(|r| match &r[i] {
                Cell::Float(x) => Some(*x),
                Cell::Int(k) => Some(*k as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }
}

/// `x, y` pairs for external plotting, written to `plotdata/<name>.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSeries {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PlotSeries {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&self.name, &["x", "y"]);
        for (x, y) in self.x.iter().zip(&self.y) {
            t.push(vec![(*x).into(), (*y).into()]);
        }
        t
    }
}

/// A declared threshold and what was measured against it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    /// `"<"`, `"<="`, `">"`, `">="` or `"=="`
    pub relation: String,
    pub passed: bool,
}

impl Check {
    pub fn less(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, relation: "<".into(), passed: value < threshold }
    }

    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, relation: "<=".into(), passed: value <= threshold }
    }

    pub fn greater(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, relation: ">".into(), passed: value > threshold }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), value, threshold, relation: ">=".into(), passed: value >= threshold }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        let v = ok as i64 as f64;
        Check { name: name.into(), value: v, threshold: 1.0, relation: "==".into(), passed: ok }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub config: ScenarioConfig,
    pub summary: serde_json::Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub tables: Vec<Table>,
    pub plots: Vec<PlotSeries>,
    pub timings: Timings,
}

impl ScenarioReport {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    /// `report.json`, one CSV per table and `plotdata/*.csv`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir.join("plotdata"))?;
        #[derive(Serialize)]
        struct JsonReport<'a> {
            scenario: &'a str,
            config: &'a ScenarioConfig,
            summary: &'a serde_json::Value,
            checks: &'a [Check],
            passed: bool,
            csv: Vec<String>,
            timings: &'a Timings,
        }
        let json = JsonReport {
            scenario: &self.scenario,
            config: &self.config,
            summary: &self.summary,
            checks: &self.checks,
            passed: self.passed,
            csv: self.tables.iter().map(|t| format!("{}.csv", t.name)).collect(),
            timings: &self.timings,
        };
        std::fs::write(dir.join("report.json"), serde_json::to_vec_pretty(&json)?)?;
        for t in &self.tables {
            std::fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv()?)?;
        }
        for p in &self.plots {
            std::fs::write(dir.join("plotdata").join(format!("{}.csv", p.name)), p.to_table().to_csv()?)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_fixed_format() {
        let mut t = Table::new("t", &["n", "x"]);
        t.push(vec![3usize.into(), 0.1.into()]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "n,x\n3,1.0000000000000001e-1\n");
        assert_eq!(t.column("x"), Some(vec![0.1]));
    }

    #[test]
    fn check_relations() {
        assert!(Check::less("a", 1.0, 2.0).passed);
        assert!(!Check::less("a", 2.0, 2.0).passed);
        assert!(Check::at_most("a", 2.0, 2.0).passed);
        assert!(!Check::greater("a", 2.0, 2.0).passed);
        assert!(Check::at_least("a", 2.0, 2.0).passed);
        assert!(!Check::holds("a", false).passed);
    }
}
