//! CSV tables with `#` comment headers, and ordered parallel trials.

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }

    /// Parses CSV text, collecting leading `#` lines as comments.
    pub fn from_csv(text: &str) -> Result<Table> {
        let mut comments = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.trim_start().to_string());
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header.is_empty() || header.iter().all(String::is_empty) {
            return Err(Error::Usage("CSV has no header".into()));
        }
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec?.iter().map(str::to_string).collect());
        }
        Ok(Table {
            comments,
            header,
            rows,
        })
    }
}

/// Fraction formatted with six decimals, so output bytes do not depend on
/// float printing of long expansions.
pub fn frac(count: usize, total: usize) -> String {
    if total == 0 {
        return String::from("nan");
    }
    format!("{:.6}", count as f64 / total as f64)
}

pub fn float(x: f64) -> String {
    format!("{x:.6}")
}

/// Runs `f(0..count)` on `threads` workers (0 = all cores) and returns the
/// results in index order.
pub fn run_trials<T, F>(threads: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}
