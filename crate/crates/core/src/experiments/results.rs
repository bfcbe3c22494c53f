//! Result tables and their CSV form.
//!
//! ```text
//! # ris-otfs 0.1.0
//! # key: value
//! # ---- config ----
//! # scenario = "gain_sweep"
//! # ...
//! # ---- end config ----
//! scenario,x_name,x_value,policy,metric,value,stderr
//! gain_sweep,elements,4,optimized,gain,3.1,0.02
//! ```
//!
//! Numbers use the shortest representation that parses back to the same `f64`.

use std::io::Write;
use std::path::Path;

use super::config::{parse_config, ExperimentConfig};
use crate::error::{Error, Result};

pub const HEADER: [&str; 7] = ["scenario", "x_name", "x_value", "policy", "metric", "value", "stderr"];
const CONFIG_BEGIN: &str = "---- config ----";
const CONFIG_END: &str = "---- end config ----";

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scenario: String,
    pub x_name: String,
    pub x_value: f64,
    pub policy: String,
    pub metric: String,
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    /// `(key, value)` pairs written as `# key: value`.
    pub metadata: Vec<(String, String)>,
    /// Config echoed inside the metadata block.
    pub config: Option<ExperimentConfig>,
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn new(config: &ExperimentConfig) -> Self {
        Self {
            metadata: vec![
                ("code_version".into(), format!("ris-otfs {}", env!("CARGO_PKG_VERSION"))),
                ("scenario".into(), config.scenario.to_string()),
                ("master_seed".into(), config.master_seed.to_string()),
                ("snr_definition".into(), "SNR = 1/sigma0^2, unit-energy constellation".into()),
            ],
            config: Some(config.clone()),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, x_name: &str, x_value: f64, policy: &str, metric: &str, value: f64, stderr: f64) {
        assert!(stderr >= 0.0 || stderr.is_nan(), "negative stderr for {metric}");
        let scenario = self.config.as_ref().map(|c| c.scenario.to_string()).unwrap_or_default();
        self.rows.push(ResultRow {
            scenario,
            x_name: x_name.into(),
            x_value,
            policy: policy.into(),
            metric: metric.into(),
            value,
            stderr,
        });
    }

    /// Orders rows by independent variable, then policy, then metric.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.x_value
                .total_cmp(&b.x_value)
                .then_with(|| a.policy.cmp(&b.policy))
                .then_with(|| a.metric.cmp(&b.metric))
                .then_with(|| a.x_name.cmp(&b.x_name))
        });
    }

    /// The row for `(x, policy, metric)`, if any.
    pub fn find(&self, x_value: f64, policy: &str, metric: &str) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.x_value == x_value && r.policy == policy && r.metric == metric)
    }

    /// Rows of one `(policy, metric)` series in `x` order.
    pub fn series(&self, policy: &str, metric: &str) -> Vec<&ResultRow> {
        let mut rows: Vec<_> = self.rows.iter().filter(|r| r.policy == policy && r.metric == metric).collect();
        rows.sort_by(|a, b| a.x_value.total_cmp(&b.x_value));
        rows
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let mut sorted = self.clone();
        sorted.sort();
        for (k, v) in &sorted.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        if let Some(cfg) = &sorted.config {
            writeln!(out, "# {CONFIG_BEGIN}")?;
            for line in cfg.to_toml().lines() {
                if line.is_empty() {
                    writeln!(out, "#")?;
                } else {
                    writeln!(out, "# {line}")?;
                }
            }
            writeln!(out, "# {CONFIG_END}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(HEADER).map_err(csv_error)?;
        for r in &sorted.rows {
            w.write_record([
                r.scenario.as_str(),
                r.x_name.as_str(),
                &r.x_value.to_string(),
                r.policy.as_str(),
                r.metric.as_str(),
                &r.value.to_string(),
                &r.stderr.to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes `table` as CSV to `path`.
pub fn emit_results(table: &ResultTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

/// Recovers the echoed config from a CSV produced by [`ResultTable::write_csv`].
pub fn config_from_csv(text: &str) -> Result<ExperimentConfig> {
    let mut inside = false;
    let mut doc = String::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        let body = line.strip_prefix('#').unwrap_or_default();
        let body = body.strip_prefix(' ').unwrap_or(body);
        match body {
            CONFIG_BEGIN => inside = true,
            CONFIG_END => return parse_config(&doc),
            _ if inside => {
                doc.push_str(body);
                doc.push('\n');
            }
            _ => {}
        }
    }
    Err(Error::Parse { line: 0, message: "no config block in metadata".into() })
}

/// Parses the data rows of a CSV produced by [`ResultTable::write_csv`].
pub fn read_rows(text: &str) -> Result<Vec<ResultRow>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::Parse { line: 0, message: format!("unexpected header {header:?}") });
    }
    let num = |s: &str, line| s.parse::<f64>().map_err(|e| Error::Parse { line, message: format!("`{s}`: {e}") });
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let line = i + 2;
        rows.push(ResultRow {
            scenario: rec[0].to_string(),
            x_name: rec[1].to_string(),
            x_value: num(&rec[2], line)?,
            policy: rec[3].to_string(),
            metric: rec[4].to_string(),
            value: num(&rec[5], line)?,
            stderr: num(&rec[6], line)?,
        });
    }
    Ok(rows)
}
