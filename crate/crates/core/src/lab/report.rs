use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use super::config::ConfigEcho;
use super::runners::{BoundsSummary, ExperimentSummary, SpectrumSummary};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?} (json | csv)"))),
        }
    }
}

/// One result record, written as a JSON line or as long-form CSV rows.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Experiment(ExperimentSummary),
    Spectrum(SpectrumSummary),
    Bounds(BoundsSummary),
}

impl Report {
    pub fn config(&self) -> &ConfigEcho {
        match self {
            Report::Experiment(s) => &s.config,
            Report::Spectrum(s) => &s.config,
            Report::Bounds(s) => &s.config,
        }
    }

    pub fn violations(&self) -> usize {
        match self {
            Report::Experiment(s) => s.violations,
            _ => 0,
        }
    }

    /// `(metric, value)` pairs for every scalar outside the config echo.
    /// Nested fields are joined with `.`, array elements by index.
    pub fn metrics(&self) -> Vec<(String, String)> {
        let mut value = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(map) = &mut value {
            map.remove("config");
        }
        let mut out = Vec::new();
        flatten("", &value, &mut out);
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn write_json_lines<W: Write>(out: &mut W, reports: &[Report]) -> Result<()> {
    for r in reports {
        let line = serde_json::to_string(r).map_err(|e| Error::Invariant(e.to_string()))?;
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(out: W, reports: &[Report]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let header: Vec<&str> = ConfigEcho::CSV_COLUMNS
        .iter()
        .copied()
        .chain(["metric", "value"])
        .collect();
    w.write_record(&header).map_err(csv_err)?;
    for r in reports {
        let cells = r.config().csv_cells();
        for (metric, value) in r.metrics() {
            let row = cells.iter().cloned().chain([metric, value]);
            w.write_record(row).map_err(csv_err)?;
        }
    }
    w.flush().map_err(io_err)
}

pub fn write_reports<W: Write>(out: &mut W, reports: &[Report], format: Format) -> Result<()> {
    match format {
        Format::Json => write_json_lines(out, reports),
        Format::Csv => write_csv(out, reports),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Config(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv write failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{run_experiment, DegreeSpec, ExperimentConfig, Mode, SizeSpec};

    fn sample() -> Report {
        let cfg = ExperimentConfig::new(Mode::Rank, 4, DegreeSpec::R(1), Some(SizeSpec::K(3)))
            .with_trials(20);
        Report::Experiment(run_experiment(&cfg).unwrap().summary)
    }

    #[test]
    fn json_line_round_trips() {
        let mut buf = Vec::new();
        write_json_lines(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1);
        let v: Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(v["config"]["mode"], "rank");
        assert_eq!(v["trials"], 20);
        assert!(v["wilson95"].is_array());
    }

    #[test]
    fn csv_is_long_form() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()]).unwrap();
        let mut rd = csv::Reader::from_reader(buf.as_slice());
        assert_eq!(rd.headers().unwrap().len(), 12);
        let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
        assert!(rows.iter().any(|r| &r[10] == "wilson95.1"));
        assert!(rows.iter().all(|r| &r[0] == "rank" && &r[1] == "4"));
    }
}
