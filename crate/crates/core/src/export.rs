//! Record files: sporadic cases one per line, series one per line.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pipeline::{ClassificationRecord, Provenance, SeriesEntry};
use crate::series::SeriesSolution;
use crate::singularity::Verdict;
use crate::weights::WeightSystem;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }

    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => Format::Text,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// `d a_1 ... a_s wf qs verdict`.
pub fn record_line(r: &ClassificationRecord) -> String {
    format!(
        "{} {} {} {}",
        r.ws.machine_line(),
        flag(r.wellformed),
        flag(r.quasismooth),
        r.verdict().code()
    )
}

const CSV_HEADER: &str = "degree,weights,wf,qs,verdict";

pub fn export_records(records: &[ClassificationRecord], format: Format) -> String {
    match format {
        Format::Text => records.iter().map(|r| record_line(r) + "\n").collect(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("records serialise");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                let w: Vec<String> = r.ws.weights().iter().map(u64::to_string).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.ws.degree(),
                    w.join(" "),
                    flag(r.wellformed),
                    flag(r.quasismooth),
                    r.verdict().code()
                );
            }
            out
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_flag(s: &str, line: usize) -> Result<bool, Error> {
    match s {
        "1" => Ok(true),
        "0" => Ok(false),
        _ => Err(parse_err(line, format!("bad flag {s:?}"))),
    }
}

/// Rebuilds a sporadic record and checks the stored flags against it.
fn rebuild(ws: WeightSystem, wf: bool, qs: bool, verdict: &str, line: usize) -> Result<ClassificationRecord, Error> {
    let v = Verdict::from_code(verdict).ok_or_else(|| parse_err(line, format!("bad verdict {verdict:?}")))?;
    let r = ClassificationRecord::new(ws, Provenance::Sporadic);
    if r.wellformed != wf || r.quasismooth != qs || r.verdict() != v {
        return Err(parse_err(line, format!("flags do not match {}", r.ws)));
    }
    Ok(r)
}

pub fn import_records(text: &str, format: Format) -> Result<Vec<ClassificationRecord>, Error> {
    match format {
        Format::Json => serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string())),
        Format::Text => {
            let mut out = Vec::new();
            for (i, raw) in text.lines().enumerate() {
                let line = i + 1;
                let fields: Vec<&str> = raw.split_whitespace().collect();
                if fields.is_empty() {
                    continue;
                }
                if fields.len() < 6 {
                    return Err(parse_err(line, "expected d, weights, wf, qs, verdict"));
                }
                let n = fields.len();
                let ws = WeightSystem::parse_machine_line(&fields[..n - 3].join(" ")).map_err(|e| match e {
                    Error::Parse { message, .. } => parse_err(line, message),
                    other => parse_err(line, other.to_string()),
                })?;
                let wf = parse_flag(fields[n - 3], line)?;
                let qs = parse_flag(fields[n - 2], line)?;
                out.push(rebuild(ws, wf, qs, fields[n - 1], line)?);
            }
            Ok(out)
        }
        Format::Csv => {
            let mut out = Vec::new();
            for (i, raw) in text.lines().enumerate() {
                let line = i + 1;
                if raw.trim().is_empty() || (i == 0 && raw.trim() == CSV_HEADER) {
                    continue;
                }
                let fields: Vec<&str> = raw.split(',').collect();
                if fields.len() != 5 {
                    return Err(parse_err(line, "expected five columns"));
                }
                let d: u64 = fields[0].trim().parse().map_err(|_| parse_err(line, "bad degree"))?;
                let w: Result<Vec<u64>, _> = fields[1].split_whitespace().map(str::parse).collect();
                let w = w.map_err(|_| parse_err(line, "bad weights"))?;
                let ws = WeightSystem::new(w, d).map_err(|e| parse_err(line, e.to_string()))?;
                let wf = parse_flag(fields[2].trim(), line)?;
                let qs = parse_flag(fields[3].trim(), line)?;
                out.push(rebuild(ws, wf, qs, fields[4].trim(), line)?);
            }
            Ok(out)
        }
    }
}

pub fn export_series(series: &[SeriesEntry], format: Format) -> String {
    match format {
        Format::Text => series.iter().map(|s| s.solution.text_line() + "\n").collect(),
        Format::Json => {
            let sols: Vec<&SeriesSolution> = series.iter().map(|s| &s.solution).collect();
            let mut s = serde_json::to_string_pretty(&sols).expect("series serialise");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("base,generators,pattern,status\n");
            for s in series {
                let sol = &s.solution;
                let j = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>().join(" ");
                let g: Vec<String> = sol.generators.iter().map(|g| j(g)).collect();
                let _ = writeln!(out, "{},{},{},{}", j(&sol.base), g.join(";"), sol.pattern, sol.status);
            }
            out
        }
    }
}

/// Series in text or JSON form.
pub fn import_series(text: &str, format: Format) -> Result<Vec<SeriesSolution>, Error> {
    match format {
        Format::Json => serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string())),
        Format::Text => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| SeriesSolution::parse_text_line(l).ok_or_else(|| parse_err(i + 1, "bad series line")))
            .collect(),
        Format::Csv => Err(parse_err(0, "series import reads text or json")),
    }
}

pub fn read_records(path: &Path) -> Result<Vec<ClassificationRecord>, Error> {
    let text = std::fs::read_to_string(path)?;
    import_records(&text, Format::from_path(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_line() {
        let r = ClassificationRecord::new(WeightSystem::new(vec![1; 6], 5).unwrap(), Provenance::Sporadic);
        assert_eq!(record_line(&r), "5 1 1 1 1 1 1 1 1 SM");
        assert!(r.ws.machine_line() == "5 1 1 1 1 1 1");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "5 1 1 1 1 1 1 1 1 SM\n6 2 x 1 1 1 1 1 SM\n";
        match import_records(text, Format::Text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
