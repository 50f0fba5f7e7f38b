//! Report tables and their CSV / JSON renderings.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i128),
    Text(String),
    Bool(bool),
    /// Written as `p/q` plus a `<column>_float` companion.
    Rational(u128, u128),
}

impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Value::Int(v as i128)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v.into())
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i128)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<Ratio<u128>> for Value {
    fn from(v: Ratio<u128>) -> Self {
        Value::Rational(*v.numer(), *v.denom())
    }
}

impl From<Ratio<u64>> for Value {
    fn from(v: Ratio<u64>) -> Self {
        Value::Rational((*v.numer()).into(), (*v.denom()).into())
    }
}

fn float_text(p: u128, q: u128) -> String {
    format!("{:.6}", p as f64 / q as f64)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Text(s) => f.write_str(s),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Rational(p, q) => write!(f, "{p}/{q}"),
        }
    }
}

/// Output format for reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

/// The outcome of one experiment: its id, parameters and seed, then a table
/// of results. Runtime is only recorded when asked for, so default output
/// is reproducible byte for byte.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRecord {
    pub experiment: String,
    pub parameters: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub runtime_ms: Option<u128>,
}

impl CensusRecord {
    pub fn new(experiment: &str, columns: &[&str]) -> Self {
        CensusRecord {
            experiment: experiment.to_string(),
            parameters: Vec::new(),
            seed: None,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn header(&self) -> Vec<String> {
        let mut header = Vec::new();
        for (i, name) in self.columns.iter().enumerate() {
            header.push(name.clone());
            if self
                .rows
                .iter()
                .any(|r| matches!(r[i], Value::Rational(..)))
            {
                header.push(format!("{name}_float"));
            }
        }
        if self.runtime_ms.is_some() {
            header.push("runtime_ms".into());
        }
        header
    }

    pub fn to_csv(&self) -> String {
        let rational: Vec<bool> = (0..self.columns.len())
            .map(|i| {
                self.rows
                    .iter()
                    .any(|r| matches!(r[i], Value::Rational(..)))
            })
            .collect();
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(self.header()).expect("in-memory write");
        for row in &self.rows {
            let mut fields = Vec::new();
            for (i, value) in row.iter().enumerate() {
                fields.push(value.to_string());
                if rational[i] {
                    fields.push(match value {
                        Value::Rational(p, q) => float_text(*p, *q),
                        _ => String::new(),
                    });
                }
            }
            if let Some(ms) = self.runtime_ms {
                fields.push(ms.to_string());
            }
            writer.write_record(fields).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8 fields")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, value) in self.columns.iter().zip(row) {
                    match value {
                        Value::Int(v) => {
                            obj.insert(name.clone(), json!(v));
                        }
                        Value::Text(s) => {
                            obj.insert(name.clone(), json!(s));
                        }
                        Value::Bool(b) => {
                            obj.insert(name.clone(), json!(b));
                        }
                        Value::Rational(p, q) => {
                            obj.insert(name.clone(), json!(format!("{p}/{q}")));
                            obj.insert(format!("{name}_float"), json!(*p as f64 / *q as f64));
                        }
                    }
                }
                Json::Object(obj)
            })
            .collect();
        let parameters: Map<String, Json> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let mut doc = Map::new();
        doc.insert("experiment".into(), json!(self.experiment));
        doc.insert("parameters".into(), Json::Object(parameters));
        doc.insert("seed".into(), json!(self.seed));
        doc.insert("rows".into(), Json::Array(rows));
        if let Some(ms) = self.runtime_ms {
            doc.insert("runtime_ms".into(), json!(ms as u64));
        }
        let mut text = serde_json::to_string_pretty(&Json::Object(doc)).expect("json");
        text.push('\n');
        text
    }
}

/// Reads the rows of a CSV report back as strings, header first.
pub fn parse_csv(text: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    reader
        .records()
        .enumerate()
        .map(|(i, rec)| {
            rec.map(|r| r.iter().map(str::to_string).collect())
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CensusRecord {
        let mut rec =
            CensusRecord::new("demo", &["n", "fraction", "exact"]).param("target", "u:2:4");
        rec.seed = Some(7);
        rec.push(vec![
            5usize.into(),
            Ratio::new(1u128, 3).into(),
            true.into(),
        ]);
        rec.push(vec![
            6usize.into(),
            Ratio::new(2u128, 4).into(),
            false.into(),
        ]);
        rec
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "n,fraction,fraction_float,exact\n5,1/3,0.333333,true\n6,1/2,0.500000,false\n"
        );
        let parsed = parse_csv(&sample().to_csv()).unwrap();
        assert_eq!(parsed[1], vec!["5", "1/3", "0.333333", "true"]);
    }

    #[test]
    fn json_layout() {
        let doc: Json = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(doc["experiment"], "demo");
        assert_eq!(doc["seed"], 7);
        assert_eq!(doc["parameters"]["target"], "u:2:4");
        assert_eq!(doc["rows"][0]["fraction"], "1/3");
        assert_eq!(doc["rows"][1]["exact"], false);
    }

    #[test]
    fn runtime_only_when_set() {
        let mut rec = sample();
        assert!(!rec.to_csv().contains("runtime"));
        rec.runtime_ms = Some(12);
        assert!(rec
            .to_csv()
            .starts_with("n,fraction,fraction_float,exact,runtime_ms\n"));
    }
}
