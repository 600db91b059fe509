//! JSON and CSV report output. Floats are written with 17 significant
//! digits and object keys are sorted, so equal inputs give equal bytes.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::error::AnalysisError;

struct Pretty17<'a>(PrettyFormatter<'a>);

impl Formatter for Pretty17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with sorted keys and 17-significant-digit floats.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String, AnalysisError> {
    // through Value so that struct fields come out sorted as well
    let value = serde_json::to_value(value).map_err(|e| AnalysisError::InvalidParameter(e.to_string()))?;
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Pretty17(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| AnalysisError::InvalidParameter(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// One experiment run: config echo, results, named verdicts.
#[derive(Clone, Debug, serde::Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: Value,
    pub results: Value,
    pub verdicts: BTreeMap<String, bool>,
    /// Only filled on request; reports are otherwise reproducible byte for
    /// byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

impl ExperimentReport {
    pub fn new<C: Serialize, R: Serialize>(experiment: &str, config: &C, results: &R) -> Result<Self, AnalysisError> {
        let to = |v: serde_json::Result<Value>| v.map_err(|e| AnalysisError::InvalidParameter(e.to_string()));
        Ok(ExperimentReport {
            experiment: experiment.to_string(),
            config: to(serde_json::to_value(config))?,
            results: to(serde_json::to_value(results))?,
            verdicts: BTreeMap::new(),
            wall_clock_seconds: None,
        })
    }

    pub fn with_verdict(mut self, name: &str, pass: bool) -> Self {
        self.verdicts.insert(name.to_string(), pass);
        self
    }

    /// True when every verdict passed.
    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn to_json(&self) -> Result<String, AnalysisError> {
        to_json_17(self)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), AnalysisError> {
        std::fs::write(path, self.to_json()?).map_err(|e| AnalysisError::Checkpoint(format!("{}: {e}", path.display())))
    }
}

/// Writes a header and rows as CSV.
pub fn write_csv<W: Write>(w: W, header: &[&str], rows: &[Vec<String>]) -> Result<(), csv::Error> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(header)?;
    for r in rows {
        wtr.write_record(r)?;
    }
    wtr.flush()?;
    Ok(())
}
