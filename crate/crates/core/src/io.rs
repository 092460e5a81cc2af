//! JSON Lines curve files: one `{"id": ..., "points": [[...], ...]}` per line.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::range::Dataset;

/// One line of a curve file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    pub id: String,
    pub points: Vec<Vec<f64>>,
}

impl From<&Curve> for CurveRecord {
    fn from(c: &Curve) -> Self {
        Self { id: c.id().to_string(), points: c.vertices().iter().map(|p| p.coords().to_vec()).collect() }
    }
}

impl CurveRecord {
    pub fn to_curve(&self) -> Result<Curve> {
        if self.points.is_empty() {
            return Err(Error::Empty("curve points"));
        }
        Curve::from_coords(self.id.clone(), &self.points)
    }
}

/// Parses a curve file. Blank lines are skipped; errors carry the 1-based
/// line number.
pub fn read_dataset(reader: impl BufRead) -> Result<Dataset> {
    let mut curves: Vec<Curve> = Vec::new();
    let mut ids = HashSet::new();
    let mut dim = None;
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let at = |msg: String| Error::Parse { line: line_no, msg };
        let line = line.map_err(|e| at(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CurveRecord = serde_json::from_str(&line).map_err(|e| at(e.to_string()))?;
        let curve = rec.to_curve().map_err(|e| at(format!("curve {:?}: {e}", rec.id)))?;
        match dim {
            None => dim = Some(curve.dim()),
            Some(d) if d != curve.dim() => {
                return Err(at(format!("curve {:?}: dimension {} differs from {d} of earlier curves", rec.id, curve.dim())));
            }
            _ => {}
        }
        if !ids.insert(rec.id.clone()) {
            return Err(at(format!("duplicate curve id {:?}", rec.id)));
        }
        curves.push(curve);
    }
    if curves.is_empty() {
        return Err(Error::Empty("curve file"));
    }
    Dataset::new(curves)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_dataset(BufReader::new(file)).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse { line, msg: format!("{}: {msg}", path.display()) },
        other => other,
    })
}

/// Canonical form: one compact record per line, shortest round-trip
/// decimals, trailing newline.
pub fn to_jsonl(ds: &Dataset) -> String {
    let mut out = String::new();
    for c in ds.curves() {
        out.push_str(&serde_json::to_string(&CurveRecord::from(c)).expect("finite coordinates serialize"));
        out.push('\n');
    }
    out
}

pub fn write_dataset(ds: &Dataset, mut w: impl Write) -> Result<()> {
    w.write_all(to_jsonl(ds).as_bytes()).map_err(|e| Error::Io(e.to_string()))
}
