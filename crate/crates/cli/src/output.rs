//! Tabular documents and their JSON and CSV renderings.
//!
//! Floats are written with 17 significant digits so they round-trip.
//! Non-finite values become `null` in JSON and `NaN`/`inf` in CSV.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

pub fn format_float(v: f64) -> String {
    // fold -0 into 0
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_float(*v),
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) if v.is_finite() => {
                let raw = RawValue::from_string(format_float(*v)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Cell::Num(_) => s.serialize_none(),
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Section {
    pub fn new(name: &str, columns: &[&'static str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

struct RowObject<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for RowObject<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

struct Rows<'a>(&'a Section);

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&RowObject(&self.0.columns, row))?;
        }
        seq.end()
    }
}

/// One output: ordered metadata, a primary `rows` section and extra sections.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub meta: Vec<(&'static str, Cell)>,
    pub rows: Section,
    pub extra: Vec<Section>,
}

impl Serialize for Document {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2 + self.extra.len()))?;
        let meta: Vec<&'static str> = self.meta.iter().map(|(k, _)| *k).collect();
        let values: Vec<Cell> = self.meta.iter().map(|(_, v)| v.clone()).collect();
        map.serialize_entry("meta", &RowObject(&meta, &values))?;
        map.serialize_entry("rows", &Rows(&self.rows))?;
        for section in &self.extra {
            map.serialize_entry(&section.name, &Rows(section))?;
        }
        map.end()
    }
}

impl Document {
    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.render_csv(),
        }
    }

    /// `# key = value` comment lines, then one header-led block per section.
    fn render_csv(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            writeln!(out, "# {k} = {}", v.csv())?;
        }
        for (i, section) in std::iter::once(&self.rows).chain(&self.extra).enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            writeln!(out, "# section {}", section.name)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&section.columns)?;
            for row in &section.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            out.extend(w.into_inner().context("flushing csv")?);
        }
        Ok(out)
    }
}

/// Write to `path` through a temporary file in the same directory, so a
/// failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn emit(doc: &Document, format: Format, out: Option<&Path>) -> Result<()> {
    let bytes = doc.render(format)?;
    match out {
        Some(path) => write_atomic(path, &bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut rows = Section::new("rows", &["x", "name", "ok"]);
        rows.push(vec![0.1.into(), "a,b".into(), true.into()]);
        rows.push(vec![f64::NAN.into(), "c".into(), false.into()]);
        let mut extra = Section::new("more", &["n"]);
        extra.push(vec![3usize.into()]);
        Document {
            meta: vec![("command", "test".into()), ("tol", 1e-8.into())],
            rows,
            extra: vec![extra],
        }
    }

    #[test]
    fn json_keeps_order_and_digits() {
        let text = String::from_utf8(sample().render(Format::Json).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"][0]["x"].as_f64(), Some(0.1));
        assert!(v["rows"][1]["x"].is_null());
        assert_eq!(v["more"][0]["n"], 3);
        assert!(text.find("\"meta\"").unwrap() < text.find("\"rows\"").unwrap());
        assert!(text.contains("1.0000000000000001e-1"));
    }

    #[test]
    fn csv_sections() {
        let text = String::from_utf8(sample().render(Format::Csv).unwrap()).unwrap();
        let expected = "# command = test\n# tol = 1.0000000000000000e-8\n# section rows\nx,name,ok\n\
                        1.0000000000000001e-1,\"a,b\",true\nNaN,c,false\n\n# section more\nn\n3\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
