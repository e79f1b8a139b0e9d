//! JSON and CSV file formats. Rationals are written as `"p/q"` strings so
//! files re-parse to bit-identical values.

use std::fmt::Display;
use std::fs;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use weylpath_core::scalar::parse_rational;
use weylpath_core::{Path, Rational, Scalar};

use crate::error::CliError;

/// Scalars with a lossless text form.
pub trait TextScalar: Scalar + Display {
    fn parse_text(s: &str) -> Option<Self>;
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl TextScalar for Rational {
    fn parse_text(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl TextScalar for f64 {
    fn parse_text(s: &str) -> Option<Self> {
        s.trim().parse().ok().filter(|x: &f64| x.is_finite())
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }
}

/// A path as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    #[serde(rename = "type")]
    pub type_label: String,
    pub times: Vec<String>,
    pub values: Vec<Vec<String>>,
}

impl PathDoc {
    pub fn from_path<S: TextScalar>(type_label: &str, p: &Path<S>) -> Self {
        PathDoc {
            type_label: type_label.to_string(),
            times: p.times().iter().map(TextScalar::to_text).collect(),
            values: p.values().iter().map(|v| v.iter().map(TextScalar::to_text).collect()).collect(),
        }
    }

    pub fn to_path<S: TextScalar>(&self) -> Result<Path<S>, CliError> {
        let parse = |s: &String| S::parse_text(s).ok_or_else(|| CliError::Malformed(format!("bad number '{s}'")));
        let times = self.times.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
        let values = self
            .values
            .iter()
            .map(|v| v.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(times, values).map_err(|e| CliError::Malformed(e.to_string()))
    }
}

pub fn read_path_doc(file: &FsPath) -> Result<PathDoc, CliError> {
    let text = fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", file.display())))
}

pub fn write_json<T: Serialize>(file: &FsPath, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(file, text).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))
}

pub fn vector_text<S: TextScalar>(v: &[S]) -> Vec<String> {
    v.iter().map(TextScalar::to_text).collect()
}

/// One row of the simulation CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinRow {
    pub bin_center_1: f64,
    pub bin_center_2: Option<f64>,
    pub observed: u64,
    pub expected: f64,
}

pub const CSV_HEADER: &str = "bin_center_1,bin_center_2,observed,expected";

pub fn bins_to_csv(rows: &[BinRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let c2 = r.bin_center_2.map(|x| format!("{x:?}")).unwrap_or_default();
        out.push_str(&format!("{:?},{},{},{:?}\n", r.bin_center_1, c2, r.observed, r.expected));
    }
    out
}

pub fn csv_to_bins(text: &str) -> Result<Vec<BinRow>, CliError> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(CliError::Malformed("missing CSV header".into()));
    }
    let bad = |l: &str| CliError::Malformed(format!("bad CSV row '{l}'"));
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 4 {
                return Err(bad(l));
            }
            Ok(BinRow {
                bin_center_1: f[0].parse().map_err(|_| bad(l))?,
                bin_center_2: if f[1].is_empty() { None } else { Some(f[1].parse().map_err(|_| bad(l))?) },
                observed: f[2].parse().map_err(|_| bad(l))?,
                expected: f[3].parse().map_err(|_| bad(l))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_documents_roundtrip() {
        let q = Rational::from_ratio;
        let p = Path::new(vec![q(0, 1), q(1, 3), q(1, 1)], vec![vec![q(0, 1), q(0, 1)], vec![q(-2, 7), q(5, 1)], vec![q(1, 2), q(0, 1)]]).unwrap();
        let doc = PathDoc::from_path("A2", &p);
        let text = serde_json::to_string(&doc).unwrap();
        let back: PathDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_path::<Rational>().unwrap(), p);
        assert_eq!(doc.values[1], vec!["-2/7".to_string(), "5".to_string()]);
    }

    #[test]
    fn float_paths_roundtrip_bit_exactly() {
        let p = Path::new(vec![0.0, 0.1, 1.0], vec![vec![0.0], vec![1.0 / 3.0], vec![-2.5e-17]]).unwrap();
        let doc = PathDoc::from_path("I2(5)", &p);
        assert_eq!(doc.to_path::<f64>().unwrap(), p);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let doc = PathDoc { type_label: "A1".into(), times: vec!["0".into(), "x".into()], values: vec![vec!["0".into()], vec!["1".into()]] };
        assert!(matches!(doc.to_path::<Rational>(), Err(CliError::Malformed(_))));
        let doc = PathDoc { type_label: "A1".into(), times: vec!["0".into(), "0".into()], values: vec![vec!["0".into()], vec!["1".into()]] };
        assert!(matches!(doc.to_path::<Rational>(), Err(CliError::Malformed(_))));
    }

    #[test]
    fn csv_roundtrip() {
        let rows = vec![
            BinRow { bin_center_1: 0.25, bin_center_2: Some(1.5), observed: 10, expected: 9.5 },
            BinRow { bin_center_1: 1.0 / 3.0, bin_center_2: None, observed: 0, expected: 400.0 },
        ];
        assert_eq!(csv_to_bins(&bins_to_csv(&rows)).unwrap(), rows);
    }
}
