//! CSV dataset format: header `label,f0,...,f{d-1}`, one row per point.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

use super::EmbeddedDataset;

/// Load a dataset from CSV. Distinct label strings are mapped to contiguous
/// class indices in lexicographic order.
pub fn load_csv(path: &Path) -> Result<EmbeddedDataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file);

    let header = reader.headers().map_err(|e| csv_error(e, 1))?.clone();
    if header.is_empty() || header.get(0) != Some("label") {
        return Err(Error::MalformedCsv {
            line: 1,
            reason: "header must start with a `label` column".into(),
        });
    }
    let dim = header.len() - 1;
    if dim == 0 {
        return Err(Error::MalformedCsv {
            line: 1,
            reason: "header declares no feature columns".into(),
        });
    }

    let mut raw_labels: Vec<String> = Vec::new();
    let mut coords: Vec<f64> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, csv::Position::line);
            csv_error(e, line)
        })?;
        let line = record.position().map_or(0, csv::Position::line);
        if record.len() != dim + 1 {
            return Err(Error::MalformedCsv {
                line,
                reason: format!("expected {} fields, found {}", dim + 1, record.len()),
            });
        }
        raw_labels.push(record[0].to_string());
        for field in record.iter().skip(1) {
            let value: f64 = field.trim().parse().map_err(|_| Error::MalformedCsv {
                line,
                reason: format!("not a number: {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::NonFiniteCsv { line });
            }
            coords.push(value);
        }
    }
    if raw_labels.is_empty() {
        return Err(Error::EmptyDataset(format!(
            "{} has no data rows",
            path.display()
        )));
    }

    let mut class_names: Vec<String> = raw_labels.clone();
    class_names.sort();
    class_names.dedup();
    if class_names.len() < 2 {
        return Err(Error::TooFewClasses {
            found: class_names.len(),
        });
    }
    let labels: Vec<usize> = raw_labels
        .iter()
        .map(|name| {
            class_names
                .binary_search(name)
                .expect("name from the same list")
        })
        .collect();

    let n = labels.len();
    let points = Array2::from_shape_vec((n, dim), coords)
        .map_err(|e| Error::ShapeMismatch(e.to_string()))?;
    EmbeddedDataset::new(points, labels, class_names)
}

/// Write a dataset as CSV. `f64` values print in shortest round-trip form,
/// so `load_csv(save_csv(ds)) == ds`.
pub fn save_csv(ds: &EmbeddedDataset, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let write = |w: &mut BufWriter<File>, s: String| -> Result<()> {
        w.write_all(s.as_bytes()).map_err(|e| Error::io(path, e))
    };

    let mut header = String::from("label");
    for j in 0..ds.dim() {
        header.push_str(&format!(",f{j}"));
    }
    header.push('\n');
    write(&mut w, header)?;

    for row in 0..ds.n_points() {
        let mut line = ds.class_name(ds.labels()[row]).to_string();
        for &v in ds.point(row) {
            line.push_str(&format!(",{v}"));
        }
        line.push('\n');
        write(&mut w, line)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_error(e: csv::Error, line: u64) -> Error {
    Error::MalformedCsv {
        line,
        reason: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::TempDir;

    fn write_file(dir: &TempDir, name: &str, contents: &str) -> std::path::PathBuf {
        let path = dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn parses_two_class_file() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0\na,0.5\na,1.5\nb,2.0\nb,3.0\n");
        let ds = load_csv(&path).unwrap();
        assert_eq!(ds.n_points(), 4);
        assert_eq!(ds.dim(), 1);
        assert_eq!(ds.n_classes(), 2);
        assert_eq!(ds.class_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(ds.labels(), &[0, 0, 1, 1]);
    }

    #[test]
    fn nan_row_reports_line_number() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0\na,0.5\nb,NaN\n");
        match load_csv(&path).unwrap_err() {
            Error::NonFiniteCsv { line } => assert_eq!(line, 3),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn malformed_row_reports_line_number() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0,f1\na,0.5,1.0\nb,oops,1.0\n");
        match load_csv(&path).unwrap_err() {
            Error::MalformedCsv { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn numeric_label_strings_sort_lexicographically() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0\n9,0.0\n10,1.0\n");
        let ds = load_csv(&path).unwrap();
        assert_eq!(ds.class_names(), &["10".to_string(), "9".to_string()]);
    }

    #[test]
    fn single_class_file_is_rejected() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0\na,0.0\na,1.0\n");
        assert!(matches!(
            load_csv(&path).unwrap_err(),
            Error::TooFewClasses { found: 1 }
        ));
    }

    #[test]
    fn empty_file_is_rejected() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "ds.csv", "label,f0\n");
        assert!(matches!(
            load_csv(&path).unwrap_err(),
            Error::EmptyDataset(_)
        ));
    }

    #[test]
    fn round_trip_is_lossless() {
        let dir = TempDir::new().unwrap();
        let path = write_file(
            &dir,
            "ds.csv",
            "label,f0,f1\na,0.1,-2.25\na,1e-300,3.0000000000000004\nb,7.5,0\n b2,1,2\n",
        );
        let ds = load_csv(&path).unwrap();
        let out = dir.path().join("out.csv");
        save_csv(&ds, &out).unwrap();
        let reloaded = load_csv(&out).unwrap();
        assert_eq!(ds, reloaded);
    }
}
