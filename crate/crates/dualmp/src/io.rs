//! JSON (de)serialization for dual matrices.
//!
//! The on-disk format is a small JSON object:
//!
//! ```json
//! {"rows":1,"cols":2,"standard":[[[1.0,0.0],[0.0,0.0]]],"dual":[[[0.0,0.0],[1.0,0.0]]]}
//! ```
//!
//! `standard` and `dual` are `rows x cols` arrays of `[re, im]` pairs.
//! Serialization uses shortest round-trip decimal printing, so
//! `parse(emit(m)) == m` bit-for-bit for every finite matrix, and emitting
//! the same matrix twice produces byte-identical text. Parsing validates the
//! declared dimensions against the arrays and reports the exact offending
//! index on failure.

use crate::error::{Error, Result};
use crate::matrix::DualMatrix;
use crate::scalar::DualComplex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

/// Serde mirror of the file format. Field order is the wire order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DualMatrixFile {
    pub rows: usize,
    pub cols: usize,
    /// `rows x cols` array of `[re, im]` pairs for the standard part.
    pub standard: Vec<Vec<[f64; 2]>>,
    /// `rows x cols` array of `[re, im]` pairs for the dual part.
    pub dual: Vec<Vec<[f64; 2]>>,
}

impl DualMatrixFile {
    /// Snapshot of an in-memory matrix.
    pub fn from_matrix(m: &DualMatrix) -> Self {
        let (rows, cols) = m.shape();
        let grid = |part: &crate::kernel::ComplexMatrix| {
            (0..rows)
                .map(|i| (0..cols).map(|j| [part[(i, j)].re, part[(i, j)].im]).collect())
                .collect()
        };
        DualMatrixFile {
            rows,
            cols,
            standard: grid(m.standard()),
            dual: grid(m.dual()),
        }
    }

    /// Validates dimensions and builds the matrix.
    ///
    /// # Errors
    ///
    /// `Error::Dimension` naming the first row whose length disagrees with
    /// the declared shape.
    pub fn into_matrix(self) -> Result<DualMatrix> {
        let check = |name: &str, grid: &[Vec<[f64; 2]>]| -> Result<()> {
            if grid.len() != self.rows {
                return Err(Error::Dimension(format!(
                    "`{name}` has {} rows, header declares {}",
                    grid.len(),
                    self.rows
                )));
            }
            for (i, row) in grid.iter().enumerate() {
                if row.len() != self.cols {
                    return Err(Error::Dimension(format!(
                        "`{name}` row {i} has {} entries, header declares {} columns",
                        row.len(),
                        self.cols
                    )));
                }
            }
            Ok(())
        };
        check("standard", &self.standard)?;
        check("dual", &self.dual)?;
        let mut m = DualMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = self.standard[i][j];
                let d = self.dual[i][j];
                m.set(
                    i,
                    j,
                    DualComplex::new(Complex64::new(s[0], s[1]), Complex64::new(d[0], d[1])),
                );
            }
        }
        Ok(m)
    }
}

/// Reads one `[re, im]` pair, naming the exact index on failure.
fn entry(value: &Value, part: &str, i: usize, j: usize) -> Result<Complex64> {
    let err = |what: &str| {
        Error::Parse(format!("`{part}[{i}][{j}]` {what}, expected a [re, im] number pair"))
    };
    let pair = value.as_array().ok_or_else(|| err("is not an array"))?;
    if pair.len() != 2 {
        return Err(err(&format!("has {} elements", pair.len())));
    }
    let re = pair[0].as_f64().ok_or_else(|| err("has a non-numeric real part"))?;
    let im = pair[1].as_f64().ok_or_else(|| err("has a non-numeric imaginary part"))?;
    Ok(Complex64::new(re, im))
}

fn component(root: &Value, part: &str, rows: usize, cols: usize) -> Result<Vec<Vec<[f64; 2]>>> {
    let grid = root
        .get(part)
        .ok_or_else(|| Error::Parse(format!("missing field `{part}`")))?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("`{part}` is not an array of rows")))?;
    if grid.len() != rows {
        return Err(Error::Dimension(format!(
            "`{part}` has {} rows, header declares {rows}",
            grid.len()
        )));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row_value) in grid.iter().enumerate() {
        let row = row_value
            .as_array()
            .ok_or_else(|| Error::Parse(format!("`{part}[{i}]` is not an array")))?;
        if row.len() != cols {
            return Err(Error::Dimension(format!(
                "`{part}` row {i} has {} entries, header declares {cols} columns",
                row.len()
            )));
        }
        let mut cells = Vec::with_capacity(cols);
        for (j, cell) in row.iter().enumerate() {
            let z = entry(cell, part, i, j)?;
            cells.push([z.re, z.im]);
        }
        out.push(cells);
    }
    Ok(out)
}

fn header_field(root: &Value, name: &str) -> Result<usize> {
    root.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field `{name}`")))?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("`{name}` is not a non-negative integer")))
        .map(|v| v as usize)
}

/// Parses a dual matrix from JSON text.
///
/// # Errors
///
/// `Error::Parse` with the offending field/index named, or
/// `Error::Dimension` when the arrays disagree with the declared shape.
pub fn parse_str(text: &str) -> Result<DualMatrix> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if !root.is_object() {
        return Err(Error::Parse("top-level JSON value is not an object".into()));
    }
    let rows = header_field(&root, "rows")?;
    let cols = header_field(&root, "cols")?;
    let file = DualMatrixFile {
        rows,
        cols,
        standard: component(&root, "standard", rows, cols)?,
        dual: component(&root, "dual", rows, cols)?,
    };
    file.into_matrix()
}

/// Parses a dual matrix from a JSON file on disk.
///
/// # Errors
///
/// `Error::Parse` for unreadable files (with the path named) and everything
/// [`parse_str`] reports.
pub fn parse_path(path: &Path) -> Result<DualMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        Error::Dimension(msg) => Error::Dimension(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Serializes a matrix as compact JSON with shortest round-trip decimals.
///
/// # Errors
///
/// `Error::NotRepresentable` for NaN or infinite entries (JSON has no
/// encoding for them).
pub fn emit(m: &DualMatrix) -> Result<String> {
    let (rows, cols) = m.shape();
    for i in 0..rows {
        for j in 0..cols {
            for (part, grid) in [("standard", m.standard()), ("dual", m.dual())] {
                let z = grid[(i, j)];
                for (axis, v) in [("re", z.re), ("im", z.im)] {
                    if !v.is_finite() {
                        return Err(Error::NotRepresentable {
                            value: v,
                            location: format!("{part}[{i}][{j}].{axis}"),
                        });
                    }
                }
            }
        }
    }
    serde_json::to_string(&DualMatrixFile::from_matrix(m))
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_dual;

    const GOLDEN: &str = concat!(
        r#"{"rows":1,"cols":2,"standard":[[[1,0],[0,0]]],"#,
        r#""dual":[[[0,0],[1,0]]]}"#
    );

    #[test]
    fn golden_file_parses_to_the_worked_row() {
        let m = parse_str(GOLDEN).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(m.standard()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m.standard()[(0, 1)], Complex64::new(0.0, 0.0));
        assert_eq!(m.dual()[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(m.dual()[(0, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn emit_then_parse_is_bit_for_bit_stable() {
        for seed in 0..10u64 {
            let m = random_dual(3, 4, 2, 900 + seed).unwrap();
            let text = emit(&m).unwrap();
            let back = parse_str(&text).unwrap();
            assert_eq!(back, m, "value round trip at seed {seed}");
            assert_eq!(emit(&back).unwrap(), text, "byte round trip at seed {seed}");
        }
        // Values that stress decimal printing.
        let awkward = DualMatrix::from_real_parts(
            &[&[0.1, 1e-300], &[-2.5e17, f64::MIN_POSITIVE]],
            &[&[std::f64::consts::PI, -0.0], &[1e300, 3.0e-8]],
        )
        .unwrap();
        let text = emit(&awkward).unwrap();
        assert_eq!(parse_str(&text).unwrap(), awkward);
        assert_eq!(emit(&parse_str(&text).unwrap()).unwrap(), text);
    }

    #[test]
    fn malformed_entry_names_the_offending_index() {
        let bad = r#"{"rows":1,"cols":2,"standard":[[[1,0],[1]]],"dual":[[[0,0],[0,0]]]}"#;
        let err = parse_str(bad).unwrap_err();
        let Error::Parse(msg) = &err else {
            panic!("expected a parse error, got {err:?}");
        };
        assert!(msg.contains("standard[0][1]"), "diagnostic was: {msg}");

        let non_numeric =
            r#"{"rows":1,"cols":1,"standard":[[[1,"x"]]],"dual":[[[0,0]]]}"#;
        let err = parse_str(non_numeric).unwrap_err();
        let Error::Parse(msg) = &err else {
            panic!("expected a parse error, got {err:?}");
        };
        assert!(msg.contains("standard[0][0]"), "diagnostic was: {msg}");
    }

    #[test]
    fn dimension_mismatches_are_reported_by_row() {
        let bad = r#"{"rows":2,"cols":2,"standard":[[[1,0],[0,0]]],"dual":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#;
        let err = parse_str(bad).unwrap_err();
        let Error::Dimension(msg) = &err else {
            panic!("expected a dimension error, got {err:?}");
        };
        assert!(msg.contains("standard"), "diagnostic was: {msg}");

        let ragged = r#"{"rows":1,"cols":2,"standard":[[[1,0]]],"dual":[[[0,0],[0,0]]]}"#;
        let err = parse_str(ragged).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)), "got {err:?}");
    }

    #[test]
    fn non_finite_values_cannot_be_emitted() {
        let mut m = DualMatrix::zeros(1, 1);
        m.set(
            0,
            0,
            DualComplex::new(Complex64::new(f64::INFINITY, 0.0), Complex64::new(0.0, 0.0)),
        );
        let err = emit(&m).unwrap_err();
        assert!(matches!(err, Error::NotRepresentable { .. }), "got {err:?}");
    }

    #[test]
    fn parse_path_reports_the_file_name() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("dualmp-io-test-{}.json", std::process::id()));
        std::fs::write(&path, GOLDEN).unwrap();
        let m = parse_path(&path).unwrap();
        assert_eq!(m.shape(), (1, 2));
        std::fs::remove_file(&path).ok();

        let missing = dir.join("dualmp-io-test-definitely-missing.json");
        let err = parse_path(&missing).unwrap_err();
        let Error::Parse(msg) = &err else {
            panic!("expected a parse error, got {err:?}");
        };
        assert!(msg.contains("dualmp-io-test-definitely-missing"), "diagnostic was: {msg}");
    }
}
