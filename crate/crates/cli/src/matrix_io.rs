//! Dense matrix file format: first line `m,d`, then m lines of d
//! comma-separated reals.

use std::path::Path;

use adjmm::operator::DenseMatrix;

use crate::runs::Failure;

pub fn read_matrix(path: &Path) -> Result<DenseMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|msg| Failure::config(format!("{}: {msg}", path.display())))
}

fn parse_matrix(text: &str) -> Result<DenseMatrix, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or("empty matrix file")?;
    let (m, d) = header
        .split_once(',')
        .ok_or("first line must be `m,d`")?;
    let rows: usize = m.trim().parse().map_err(|_| "bad row count")?;
    let cols: usize = d.trim().parse().map_err(|_| "bad column count")?;

    let mut entries = Vec::with_capacity(rows * cols);
    for (i, line) in lines.enumerate() {
        if i >= rows {
            return Err(format!("more than {rows} data rows"));
        }
        let mut width = 0;
        for field in line.split(',') {
            let value: f64 = field
                .trim()
                .parse()
                .map_err(|_| format!("row {}: bad number `{}`", i + 1, field.trim()))?;
            entries.push(value);
            width += 1;
        }
        if width != cols {
            return Err(format!("row {} has {width} values, expected {cols}", i + 1));
        }
    }
    DenseMatrix::new(rows, cols, entries).map_err(|e| e.to_string())
}
