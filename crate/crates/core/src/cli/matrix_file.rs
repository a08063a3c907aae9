use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::linalg::SymMatrix;

/// On-disk matrix layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    /// Checks shape, finiteness and symmetry within `1e-10·(1 + max|mᵢⱼ|)`,
    /// then averages `M` and `Mᵀ`.
    pub fn to_sym(&self) -> Result<SymMatrix, CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(CliError::Validation("dim must be at least 1".into()));
        }
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(CliError::Validation(format!("rows must be a {n}x{n} array")));
        }
        if self.rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::Validation("entries must be finite".into()));
        }
        let max_abs = self.rows.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
        let tol = 1e-10 * (1.0 + max_abs);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.rows[i][j], self.rows[j][i]);
                if (a - b).abs() > tol {
                    return Err(CliError::Validation(format!(
                        "matrix is not symmetric: entry ({i},{j}) = {a} but ({j},{i}) = {b}"
                    )));
                }
                data[i * n + j] = 0.5 * (a + b);
            }
        }
        SymMatrix::from_row_major(n, data).map_err(|e| CliError::Validation(e.to_string()))
    }
}

/// Parses a matrix document from JSON text.
pub fn parse_matrix_json(text: &str) -> Result<SymMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.to_sym()
}

/// Accepts inline JSON (anything starting with `{`) or a file path.
pub fn parse_matrix_file(arg: &str) -> Result<SymMatrix, CliError> {
    if arg.trim_start().starts_with('{') {
        return parse_matrix_json(arg);
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?;
    parse_matrix_json(&text)
}
